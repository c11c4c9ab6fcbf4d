import numpy as np
import pytest

from poncelet_inversive import (
    Circle,
    ConicType,
    OLocationKind,
    PonceletFamily,
    circle_fit,
    classify_O,
    conic_fit,
    conic_residual,
    exact_locus_conic,
    external_similitude_center,
    homothety_check,
    inversive_coeffs,
    nonconic_evidence,
    p3_point,
    similitude_check,
    sweep,
    verify_conic_type,
)

from conftest import EXTERIOR_K, REF_K, random_family


class TestSweep:
    def test_shapes_and_skips(self, fam):
        sw = sweep(fam, REF_K, 128)
        assert len(sw.thetas) == 128
        assert all(len(getattr(sw, n)) == 128
                   for n in ("x3", "x3p", "inv_x3", "x2p", "x4p", "x5p"))
        for i in sw.skipped:
            assert sw.x3p[i] is None

    def test_minimum_samples(self, fam):
        with pytest.raises(ValueError):
            sweep(fam, REF_K, 32)

    def test_concentric_family_fixed_circumcenter(self):
        # f = g = 0 with a = b: circumcircle is the unit circle for all theta.
        fam = PonceletFamily.from_axes(0.0, 0.0, 1.0, 1.0)
        sw = sweep(fam, Circle(3 + 0j, 1.0), 64)
        assert max(abs(z) for z in sw.x3) < 1e-12
        assert np.allclose(sw.power_at_O, 8.0)
        x3p = sw.valid("x3p")
        assert np.max(np.abs(x3p - x3p[0])) < 1e-12

    def test_power_column_matches_centers(self, fam):
        sw = sweep(fam, REF_K, 64)
        # power < 0 exactly when O is inside that circumcircle; compare
        # against the collinearity-ratio identity r^2 |x3 - O| / |x3' - O|.
        for i in range(64):
            if sw.x3p[i] is None:
                continue
            implied = REF_K.radius ** 2 * abs(sw.x3[i] - REF_K.center) \
                / abs(sw.x3p[i] - REF_K.center)
            assert abs(implied - abs(sw.power_at_O[i])) < 1e-9 * implied


class TestClassifyO:
    def test_reference_cases(self, fam):
        loc = classify_O(fam, REF_K)
        assert loc.kind is OLocationKind.INTERIOR
        assert loc.crossing_count == 6
        loc = classify_O(fam, EXTERIOR_K)
        assert loc.kind is OLocationKind.EXTERIOR
        assert loc.crossing_count == 0

    def test_always_inside_counts_as_interior(self):
        # Unit circumcircle for every theta; O at its center.
        fam = PonceletFamily.from_axes(0.0, 0.0, 1.0, 1.0)
        loc = classify_O(fam, Circle(0.1 + 0j, 0.5))
        assert loc.kind is OLocationKind.INTERIOR
        assert loc.crossing_count == 0

    def test_grid_refinement_stability(self, fam):
        a = classify_O(fam, REF_K, n=1024)
        b = classify_O(fam, REF_K, n=4096)
        assert (a.kind, a.crossing_count) == (b.kind, b.crossing_count)

    def test_conic_type_law_consistency(self, fam):
        rep = verify_conic_type(fam, REF_K)
        assert rep.consistent and rep.conic_type is ConicType.HYPERBOLA
        rep = verify_conic_type(fam, EXTERIOR_K)
        assert rep.consistent and rep.conic_type is ConicType.ELLIPSE


class TestSimilitude:
    def test_reference_config(self, fam):
        rep = similitude_check(fam, REF_K, 360)
        assert rep.status == "ok"
        assert len(rep.tangents) == 2
        assert max(rep.locus_residuals) < 1e-7
        assert all(d < 1e-4 * rep.scale for d in rep.cloud_distances)
        assert all(rep.cloud_one_sided)

    def test_o_inside_locus_has_no_tangents(self, fam):
        # Center O on the X3 locus centroid: no real tangents exist.
        sw = sweep(fam, REF_K, 128)
        centroid = complex(np.mean(sw.valid("x3")))
        rep = similitude_check(fam, Circle(centroid, 0.4), 128)
        assert rep.status == "no-real-tangents"


class TestHomothety:
    def test_reference_family(self, fam):
        rep = homothety_check(fam, radius=0.8, n=360)
        assert rep.status == "ok"
        assert rep.angle_defect < 1e-7
        assert rep.eigenratio_defect < 1e-7
        assert rep.ratio_defect < 1e-7
        predicted = abs(p3_point(fam).invariant_power) / 0.8 ** 2
        assert rep.predicted_ratio == pytest.approx(predicted)

    def test_degenerate_chapple_locus(self):
        # Bicentric family: X3 is pinned at the origin, no conic to compare.
        fam = PonceletFamily.from_axes(0.3, 0.3, 1.0, 1.0)
        assert homothety_check(fam, n=128).status == "degenerate"


class TestNonConic:
    def test_reference_config(self, fam):
        rep = nonconic_evidence(sweep(fam, REF_K, 360))
        assert rep.is_evidence()
        x3p = rep.fits["x3p"]
        assert x3p.residual < 1e-9 * x3p.scale
        for name in ("x2p", "x4p", "x5p"):
            fit = rep.fits[name]
            assert fit.residual > 1e-4 * fit.scale

    def test_needs_enough_samples(self, fam):
        sw = sweep(fam, REF_K, 64)
        with pytest.raises(ValueError):
            nonconic_evidence(sw)


class TestCircleFit:
    def test_exact_circle(self):
        th = np.linspace(0, 2 * np.pi, 50, endpoint=False)
        pts = (1 - 2j) + 1.7 * np.exp(1j * th)
        circ, resid = circle_fit(pts)
        assert abs(circ.center - (1 - 2j)) < 1e-12
        assert circ.radius == pytest.approx(1.7)
        assert resid < 1e-12

    def test_detects_non_circle(self):
        th = np.linspace(0, 2 * np.pi, 50, endpoint=False)
        pts = 2 * np.cos(th) + 1j * np.sin(th)
        _, resid = circle_fit(pts)
        assert resid > 0.1


class TestSimilitudeCenter:
    def test_known_value(self):
        c = external_similitude_center(Circle(0j, 2.0), Circle(3 + 0j, 1.0))
        assert c == pytest.approx(6 + 0j)

    def test_equal_radii_rejected(self):
        with pytest.raises(ZeroDivisionError):
            external_similitude_center(Circle(0j, 1.0), Circle(1 + 0j, 1.0))

    def test_exact_locus_is_conic_of_sweep(self, fam):
        conic = exact_locus_conic(inversive_coeffs(fam, REF_K))
        sw = sweep(fam, REF_K, 256)
        assert conic.distance(conic_fit(sw.valid("x3p"))) < 1e-8
        assert max(conic_residual(conic, p) for p in sw.valid("x3p")) < 1e-9
