"""Sweeps over the family parameter and the verification suites built on
them: conic-type law, similitude tangency, homothety, constant-power and
non-conic evidence reports.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .conics import (
    Conic,
    ConicType,
    Line,
    conic_classify,
    conic_fit,
    conic_residual,
    tangency_residual,
    tangents_from_point,
)
from .errors import AmbiguousBoundary
from .family import PonceletFamily, Triangle, affine_image, triangle_at
from .inversive import (
    Circle,
    barycenter,
    circumcircle,
    euler_center,
    exact_locus_conic,
    inversive_coeffs,
    inversive_triangle,
    invert_point,
    circumcenter,
    orthocenter,
)
from .power import p3_point, power

_SKIP_POWER_TOL = 1e-8
_BOUNDARY_POWER_TOL = 1e-6


@dataclass
class SweepResult:
    """Per-sample loci of a uniform theta sweep.

    Center lists hold None at skipped indices (inversion center on the
    circumcircle there, inversive circumcenter at infinity).
    """

    thetas: np.ndarray
    x3: list
    x3p: list
    inv_x3: list
    x2p: list
    x4p: list
    x5p: list
    power_at_O: np.ndarray
    skipped: list[int]
    family: PonceletFamily
    inversion: Circle

    def valid(self, name: str) -> np.ndarray:
        pts = [p for p in getattr(self, name) if p is not None]
        return np.array(pts, dtype=complex)


def sweep(fam: PonceletFamily, k: Circle, n: int = 720) -> SweepResult:
    if n < 64:
        raise ValueError("need at least 64 samples")
    thetas = 2 * np.pi * np.arange(n) / n
    x3, x3p, inv_x3, x2p, x4p, x5p = [], [], [], [], [], []
    pow_o = np.empty(n)
    skipped = []
    for i, th in enumerate(thetas):
        w = affine_image(fam, triangle_at(fam, th))
        circ = circumcircle(w)
        x3.append(circ.center)
        pw = power(k.center, circ)
        pow_o[i] = pw
        if abs(pw) < _SKIP_POWER_TOL * circ.radius ** 2:
            skipped.append(i)
            for lst in (x3p, inv_x3, x2p, x4p, x5p):
                lst.append(None)
            continue
        tp = inversive_triangle(w, k)
        x3p.append(circumcenter(tp))
        inv_x3.append(invert_point(circ.center, k)
                      if abs(circ.center - k.center) > 1e-12 else None)
        x2p.append(barycenter(tp))
        x4p.append(orthocenter(tp))
        x5p.append(euler_center(tp))
    return SweepResult(thetas, x3, x3p, inv_x3, x2p, x4p, x5p,
                       pow_o, skipped, fam, k)


class OLocationKind(enum.Enum):
    EXTERIOR = "Exterior"
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"


@dataclass(frozen=True)
class OLocation:
    kind: OLocationKind
    crossing_count: int


def _power_profile(fam: PonceletFamily, k: Circle, n: int):
    thetas = 2 * np.pi * np.arange(n) / n
    pw = np.empty(n)
    r2 = np.empty(n)
    for i, th in enumerate(thetas):
        circ = circumcircle(affine_image(fam, triangle_at(fam, th)))
        pw[i] = power(k.center, circ)
        r2[i] = circ.radius ** 2
    return thetas, pw, r2


def classify_O(fam: PonceletFamily, k: Circle, n: int = 4096) -> OLocation:
    """Locate the inversion center against the circumcircle sweep region.

    Counts sign changes of theta -> power(O, circumcircle(theta)), each
    confirmed by bisection; tangent (no-crossing) near-zeros flag the
    boundary case.  One loop of the family parameter only permutes the
    vertices cyclically, so a full vertex revolution covers three loops;
    the reported crossing count is per vertex revolution (three times the
    per-loop count), giving 0 for an exterior center, 6 for an interior
    one and 3 double roots on the boundary.  Always-negative power also
    counts as Interior: O then sits inside every circumcircle.
    """
    thetas, pw, r2 = _power_profile(fam, k, n)

    def pw_at(th):
        circ = circumcircle(affine_image(fam, triangle_at(fam, th)))
        return power(k.center, circ)

    crossings = 0
    for i in range(n):
        j = (i + 1) % n
        if pw[i] == 0.0 or pw[i] * pw[j] >= 0:
            continue
        lo, hi = thetas[i], thetas[i] + 2 * np.pi / n
        flo = pw[i]
        for _ in range(40):
            mid = 0.5 * (lo + hi)
            fm = pw_at(mid)
            if flo * fm <= 0:
                hi = mid
            else:
                lo, flo = mid, fm
        crossings += 1

    # Tangent near-zeros: local |power| minima without a sign change.
    tangencies = 0
    eps = _BOUNDARY_POWER_TOL * r2
    for i in range(n):
        im, ip = (i - 1) % n, (i + 1) % n
        if abs(pw[i]) <= abs(pw[im]) and abs(pw[i]) < abs(pw[ip]) \
                and abs(pw[i]) < eps[i] \
                and pw[im] * pw[i] > 0 and pw[i] * pw[ip] > 0:
            tangencies += 1

    if crossings == 0:
        if tangencies > 0:
            return OLocation(OLocationKind.BOUNDARY, 3 * tangencies)
        kind = OLocationKind.INTERIOR if np.all(pw < 0) else OLocationKind.EXTERIOR
        return OLocation(kind, 0)
    if crossings == 2:
        return OLocation(OLocationKind.INTERIOR, 3 * crossings)
    # A boundary configuration can split each double root into a shallow
    # crossing pair; accept it when every excursion past zero is shallow.
    if crossings % 2 == 0 and _shallow_crossings(pw, eps):
        return OLocation(OLocationKind.BOUNDARY, 3 * crossings)
    raise AmbiguousBoundary(
        f"unexpected per-loop crossing count {crossings} "
        f"with {tangencies} tangencies")


def _shallow_crossings(pw: np.ndarray, eps: np.ndarray) -> bool:
    minority = 1 if np.sum(pw > 0) < len(pw) / 2 else -1
    sel = pw * minority > 0
    return bool(np.all(np.abs(pw[sel]) < eps[sel]))


def _expected_type(loc: OLocation) -> ConicType:
    # The locus is unbounded exactly when the closed-form denominator (twice
    # the power of O) vanishes somewhere, i.e. when crossings occur.  An
    # always-negative power is classified Interior with zero crossings (O in
    # the hole of the swept annulus); the locus is then still bounded.
    if loc.kind is OLocationKind.BOUNDARY:
        return ConicType.PARABOLA
    return ConicType.HYPERBOLA if loc.crossing_count > 0 else ConicType.ELLIPSE


@dataclass(frozen=True)
class ConicTypeReport:
    o_location: OLocation
    conic_type: ConicType
    consistent: bool


def verify_conic_type(fam: PonceletFamily, k: Circle) -> ConicTypeReport:
    """Check the conic-type law: Exterior -> ellipse, Interior (crossed)
    -> hyperbola, Boundary -> parabola."""
    loc = classify_O(fam, k)
    ctype = conic_classify(exact_locus_conic(inversive_coeffs(fam, k)))
    return ConicTypeReport(loc, ctype, _expected_type(loc) == ctype)


@dataclass
class SimilitudeReport:
    status: str  # "ok" or "no-real-tangents"
    tangents: list[Line] = field(default_factory=list)
    locus_residuals: list[float] = field(default_factory=list)
    cloud_distances: list[float] = field(default_factory=list)
    cloud_one_sided: list[bool] = field(default_factory=list)
    scale: float = 0.0


def similitude_check(fam: PonceletFamily, k: Circle, n: int = 720,
                     tol: float = 1e-7) -> SimilitudeReport:
    """Tangents from O to the X3 locus must also touch the X3' locus and
    graze the inv(X3) point cloud."""
    sw = sweep(fam, k, n)
    l3 = conic_fit(sw.valid("x3"))
    o = k.center
    lines = tangents_from_point(l3, o)
    if len(lines) < 2:
        return SimilitudeReport(status="no-real-tangents")
    l3p = exact_locus_conic(inversive_coeffs(fam, k))
    cloud = sw.valid("inv_x3")
    scale = float(np.max(np.abs(cloud - cloud.mean()))) if len(cloud) else 1.0
    rep = SimilitudeReport(status="ok", tangents=lines, scale=scale)
    for line in lines:
        rep.locus_residuals.append(tangency_residual(l3p, line))
        d = np.array([line.signed_distance(p) for p in cloud])
        rep.cloud_distances.append(float(np.min(np.abs(d))))
        band = 1e-4 * scale
        rep.cloud_one_sided.append(bool(np.all(d > -band) or np.all(d < band)))
    return rep


@dataclass
class HomothetyReport:
    status: str  # "ok" or "degenerate"
    angle_defect: float = np.nan
    eigenratio_defect: float = np.nan
    ratio_defect: float = np.nan
    scale_ratio: float = np.nan
    predicted_ratio: float = np.nan


def _quadratic_eigs(c: Conic) -> np.ndarray:
    m = np.array([[c.A, c.B / 2], [c.B / 2, c.C]])
    ev = np.linalg.eigvalsh(m)
    if ev.sum() < 0:
        ev = -ev[::-1]
    return ev


def _axis_angle(c: Conic) -> float:
    m = np.array([[c.A, c.B / 2], [c.B / 2, c.C]])
    _, vec = np.linalg.eigh(m)
    return float(np.arctan2(vec[1, 0], vec[0, 0])) % np.pi


def homothety_check(fam: PonceletFamily, radius: float = 1.0,
                    n: int = 720) -> HomothetyReport:
    """With the inversion centered at P3, the X3' locus is a translated and
    scaled copy of the X3 locus; the scale is r^2 / |Pi3|."""
    res = p3_point(fam)
    k = Circle(res.point, radius)
    sw = sweep(fam, k, n)
    x3 = sw.valid("x3")
    spread = float(np.max(np.abs(x3 - x3.mean())))
    if spread < 1e-10 * max(1.0, abs(x3.mean())):
        return HomothetyReport(status="degenerate")
    l3 = conic_fit(x3)
    l3p = exact_locus_conic(inversive_coeffs(fam, k))

    ev3, ev3p = _quadratic_eigs(l3), _quadratic_eigs(l3p)
    eigenratio_defect = abs(ev3[0] / ev3[1] - ev3p[0] / ev3p[1])
    a1, a2 = _axis_angle(l3), _axis_angle(l3p)
    d = abs(a1 - a2) % np.pi
    angle_defect = min(d, np.pi - d)

    from .conics import conic_params
    _, maj3, _, _ = conic_params(l3)
    _, maj3p, _, _ = conic_params(l3p)
    scale_ratio = maj3 / maj3p
    predicted = abs(res.invariant_power) / radius ** 2
    return HomothetyReport(
        status="ok",
        angle_defect=float(angle_defect),
        eigenratio_defect=float(eigenratio_defect),
        ratio_defect=float(abs(scale_ratio - predicted) / predicted),
        scale_ratio=float(scale_ratio),
        predicted_ratio=float(predicted),
    )


@dataclass
class CenterFitReport:
    name: str
    residual: float  # max normalized conic residual, or nan when degenerate
    scale: float
    degenerate: bool


@dataclass
class NonConicReport:
    fits: dict
    conic_like: dict

    def is_evidence(self) -> bool:
        """True when only X3' fits a conic on this sweep."""
        others = [n for n in ("x2p", "x4p", "x5p") if not self.fits[n].degenerate]
        return (self.conic_like.get("x3p", False)
                and all(not self.conic_like[n] for n in others))


def nonconic_evidence(sw: SweepResult) -> NonConicReport:
    """Best-fit conic residuals for X2', X4', X5' versus X3'.

    Report only; a residual above 1e-4 * scale is taken as evidence that
    the locus is not a conic, below 1e-9 * scale that it is.
    """
    if len(sw.thetas) - len(sw.skipped) < 100:
        raise ValueError("need at least 100 valid samples")
    fits, conic_like = {}, {}
    for name in ("x3p", "x2p", "x4p", "x5p"):
        pts = sw.valid(name)
        scale = float(np.max(np.abs(pts - pts.mean())))
        if scale < 1e-9:
            fits[name] = CenterFitReport(name, np.nan, scale, True)
            conic_like[name] = True  # a point locus is (degenerately) conic
            continue
        c = conic_fit(pts)
        resid = max(conic_residual(c, p) for p in pts)
        fits[name] = CenterFitReport(name, resid, scale, False)
        conic_like[name] = resid < 1e-9 * scale
    return NonConicReport(fits, conic_like)


def circle_fit(points) -> tuple[Circle, float]:
    """Algebraic least-squares circle; returns (circle, max radial defect)."""
    pts = np.asarray(points, dtype=complex)
    x, y = pts.real, pts.imag
    m = np.column_stack([2 * x, 2 * y, np.ones_like(x)])
    rhs = x * x + y * y
    (cx, cy, d), *_ = np.linalg.lstsq(m, rhs, rcond=None)
    r = float(np.sqrt(d + cx * cx + cy * cy))
    resid = float(np.max(np.abs(np.abs(pts - complex(cx, cy)) - r)))
    return Circle(complex(cx, cy), r), resid


def external_similitude_center(c1: Circle, c2: Circle) -> complex:
    if abs(c1.radius - c2.radius) < 1e-300:
        raise ZeroDivisionError("equal radii: external center at infinity")
    return (c1.radius * c2.center - c2.radius * c1.center) \
        / (c1.radius - c2.radius)
