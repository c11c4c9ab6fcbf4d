"""Command line interface: sweep, verify, classify.

Configuration is a single flat JSON document; complex numbers are
two-element [re, im] arrays.  Exit codes: 0 success, 2 config error,
3 family construction error, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analysis, conics, family, inversive
from .power import p3_point, p3_preimage, p5_point
from .power import power as power_of_point
from .errors import FamilyError, GeometryError

CSV_HEADER = ("theta,x3_re,x3_im,x3p_re,x3p_im,invx3_re,invx3_im,"
              "x2p_re,x2p_im,x4p_re,x4p_im,x5p_re,x5p_im,power_O,skipped")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    fam: family.PonceletFamily
    inversion: inversive.Circle
    samples: int
    tolerances: dict
    raw: dict


def _cplx(value, name):
    try:
        re, im = value
        return complex(float(re), float(im))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name} must be a two-element [re, im] array") from exc


def load_config(path: str) -> RunConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        fam_spec = raw["family"]
        inv_spec = raw["inversion"]
    except KeyError as exc:
        raise ConfigError(f"missing config section {exc}") from exc

    has_foci = "f" in fam_spec and "g" in fam_spec
    has_circle = "inner_circle_center" in fam_spec and "inner_circle_radius" in fam_spec
    if has_foci == has_circle:
        raise ConfigError("family needs exactly one of {f,g,a,b} or "
                          "{a,b,inner_circle_center,inner_circle_radius}")
    try:
        a, b = float(fam_spec["a"]), float(fam_spec["b"])
    except (KeyError, ValueError) as exc:
        raise ConfigError("family requires numeric semiaxes a, b") from exc
    if has_foci:
        fam = family.PonceletFamily.from_axes(
            _cplx(fam_spec["f"], "f"), _cplx(fam_spec["g"], "g"), a, b)
    else:
        fam = family.family_from_inner_circle(
            a, b, _cplx(fam_spec["inner_circle_center"], "inner_circle_center"),
            float(fam_spec["inner_circle_radius"]))

    k = inversive.Circle(_cplx(inv_spec["center"], "inversion center"),
                         float(inv_spec["radius"]))
    samples = int(raw.get("samples", 720))
    if samples < 64:
        raise ConfigError("samples must be >= 64")
    return RunConfig(fam, k, samples, raw.get("tolerances", {}), raw)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_csv(sw: analysis.SweepResult, path: Path) -> None:
    lines = [CSV_HEADER]
    for i, th in enumerate(sw.thetas):
        cells = [_fmt(th), _fmt(sw.x3[i].real), _fmt(sw.x3[i].imag)]
        skipped = i in set(sw.skipped)
        for name in ("x3p", "inv_x3", "x2p", "x4p", "x5p"):
            p = getattr(sw, name)[i]
            if p is None:
                cells += ["", ""]
            else:
                cells += [_fmt(p.real), _fmt(p.imag)]
        cells.append(_fmt(sw.power_at_O[i]))
        cells.append("1" if skipped else "0")
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n")


def _svg_path(points, close=False) -> str:
    cmds = []
    pen = "M"
    for p in points:
        if p is None:
            pen = "M"
            continue
        cmds.append(f"{pen}{p.real:.6g} {p.imag:.6g}")
        pen = "L"
    if close and cmds:
        cmds.append("Z")
    return " ".join(cmds)


def _conic_polyline(c: conics.Conic, bbox, n=512):
    """Sample the conic inside a bounding box by scanning both axes."""
    xmin, xmax, ymin, ymax = bbox
    A, B, C, D, E, F = c.coeffs
    pts = []
    for x in np.linspace(xmin, xmax, n):
        aa, bb, cc = C, B * x + E, A * x * x + D * x + F
        if abs(aa) < 1e-14:
            continue
        disc = bb * bb - 4 * aa * cc
        if disc >= 0:
            for sgn in (1, -1):
                y = (-bb + sgn * np.sqrt(disc)) / (2 * aa)
                if ymin <= y <= ymax:
                    pts.append(complex(x, y))
    return pts


def write_svg(sw: analysis.SweepResult, exact: conics.Conic,
              p3: complex, p5: complex, path: Path) -> None:
    fam, k = sw.family, sw.inversion
    half_w, half_h = 1.6 * fam.a, 1.6 * fam.b
    half_w = max(half_w, abs(k.center.real) + k.radius + 0.5)
    half_h = max(half_h, abs(k.center.imag) + k.radius + 0.5)
    bbox = (-half_w, half_w, -half_h, half_h)
    stroke = min(half_w, half_h) / 250

    inner = family.inner_ellipse_world(fam)
    ic = (inner.focus1 + inner.focus2) / 2
    semi_major = inner.major_axis_length / 2
    semi_minor = np.sqrt(max(semi_major ** 2
                             - (abs(inner.focus2 - inner.focus1) / 2) ** 2, 0))
    tilt = np.degrees(np.angle(inner.focus2 - inner.focus1)) \
        if inner.focus2 != inner.focus1 else 0.0

    def poly(name, color, close=True):
        d = _svg_path(getattr(sw, name) + [getattr(sw, name)[0]]
                      if close else getattr(sw, name))
        return (f'<path d="{d}" fill="none" stroke="{color}" '
                f'stroke-width="{stroke}"/>')

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{-half_w:.6g} {-half_h:.6g} {2*half_w:.6g} {2*half_h:.6g}">',
        f'<g transform="scale(1,-1)">',
        f'<ellipse cx="0" cy="0" rx="{fam.a}" ry="{fam.b}" fill="none" '
        f'stroke="black" stroke-width="{stroke}"/>',
        f'<ellipse cx="{ic.real:.6g}" cy="{ic.imag:.6g}" rx="{semi_major:.6g}" '
        f'ry="{semi_minor:.6g}" transform="rotate({tilt:.6g} {ic.real:.6g} '
        f'{ic.imag:.6g})" fill="none" stroke="gray" stroke-width="{stroke}"/>',
        f'<circle cx="{k.center.real:.6g}" cy="{k.center.imag:.6g}" '
        f'r="{k.radius:.6g}" fill="none" stroke="red" stroke-dasharray='
        f'"{4*stroke} {4*stroke}" stroke-width="{stroke}"/>',
        poly("x3", "#1f77b4"),
        poly("x3p", "#2ca02c"),
        poly("inv_x3", "#bcbd22"),
        poly("x2p", "#17becf"),
        poly("x4p", "#ff7f0e"),
        poly("x5p", "#e377c2"),
    ]
    exact_pts = _conic_polyline(exact, bbox)
    parts.append(f'<path d="{_svg_path(exact_pts)}" fill="none" '
                 f'stroke="#2ca02c" stroke-width="{stroke/2}" opacity="0.6"/>')
    for pt, color in ((p3, "#1f77b4"), (p5, "#ff7f0e")):
        parts.append(f'<circle cx="{pt.real:.6g}" cy="{pt.imag:.6g}" '
                     f'r="{3*stroke:.6g}" fill="{color}"/>')
    parts.append("</g></svg>")
    path.write_text("\n".join(parts) + "\n")


def cmd_sweep(cfg: RunConfig, out_dir: Path, svg: bool) -> int:
    sw = analysis.sweep(cfg.fam, cfg.inversion, cfg.samples)
    coeffs = inversive.inversive_coeffs(cfg.fam, cfg.inversion)
    exact = inversive.exact_locus_conic(coeffs)
    p3 = p3_point(cfg.fam)
    p5 = p5_point(cfg.fam)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_csv(sw, out_dir / "sweep.csv")
    meta = {
        "exact_x3p_conic": list(exact.coeffs),
        "p3": [p3.point.real, p3.point.imag],
        "pi3": p3.invariant_power,
        "p5": [p5.point.real, p5.point.imag],
        "pi5": p5.invariant_power,
        "samples": cfg.samples,
        "skipped": sw.skipped,
    }
    (out_dir / "sweep_meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    if svg:
        write_svg(sw, exact, p3.point, p5.point, out_dir / "sweep.svg")
    return 0


def _check(lines, name, ok, residual=None, note=""):
    status = "PASS" if ok else "FAIL"
    extra = f" residual={residual:.3e}" if residual is not None else ""
    if note:
        extra += f" {note}"
    lines.append(f"{name}: {status}{extra}")
    return ok


def _skip(lines, name, note=""):
    lines.append(f"{name}: SKIP {note}".rstrip())


def run_verify(cfg: RunConfig) -> tuple[list[str], bool]:
    fam, k = cfg.fam, cfg.inversion
    tol = cfg.tolerances
    lines = []
    all_ok = True
    coeffs = inversive.inversive_coeffs(fam, k)

    # Closed form vs direct composition.
    errs = []
    for th in 2 * np.pi * np.arange(64) / 64:
        w = family.affine_image(fam, family.triangle_at(fam, th))
        try:
            closed = inversive.inversive_circumcenter_closed(coeffs, th)
        except GeometryError:
            continue
        direct = inversive.circumcenter(inversive.inversive_triangle(w, k))
        errs.append(abs(closed - direct) / max(1.0, abs(direct)))
    all_ok &= _check(lines, "closed_form_vs_direct", max(errs) < tol.get(
        "closed_form", 1e-9), max(errs))

    # Projectivity hypotheses.
    im_rel, conj_rel = inversive.hypothesis_residuals(fam, k)
    all_ok &= _check(lines, "projectivity_hypotheses",
                     im_rel < 1e-10 and conj_rel < 1e-10,
                     max(im_rel, conj_rel))

    # Exact vs fitted conic, sweep residuals.
    sw = analysis.sweep(fam, k, cfg.samples)
    exact = inversive.exact_locus_conic(coeffs)
    fitted = conics.conic_fit(sw.valid("x3p"))
    dist = min(exact.distance(fitted),
               float(np.linalg.norm(exact.coeffs + fitted.coeffs)))
    all_ok &= _check(lines, "exact_vs_fitted_conic",
                     dist < tol.get("conic_match", 1e-8), dist)
    resid = max(conics.conic_residual(exact, p) for p in sw.valid("x3p"))
    all_ok &= _check(lines, "sweep_on_exact_conic",
                     resid < tol.get("locus_residual", 1e-9), resid)

    # Conic type vs O location.
    try:
        rep = analysis.verify_conic_type(fam, k)
        all_ok &= _check(lines, "conic_type_law", rep.consistent,
                         note=f"O={rep.o_location.kind.value} "
                              f"locus={rep.conic_type.value} "
                              f"crossings={rep.o_location.crossing_count}")
    except GeometryError as exc:
        all_ok &= _check(lines, "conic_type_law", False, note=str(exc))

    # Collinearity, ratio, pencil.
    coll_max = ratio_max = pencil_max = 0.0
    for i, th in enumerate(sw.thetas):
        if sw.x3p[i] is None:
            continue
        w = family.affine_image(fam, family.triangle_at(fam, th))
        circ = inversive.circumcircle(w)
        tp = inversive.inversive_triangle(w, k)
        try:
            c, r = inversive.collinearity_and_ratio(
                sw.x3[i], k.center, sw.x3p[i], circ, k)
        except GeometryError:
            continue
        coll_max, ratio_max = max(coll_max, c), max(ratio_max, r)
        pencil_max = max(pencil_max, inversive.pencil_membership(
            circ, k, inversive.circumcircle(tp)))
    all_ok &= _check(lines, "collinearity", coll_max < 1e-9, coll_max)
    all_ok &= _check(lines, "distance_ratio", ratio_max < 1e-9, ratio_max)
    all_ok &= _check(lines, "pencil_membership", pencil_max < 1e-9, pencil_max)

    # Constant power points.
    res3 = p3_point(fam)
    pows = np.array([power_of_point(res3.point, inversive.circumcircle(
        family.affine_image(fam, family.triangle_at(fam, th))))
        for th in sw.thetas])
    rel_std = pows.std() / abs(pows.mean())
    mean_err = abs(pows.mean() - res3.invariant_power) / abs(res3.invariant_power)
    all_ok &= _check(lines, "p3_constant_power",
                     rel_std < 1e-9 and mean_err < 1e-9, max(rel_std, mean_err))

    res5 = p5_point(fam)
    pows5 = np.array([power_of_point(res5.point, inversive.euler_circle(
        family.affine_image(fam, family.triangle_at(fam, th))))
        for th in sw.thetas])
    rel_std5 = pows5.std() / abs(pows5.mean())
    mean_err5 = abs(pows5.mean() - res5.invariant_power) / abs(res5.invariant_power)
    all_ok &= _check(lines, "p5_constant_power",
                     rel_std5 < 1e-8 and mean_err5 < 1e-8,
                     max(rel_std5, mean_err5))

    # P3 interiority.
    inner = family.inner_ellipse(fam)
    margin = inner.major_axis_length - (abs(p3_preimage(fam) - fam.f)
                                        + abs(p3_preimage(fam) - fam.g))
    all_ok &= _check(lines, "p3_interiority", margin > 1e-12, margin)

    # Similitude tangency.
    sim = analysis.similitude_check(fam, k, cfg.samples)
    if sim.status == "no-real-tangents":
        _skip(lines, "similitude_tangency", "(O interior to the X3 locus)")
    else:
        ok = (max(sim.locus_residuals) < 1e-7
              and all(d < 1e-4 * sim.scale for d in sim.cloud_distances)
              and all(sim.cloud_one_sided))
        all_ok &= _check(lines, "similitude_tangency", ok,
                         max(sim.locus_residuals))

    # Homothety (only when the config put O at P3).
    if abs(k.center - res3.point) < 1e-9 * max(1.0, abs(res3.point)):
        hom = analysis.homothety_check(fam, k.radius, cfg.samples)
        if hom.status == "degenerate":
            _skip(lines, "homothety", "(X3 locus degenerates to a point)")
        else:
            ok = (hom.angle_defect < 1e-7 and hom.eigenratio_defect < 1e-7
                  and hom.ratio_defect < 1e-7)
            all_ok &= _check(lines, "homothety", ok, max(
                hom.angle_defect, hom.eigenratio_defect, hom.ratio_defect))
    else:
        _skip(lines, "homothety", "(inversion center is not P3)")

    # Poncelet closure.
    closure = 0.0
    world_inner = family.inner_ellipse_world(fam)
    for th in sw.thetas[:: max(1, len(sw.thetas) // 120)]:
        w = family.affine_image(fam, family.triangle_at(fam, th))
        for s1, s2 in ((w.v1, w.v2), (w.v2, w.v3), (w.v3, w.v1)):
            closure = max(closure,
                          world_inner.side_tangency_residual(s1, s2))
    all_ok &= _check(lines, "poncelet_closure", closure < 1e-8, closure)

    # Non-conic evidence (report only).
    try:
        nc = analysis.nonconic_evidence(sw)
        notes = ", ".join(
            f"{n}={nc.fits[n].residual:.2e}" if not nc.fits[n].degenerate
            else f"{n}=degenerate" for n in ("x3p", "x2p", "x4p", "x5p"))
        _check(lines, "nonconic_evidence", True, note=f"({notes})")
    except ValueError as exc:
        _skip(lines, "nonconic_evidence", f"({exc})")

    return lines, all_ok


def cmd_verify(cfg: RunConfig, out_dir: Path | None) -> int:
    lines, all_ok = run_verify(cfg)
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "report.txt").write_text(text)
    return 0 if all_ok else 1


def cmd_classify(cfg: RunConfig) -> int:
    loc = analysis.classify_O(cfg.fam, cfg.inversion)
    conic = inversive.exact_locus_conic(
        inversive.inversive_coeffs(cfg.fam, cfg.inversion))
    ctype = conics.conic_classify(conic)
    print(f"O={loc.kind.value} locus={ctype.value} "
          f"crossings={loc.crossing_count}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poncelet-inversive",
        description="Sweep, verify and classify inversive Poncelet "
                    "circumcenter loci.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("sweep", "verify", "classify"):
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True)
        sp.add_argument("--samples", type=int, default=None)
        sp.add_argument("--out", default="out")
        if name == "sweep":
            sp.add_argument("--svg", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.samples is not None:
            if args.samples < 64:
                raise ConfigError("samples must be >= 64")
            cfg.samples = args.samples
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FamilyError as exc:
        print(f"family error: {exc}", file=sys.stderr)
        return 3
    try:
        if args.command == "sweep":
            return cmd_sweep(cfg, Path(args.out), args.svg)
        if args.command == "verify":
            return cmd_verify(cfg, Path(args.out))
        return cmd_classify(cfg)
    except GeometryError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
