"""Circle inversion, triangle centers, and the closed-form inversive
circumcenter with its projective-map consequences.

The closed form evaluated here is

    X3'(lam) = z0 + (a2 lam + a1 conj(lam) + a0) / (b2 lam + b1 conj(lam) + b0)

with b1 = conj(b2) and b0 real, so the denominator is a real scalar: it
equals twice the power of the inversion center with respect to the moving
circumcircle, while the numerator equals 2 r^2 (X3 - z0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .conics import Conic, ProjectiveMap, conic_transform
from .errors import (
    CenterSingularity,
    CollinearVertices,
    DegenerateConfiguration,
    HypothesisViolation,
    OnCircumcircle,
)
from .family import PonceletFamily, Triangle


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def __post_init__(self):
        if not (self.radius > 0):
            raise ValueError("circle radius must be positive")
        object.__setattr__(self, "center", complex(self.center))


def invert_point(z: complex, k: Circle) -> complex:
    """Inversion z -> z0 + r^2/(conj(z) - conj(z0)); an involution."""
    if abs(z - k.center) <= 1e-12:
        raise CenterSingularity("cannot invert the inversion center")
    return k.center + k.radius ** 2 / np.conj(z - k.center)


def inversive_triangle(t: Triangle, k: Circle) -> Triangle:
    return Triangle(*(invert_point(v, k) for v in t))


def circumcenter(t: Triangle) -> complex:
    w1, w2, w3 = t
    num = (abs(w1) ** 2 * (w2 - w3) + abs(w2) ** 2 * (w3 - w1)
           + abs(w3) ** 2 * (w1 - w2))
    den = (np.conj(w1) * (w2 - w3) + np.conj(w2) * (w3 - w1)
           + np.conj(w3) * (w1 - w2))
    scale = max(abs(w1 - w2), abs(w2 - w3), abs(w3 - w1))
    if abs(den) <= 1e-12 * scale * scale:
        raise CollinearVertices("triangle vertices are collinear")
    return num / den


def circumcircle(t: Triangle) -> Circle:
    c = circumcenter(t)
    return Circle(c, abs(t.v1 - c))


def barycenter(t: Triangle) -> complex:
    return (t.v1 + t.v2 + t.v3) / 3


def orthocenter(t: Triangle) -> complex:
    # H = v1 + v2 + v3 - 2 X3, valid in any chart.
    return t.v1 + t.v2 + t.v3 - 2 * circumcenter(t)


def euler_center(t: Triangle) -> complex:
    return (circumcenter(t) + orthocenter(t)) / 2


def euler_circle(t: Triangle) -> Circle:
    c = circumcircle(t)
    return Circle((c.center + orthocenter(t)) / 2, c.radius / 2)


@dataclass(frozen=True)
class InversiveCoefficients:
    """Coefficients of the closed-form inversive circumcenter.

    a1 is the conj(lam) coefficient of the (lam, conj(lam))-affine
    numerator; b1 = conj(b2) and b0 is real by construction, which is what
    makes the induced map of the locus a projective transformation.
    """

    a0: complex
    a1: complex
    a2: complex
    b0: float
    b1: complex
    b2: complex
    r2: float
    z0: complex

    def numerator(self, lam: complex) -> complex:
        return self.a2 * lam + self.a1 * np.conj(lam) + self.a0

    def denominator(self, lam: complex) -> float:
        return float(np.real(self.b2 * lam + self.b1 * np.conj(lam) + self.b0))

    def denominator_scale(self) -> float:
        return 2 * abs(self.b2) + abs(self.b0)


def inversive_coeffs(fam: PonceletFamily, k: Circle) -> InversiveCoefficients:
    f, g, p, q = fam.f, fam.g, fam.p, fam.q
    fb, gb = np.conj(f), np.conj(g)
    z0 = k.center
    z0b = np.conj(z0)
    r2 = k.radius ** 2

    a2 = -p * q * (q * gb * fb - p) * r2
    a1 = r2 * p * q * (f * g * p - q)
    a0 = -((f + g) * p * q ** 2 - p ** 2 * q * (fb + gb)
           + (p ** 2 - q ** 2) * z0) * r2
    b2 = -q * p * (fb * gb * (p * z0 - q * z0b)
                   + (q ** 2 - p ** 2) * (fb + gb) + p * z0b - q * z0)
    b1 = np.conj(b2)
    b0 = (-p ** 4 + q * (f * g + fb * gb) * p ** 3
          - (z0 * (f + g) + z0b * (fb + gb)) * p ** 2 * q
          + abs(z0) ** 2 * p ** 2 - (f * g + fb * gb) * q ** 3 * p + q ** 4
          + (z0b * (f + g) + z0 * (fb + gb)) * p * q ** 2
          - abs(z0) ** 2 * q ** 2)

    if abs(np.imag(b0)) > 1e-10 * max(abs(b0), 1e-300):
        raise HypothesisViolation(f"Im(b0) = {np.imag(b0):.3e} is not negligible")
    if abs(b2 - np.conj(b1)) > 1e-10 * max(abs(b1), 1e-300):
        raise HypothesisViolation("b2 != conj(b1)")
    return InversiveCoefficients(a0=complex(a0), a1=complex(a1), a2=complex(a2),
                                 b0=float(np.real(b0)), b1=complex(b1),
                                 b2=complex(b2), r2=r2, z0=z0)


def hypothesis_residuals(fam: PonceletFamily, k: Circle) -> tuple[float, float]:
    """Raw relative residuals of the projectivity hypotheses:
    (|Im b0| / |b0|, |b2 - conj(b1)| / |b1|)."""
    coeffs = inversive_coeffs(fam, k)
    f, g, p, q = fam.f, fam.g, fam.p, fam.q
    fb, gb = np.conj(f), np.conj(g)
    z0, z0b = k.center, np.conj(k.center)
    b0_raw = (-p ** 4 + q * (f * g + fb * gb) * p ** 3
              - (z0 * (f + g) + z0b * (fb + gb)) * p ** 2 * q
              + abs(z0) ** 2 * p ** 2 - (f * g + fb * gb) * q ** 3 * p + q ** 4
              + (z0b * (f + g) + z0 * (fb + gb)) * p * q ** 2
              - abs(z0) ** 2 * q ** 2)
    im_rel = abs(np.imag(b0_raw)) / max(abs(b0_raw), 1e-300)
    conj_rel = abs(coeffs.b2 - np.conj(coeffs.b1)) / max(abs(coeffs.b1), 1e-300)
    return float(im_rel), float(conj_rel)


def inversive_circumcenter_closed(coeffs: InversiveCoefficients,
                                  theta: float) -> complex:
    lam = np.exp(1j * theta)
    den = coeffs.denominator(lam)
    if abs(den) <= 1e-10 * coeffs.denominator_scale():
        raise OnCircumcircle("inversion center on the circumcircle at this theta")
    return coeffs.z0 + coeffs.numerator(lam) / den


def projective_map_of_locus(coeffs: InversiveCoefficients):
    """Projective map sending lam (on the unit circle) to the locus chart.

    Returns (m, post): the locus of X3' is the unit circle pushed through
    m, then through the affine post-map z -> z0 + r^2 z.
    """
    k1 = coeffs.a2 / coeffs.r2
    k2 = coeffs.a1 / coeffs.r2
    k3 = coeffs.a0 / coeffs.r2
    row1 = [k1.real + k2.real, k2.imag - k1.imag, k3.real]
    row2 = [k1.imag + k2.imag, k1.real - k2.real, k3.imag]
    row3 = [2 * coeffs.b2.real, -2 * coeffs.b2.imag, coeffs.b0]
    m = ProjectiveMap(np.array([row1, row2, row3]))
    post = ProjectiveMap.affine(coeffs.r2, coeffs.z0)
    return m, post


def exact_locus_conic(coeffs: InversiveCoefficients) -> Conic:
    """Exact conic swept by the inversive circumcenter."""
    m, post = projective_map_of_locus(coeffs)
    return conic_transform(Conic.unit_circle(), post.compose(m))


def pencil_membership(c1: Circle, c2: Circle, c3: Circle) -> float:
    """Relative smallest singular value of the stacked circle 4-vectors.

    Each circle maps to (1, -2 cx, -2 cy, |c|^2 - r^2); three circles are
    coaxial (one pencil) iff the 3x4 stack is rank deficient.
    """
    rows = []
    for c in (c1, c2, c3):
        rows.append([1.0, -2 * c.center.real, -2 * c.center.imag,
                     abs(c.center) ** 2 - c.radius ** 2])
    s = np.linalg.svd(np.array(rows), compute_uv=False)
    return float(s[-1] / s[0])


def collinearity_and_ratio(x3: complex, o: complex, x3p: complex,
                           circ: Circle, k: Circle) -> tuple[float, float]:
    """Residuals of the collinearity of X3, O, X3' and the distance ratio
    |O X3| / |O X3'| = |(|O - X3|^2 - R^2)| / r^2."""
    if abs(x3 - o) < 1e-10 or abs(x3p - o) < 1e-10:
        raise DegenerateConfiguration("O coincides with X3 or X3'")
    u, v = x3 - o, x3p - o
    coll = abs(np.imag(u * np.conj(v))) / (abs(u) * abs(v))
    ratio = abs(u) / abs(v)
    predicted = abs(abs(o - circ.center) ** 2 - circ.radius ** 2) / k.radius ** 2
    return float(coll), float(abs(ratio - predicted) / ratio)
