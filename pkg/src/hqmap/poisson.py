"""Boundary sampling of the derivative norm, the Poisson-kernel functional,
Hardy means, and the circle-image arc/diameter ratio bracket.

Boundary values of the derivative norm are approximated on the ring of
radius 1 - eps (their existence at the circle is part of the hypothesis
chain being probed), while the Poisson kernel itself is evaluated at the
unit-circle nodes e^{i t_k}, so the functional of the identity map is the
plain Poisson integral and equals one at every interior point.  Circle
averages use the trapezoidal rule, which is spectrally accurate for these
periodic integrands.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .maps import HarmonicMap, ParameterError
from .quadrature import adaptive_quad


@dataclass(eq=False)
class BoundaryProfile:
    """Derivative norms dnorm((1-eps) e^{i t_k}) at n uniform angles."""

    eps: float
    n: int
    angles: np.ndarray
    values: np.ndarray
    drift: float          # relative change when resampled at eps/2
    converged: bool

    def to_csv_rows(self):
        for t, v in zip(self.angles, self.values):
            yield [repr(float(t)), repr(float(v))]


def boundary_profile(m: HarmonicMap, eps: float = 1e-3, n: int = 2048) -> BoundaryProfile:
    """Sample the derivative norm on the ring of radius 1 - eps.

    n must be a power of two, at least 256; the profile is compared with a
    half-offset ring (eps/2) to flag convergence of the ring surrogate.
    """
    if n < 256 or n & (n - 1):
        raise ParameterError("profile size must be a power of two, at least 256")
    if not 0.0 < eps < 0.5:
        raise ParameterError("ring offset must lie in (0, 0.5)")
    angles = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    ring = (1.0 - eps) * np.exp(1j * angles)
    values = np.asarray(m.wirtinger(ring).dnorm, dtype=float)
    if np.any(values <= 0.0):
        raise ParameterError(f"{m.label}: derivative norm vanishes on the ring")
    half = np.asarray(m.wirtinger((1.0 - eps / 2.0) * np.exp(1j * angles)).dnorm,
                      dtype=float)
    drift = float(np.max(np.abs(half - values) / np.maximum(values, 1e-300)))
    return BoundaryProfile(eps, n, angles, values, drift, drift <= 0.1)


def poisson_functional(m: HarmonicMap, zeta: complex, profile: BoundaryProfile) -> float:
    """(1/2 pi) integral of [dnorm(xi)/dnorm(zeta)] (1-|zeta|^2)/|xi - zeta|^2
    over the circle, with dnorm ring-sampled per the profile.

    Requires |zeta| <= 1 - 2 eps so the kernel stays separated from the
    sampling ring.
    """
    zeta = complex(zeta)
    if abs(zeta) > 1.0 - 2.0 * profile.eps:
        raise ParameterError("kernel point too close to the sampling ring")
    xi = np.exp(1j * profile.angles)
    kernel = (1.0 - abs(zeta) ** 2) / np.abs(xi - zeta) ** 2
    dz = float(m.wirtinger(zeta).dnorm)
    return float(np.mean(profile.values * kernel) / dz)


@dataclass(frozen=True)
class PoissonTrace:
    sup: float
    trace: tuple          # sup per ring level
    eps_levels: tuple
    stable: bool


def _profile_size(eps: float) -> int:
    """Ring resolution fine enough for peaked integrands: at least ~8 pi/eps."""
    need = max(2048, int(8.0 * math.pi / eps))
    return 1 << math.ceil(math.log2(need))


def poisson_scan(m: HarmonicMap, eps: float, n_rad: int = 5,
                 n_ang: int = 8) -> list:
    """Functional values over the interior grid reaching |zeta| = 1 - 2 eps;
    returns (zeta, value, eps, n) records for reporting."""
    profile = boundary_profile(m, eps=eps, n=_profile_size(eps))
    radii = np.linspace(0.0, (1.0 - 2.0 * eps) * (1.0 - 1e-9), n_rad)
    angles = np.linspace(0.0, 2.0 * math.pi, n_ang, endpoint=False)
    out = []
    for r in radii:
        for a in (angles if r > 0.0 else angles[:1]):
            zeta = complex(r * np.exp(1j * a))
            out.append((zeta, poisson_functional(m, zeta, profile),
                        profile.eps, profile.n))
    return out


def poisson_sup(m: HarmonicMap, n_rad: int = 5, n_ang: int = 8,
                eps_levels=(1e-2, 1e-3, 1e-4)) -> PoissonTrace:
    """Supremum of the functional over an interior grid, traced across a
    ladder of ring offsets; the grid extends to |zeta| = 1 - 2 eps as the
    ring approaches the circle.  Trace stability is the boundedness proxy.
    """
    trace = []
    for eps in eps_levels:
        vals = poisson_scan(m, eps, n_rad, n_ang)
        trace.append(max(v for _, v, _, _ in vals))
    drift = abs(trace[-1] - trace[-2]) / trace[-2] if len(trace) > 1 else 0.0
    return PoissonTrace(trace[-1], tuple(trace), tuple(eps_levels), drift < 0.05)


def poisson_csv(m: HarmonicMap, fileobj, n_rad: int = 5, n_ang: int = 8,
                eps_levels=(1e-2, 1e-3, 1e-4)) -> None:
    """Per-point CSV of the functional across the ring ladder."""
    import csv

    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(["zeta_re", "zeta_im", "functional", "eps", "n"])
    for eps in eps_levels:
        for zeta, val, e, n in poisson_scan(m, eps, n_rad, n_ang):
            writer.writerow([repr(float(zeta.real)), repr(float(zeta.imag)),
                             repr(float(val)), repr(float(e)), int(n)])


def poisson_trace_json(m: HarmonicMap, pt: PoissonTrace) -> str:
    return json.dumps(
        {
            "label": m.label,
            "sup": float(pt.sup),
            "trace": [float(t) for t in pt.trace],
            "eps": [float(e) for e in pt.eps_levels],
            "stable": bool(pt.stable),
        },
        sort_keys=True,
    )


def hardy_mean(obj, p: float, r: float, n: int = 2048) -> float:
    """p-th circle mean at radius r.

    For a harmonic map the integrand is the derivative norm (the quantity
    whose Hardy-space membership the boundedness results hinge on); any
    callable z -> value is averaged as |value|.
    """
    if p <= 0.0:
        raise ParameterError("Hardy mean needs p > 0")
    if not 0.0 < r < 1.0:
        raise ParameterError("Hardy mean needs r in (0, 1)")
    angles = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    z = r * np.exp(1j * angles)
    if isinstance(obj, HarmonicMap):
        vals = np.asarray(obj.wirtinger(z).dnorm, dtype=float)
    else:
        vals = np.abs(np.asarray(obj(z)))
    return float(np.mean(vals ** p) ** (1.0 / p))


# ---------------------------------------------------------------------------
# circle-image arc length versus connecting-diameter bracket


@dataclass(frozen=True)
class RatioBracket:
    lower: float          # arc length / upper distance bound
    upper: float          # arc length / lower distance bound (the chord)
    arc_length: float
    chord: float
    path_diam: float


def pommerenke_bracket(m: HarmonicMap, r: float, theta1: float, theta2: float,
                       rel_tol: float = 1e-9, n_path: int = 512) -> RatioBracket:
    """Bracket the ratio of the image arc length between w1 = f(r e^{i t1})
    and w2 = f(r e^{i t2}) to the connecting-arc diameter distance.

    The smaller parameter arc resolves the branch ambiguity.  The distance
    (infimum over connecting arcs of their diameter) is bracketed below by
    the chord |w1 - w2| and above by the diameter of the image of the
    straight segment between the preimages, which lies in the image of the
    closed disk of radius r by convexity of the preimage segment.
    """
    if not 0.0 < r < 1.0:
        raise ParameterError("bracket needs r in (0, 1)")
    z1 = r * np.exp(1j * theta1)
    z2 = r * np.exp(1j * theta2)
    w1 = complex(m.value(z1))
    w2 = complex(m.value(z2))
    dtheta = float(np.mod(theta2 - theta1 + math.pi, 2.0 * math.pi) - math.pi)

    def speed(t):
        z = r * np.exp(1j * (theta1 + t))
        return np.abs(1j * z * m.h.d1(z) - 1j * np.conjugate(z * m.g.d1(z)))

    if dtheta == 0.0:
        return RatioBracket(0.0, 0.0, 0.0, 0.0, 0.0)
    lo, hi = sorted((0.0, dtheta))
    arc = adaptive_quad(speed, lo, hi, rel_tol=rel_tol).value
    chord = abs(w1 - w2)
    ts = np.linspace(0.0, 1.0, n_path)
    seg = z1 + ts * (z2 - z1)
    from .geometry import set_diameter

    path_diam = set_diameter(m.value(seg))
    if chord == 0.0:
        return RatioBracket(0.0, 0.0, arc, 0.0, path_diam)
    return RatioBracket(arc / path_diam, arc / chord, arc, chord, path_diam)
