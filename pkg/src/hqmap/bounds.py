"""Inequality predicates with margin reports, plus the two closed-form
constants (the derivative-vs-value constant and the Harnack comparison
constant).

Every predicate evaluates its inequality on a deterministic sample and
reports the worst margin (RHS - LHS) / max(1, |RHS|) together with the
witness point attaining it.  Margins are relative wherever the two sides
blow up like (1 - |z|)^{-3} near the circle, so the reports stay readable.
A check passes when the worst margin is above minus the declared numerical
slack.

For the analytic subfamily (g identically zero) with order 2 and K = 1 all
predicates reduce to classical sharp distortion and growth theorems and
must pass; for genuinely harmonic maps the order parameter is configured
and the reports are advisory.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import geometry
from .maps import DegenerateMapError, HarmonicMap, ParameterError
from .quadrature import golden_max


@dataclass(eq=False)
class CheckReport:
    """Outcome of one inequality predicate over a sample."""

    predicate: str
    alpha: float
    qc_k: float
    samples: int
    worst_margin: float
    witness: complex
    passed: bool
    slack: float = 1e-9
    notes: str = ""

    def to_json(self) -> str:
        return json.dumps(
            {
                "predicate": self.predicate,
                "alpha": float(self.alpha),
                "K": float(self.qc_k),
                "samples": int(self.samples),
                "worst_margin": float(self.worst_margin),
                "witness": [float(self.witness.real), float(self.witness.imag)],
                "pass": bool(self.passed),
                "slack": float(self.slack),
                "notes": self.notes,
            },
            sort_keys=True,
        )


def rel_margin(lhs, rhs):
    """Margin of LHS <= RHS, normalized by max(1, |RHS|)."""
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    return (rhs - lhs) / np.maximum(1.0, np.abs(rhs))


def _report(predicate, alpha, qc_k, margins, witnesses, slack, notes="") -> CheckReport:
    margins = np.asarray(margins, dtype=float)
    idx = int(np.argmin(margins))
    worst = float(margins[idx])
    return CheckReport(
        predicate=predicate,
        alpha=alpha,
        qc_k=qc_k,
        samples=int(margins.size),
        worst_margin=worst,
        witness=complex(np.asarray(witnesses, dtype=complex).ravel()[idx]),
        passed=worst >= -slack,
        slack=slack,
        notes=notes,
    )


def _exp2alpha(t, alpha):
    """exp(2 alpha arctanh t) = ((1+t)/(1-t))^alpha, computed stably."""
    t = np.asarray(t, dtype=float)
    return ((1.0 + t) / (1.0 - t)) ** alpha


# ---------------------------------------------------------------------------
# derivative distortion


def check_distortion(m: HarmonicMap, alpha: float, points=None,
                     slack: float = 1e-9) -> CheckReport:
    """Two-sided distortion of the analytic part:
    (1-|z|)^{a-1}/(1+|z|)^{a+1} <= |h'(z)| <= (1+|z|)^{a-1}/(1-|z|)^{a+1}.
    """
    pts = np.asarray(points if points is not None else geometry.disk_grid().points,
                     dtype=complex).ravel()
    t = np.abs(pts)
    hp = np.abs(m.h.d1(pts))
    lower = (1.0 - t) ** (alpha - 1.0) / (1.0 + t) ** (alpha + 1.0)
    upper = (1.0 + t) ** (alpha - 1.0) / (1.0 - t) ** (alpha + 1.0)
    margins = np.minimum(rel_margin(hp, upper), rel_margin(lower, hp))
    return _report("deriv_distortion", alpha, 1.0, margins, pts, slack)


# ---------------------------------------------------------------------------
# two-point growth


def default_pairs() -> np.ndarray:
    """Deterministic (z0, z1) pairs, including the sharpness pairs through
    the origin along the real axis."""
    z0s = np.array([0.0, 0.3, 0.5j, -0.4, 0.2 - 0.3j, 0.7, 0.6j, -0.1 - 0.6j])
    z1s = np.array([0.5, -0.5, 0.8j, -0.7j, 0.3 + 0.4j, -0.2 + 0.2j, 0.9, -0.9])
    pairs = [(a, b) for a in z0s for b in z1s]
    pairs += [(0.0, 0.5), (0.0, -0.5), (0.0, 0.9), (0.0, -0.9), (0.3, 0.3)]
    return np.asarray(pairs, dtype=complex)


def check_two_point_growth(m: HarmonicMap, alpha: float, qc_k: float,
                           pairs=None, slack: float = 1e-9) -> CheckReport:
    """Two-sided bound on |f(z1)-f(z0)| / ((1-|z0|^2)|f_z(z0)|) between
    (1 - e^{-2 a lambda})/(a(1+K)) and K(e^{2 a lambda} - 1)/(a(1+K)),
    where lambda is the hyperbolic distance of the pair."""
    pairs = np.asarray(pairs if pairs is not None else default_pairs(), dtype=complex)
    z0 = pairs[:, 0]
    z1 = pairs[:, 1]
    fz0 = np.abs(m.h.d1(z0))
    if np.any(fz0 == 0):
        bad = z0[int(np.argmin(fz0))]
        raise DegenerateMapError(f"{m.label}: f_z vanishes at {bad}")
    q = np.abs(m.value(z1) - m.value(z0)) / ((1.0 - np.abs(z0) ** 2) * fz0)
    t = np.abs((z1 - z0) / (1.0 - np.conjugate(z0) * z1))
    big_e = _exp2alpha(t, alpha)
    upper = qc_k / (alpha * (1.0 + qc_k)) * (big_e - 1.0)
    lower = (1.0 - 1.0 / big_e) / (alpha * (1.0 + qc_k))
    margins = np.minimum(rel_margin(q, upper), rel_margin(lower, q))
    return _report("two_point_growth", alpha, qc_k, margins, z1, slack)


# ---------------------------------------------------------------------------
# derivative-vs-value bound with its explicit constant


def derivative_bound_constant(alpha: float, qc_k: float) -> float:
    """2 a K sup_{t in (0,1)} t (1+t)^{a-1} / ((1+t)^a - (1-t)^a), by grid
    scan plus golden-section polish.  Always at least K (it is at least
    a K >= 2 K, since the expression equals 1/2 at t = 1)."""
    if alpha < 2.0 or qc_k < 1.0:
        raise ParameterError("need alpha >= 2 and K >= 1")

    def phi(t):
        t = np.asarray(t, dtype=float)
        return t * (1.0 + t) ** (alpha - 1.0) / ((1.0 + t) ** alpha - (1.0 - t) ** alpha)

    ts = np.linspace(1e-6, 1.0, 2001)
    vals = phi(ts)
    i = int(np.argmax(vals))
    best = float(vals[i])
    lo = ts[max(i - 1, 0)]
    hi = ts[min(i + 1, len(ts) - 1)]
    _, polished = golden_max(lambda t: float(phi(t)), lo, hi)
    sup = max(best, polished)
    c = 2.0 * alpha * qc_k * sup
    if c < qc_k:
        raise ArithmeticError("scan produced a constant below K; refine the grid")
    return c


def check_derivative_value_bound(m: HarmonicMap, alpha: float, qc_k: float,
                                 points=None, slack: float = 1e-9) -> CheckReport:
    """|z| * dnorm(z) <= C |f(z)| / (1 - |z|) with the closed-form constant."""
    pts = np.asarray(points if points is not None else geometry.disk_grid().points,
                     dtype=complex).ravel()
    c = derivative_bound_constant(alpha, qc_k)
    w = m.wirtinger(pts)
    lhs = np.abs(pts) * w.dnorm
    rhs = c * np.abs(m.value(pts)) / (1.0 - np.abs(pts))
    margins = rel_margin(lhs, rhs)
    return _report("deriv_value_bound", alpha, qc_k, margins, pts, slack,
                   notes=f"C={c!r}")


# ---------------------------------------------------------------------------
# radial quasi-monotonicity of the weighted derivative norm


def default_triples(n_angles: int = 8, n_radii: int = 10) -> list:
    radii = np.linspace(0.0, 0.95, n_radii)
    angles = np.linspace(0.0, 2.0 * math.pi, n_angles, endpoint=False)
    triples = []
    for a in angles:
        xi = complex(np.exp(1j * a))
        for i in range(n_radii):
            for j in range(i, n_radii):
                triples.append((xi, float(radii[i]), float(radii[j])))
    return triples


def check_weighted_deriv_growth(m: HarmonicMap, alpha: float, triples=None,
                                slack: float = 1e-9) -> CheckReport:
    """(1-rho^2) dnorm(rho xi) <= e^{2 a lambda(rho, r)} (1-r^2) dnorm(r xi)
    for 0 <= rho <= r < 1 and |xi| = 1."""
    triples = triples if triples is not None else default_triples()
    xi = np.array([t[0] for t in triples], dtype=complex)
    rho = np.array([t[1] for t in triples], dtype=float)
    r = np.array([t[2] for t in triples], dtype=float)
    lhs = (1.0 - rho ** 2) * m.wirtinger(rho * xi).dnorm
    t = (r - rho) / (1.0 - rho * r)
    rhs = _exp2alpha(t, alpha) * (1.0 - r ** 2) * m.wirtinger(r * xi).dnorm
    margins = rel_margin(lhs, rhs)
    return _report("weighted_deriv_growth", alpha, 1.0, margins, rho * xi, slack)


# ---------------------------------------------------------------------------
# lower bound for the distance to the image boundary


def check_boundary_dist_lower(m: HarmonicMap, qc_k: float, points=None,
                              eps: float = 1e-4, n: int = 4096,
                              slack: float = 1e-9) -> CheckReport:
    """d(f(z), image boundary) >= dnorm(z) (1 - |z|^2) / (16 K), with the
    distance estimated from the image of the circle of radius 1 - eps."""
    pts = np.asarray(points if points is not None else geometry.disk_grid(24, 32).points,
                     dtype=complex).ravel()
    d = geometry.boundary_distances(m, m.value(pts), eps=eps, n=n)
    rhs = d
    lhs = m.wirtinger(pts).dnorm * (1.0 - np.abs(pts) ** 2) / (16.0 * qc_k)
    margins = rel_margin(lhs, rhs)
    return _report("boundary_dist_lower", 0.0, qc_k, margins, pts, slack,
                   notes=f"eps={eps!r} n={n}")


# ---------------------------------------------------------------------------
# Harnack-type comparison of derivative norms near the boundary


def harnack_constant(a1: float, a2: float, a3: float, alpha: float) -> float:
    """2 exp((1+alpha)(a3 + log((2 a2 - a1)/a1) / 2))."""
    if min(a1, a2, a3) < 0 or a1 <= 0 or a1 > a2:
        raise ParameterError("need 0 < a1 <= a2 and a3 >= 0")
    return 2.0 * math.exp((1.0 + alpha) * (a3 + 0.5 * math.log((2.0 * a2 - a1) / a1)))


def _harnack_box(z0: complex, a, n_r: int = 12, n_ang: int = 13) -> np.ndarray:
    """Qualifying test points: 1 - a2 d <= |z| <= 1 - a1 d within angular
    half-width a3 d of z0, where d = 1 - |z0|."""
    a1, a2, a3 = a
    delta = 1.0 - abs(z0)
    lo = max(1.0 - a2 * delta, 0.0)
    hi = 1.0 - a1 * delta
    if hi <= 0:
        raise ParameterError("box is empty: a1 too large for this z0")
    radii = np.linspace(lo, hi, n_r)
    angles = float(np.angle(z0)) + np.linspace(-a3 * delta, a3 * delta, n_ang)
    pts = (radii[:, None] * np.exp(1j * angles[None, :])).ravel()
    return pts[np.abs(pts) < 1.0]


def check_harnack(m: HarmonicMap, z0: complex, alpha: float,
                  a=(1.0, 2.0, math.pi), n_r: int = 12, n_ang: int = 13,
                  slack: float = 1e-9) -> CheckReport:
    """Two-sided comparison dnorm(z0)/M <= dnorm(z) <= M dnorm(z0) on the
    qualifying boundary box."""
    z0 = complex(z0)
    big_m = harnack_constant(*a, alpha)
    pts = _harnack_box(z0, a, n_r, n_ang)
    ratio = m.wirtinger(pts).dnorm / float(m.wirtinger(z0).dnorm)
    margins = np.minimum(rel_margin(ratio, big_m), rel_margin(1.0 / big_m, ratio))
    return _report("harnack_comparison", alpha, 1.0, margins, pts, slack,
                   notes=f"z0={z0!r} M={big_m!r}")


def check_displacement(m: HarmonicMap, qc_k: float, alpha: float, z0: complex,
                       a=(1.0, 2.0, math.pi), n_r: int = 12, n_ang: int = 13,
                       slack: float = 1e-9) -> CheckReport:
    """|f(z) - f(z0)| <= K/(a(1+K)) ((M/2)^{2a/(1+a)} - 1) (1-|z0|^2)|f_z(z0)|
    on the qualifying boundary box."""
    z0 = complex(z0)
    big_m = harnack_constant(*a, alpha)
    pts = _harnack_box(z0, a, n_r, n_ang)
    fz0 = abs(complex(m.h.d1(z0)))
    if fz0 == 0:
        raise DegenerateMapError(f"{m.label}: f_z vanishes at {z0}")
    factor = (big_m / 2.0) ** (2.0 * alpha / (1.0 + alpha)) - 1.0
    rhs = qc_k / (alpha * (1.0 + qc_k)) * factor * (1.0 - abs(z0) ** 2) * fz0
    lhs = np.abs(m.value(pts) - complex(m.value(z0)))
    margins = rel_margin(lhs, np.full_like(lhs, rhs))
    return _report("local_displacement", alpha, qc_k, margins, pts, slack,
                   notes=f"z0={z0!r} M={big_m!r}")


# ---------------------------------------------------------------------------
# difference quotient along a ray versus the running maximum


def check_ray_quotient(m: HarmonicMap, qc_k: float, alpha: float,
                       rho0: float, r: float, theta: float = 0.0,
                       n: int = 400, slack: float = 1e-9) -> CheckReport:
    """Empirical constant for |f(rho e^{i t})| / rho <= C m_f(r, t): reports
    sup over rho in (0, r] of the quotient divided by the running maximum.

    This is an existence check; the report carries the inner piece
    (rho <= rho0) and outer piece (rho0 <= rho <= r) of the supremum
    separately.  It passes whenever the constant is finite.
    """
    from .radial import ray_max

    if not 0.0 < rho0 <= r < 1.0:
        raise ParameterError("need 0 < rho0 <= r < 1")
    e = np.exp(1j * theta)
    rho = np.concatenate([
        np.geomspace(1e-6, rho0, n // 2),
        np.linspace(rho0, r, n - n // 2),
    ])
    quot = np.abs(m.value(rho * e)) / rho
    mf = ray_max(m, r, theta)
    c9 = float(quot.max()) / mf
    inner = float(quot[: n // 2].max()) / mf
    outer = float(quot[n // 2:].max()) / mf
    witness = rho[int(np.argmax(quot))] * e
    finite = math.isfinite(c9)
    return CheckReport(
        predicate="ray_quotient",
        alpha=alpha,
        qc_k=qc_k,
        samples=int(rho.size),
        worst_margin=0.0 if finite else -math.inf,
        witness=complex(witness),
        passed=finite,
        slack=slack,
        notes=f"C9={c9!r} inner={inner!r} outer={outer!r} rho0={rho0!r} r={r!r}",
    )


# ---------------------------------------------------------------------------
# diameter of boundary-arc images


def check_arc_image_diameter(m: HarmonicMap, qc_k: float, alpha: float,
                             a_points, decay, eps: float = 1e-4,
                             n_arc: int = 512, slack: float = 1e-9) -> CheckReport:
    """diam f((1-eps) I(a)) <= 32 K C d(f(a), image boundary), with
    C = 2 pi e^{(1+a) pi} + (2 C35 e^{(1+a) pi} + C35)/delta from the fitted
    decay pair (C35, delta).  Requires a bounded image and delta in (0, 1]."""
    c35, delta = decay
    if not 0.0 < delta <= 1.0 or c35 <= 0:
        raise ParameterError("decay hypothesis needs C > 0 and delta in (0, 1]")
    if "bounded" not in m.flags:
        raise ParameterError(f"{m.label}: arc-diameter check needs a bounded image")
    boost = math.exp((1.0 + alpha) * math.pi)
    c36 = 2.0 * math.pi * boost + (2.0 * c35 * boost + c35) / delta
    margins = []
    for a in np.atleast_1d(np.asarray(a_points, dtype=complex)):
        arc = geometry.boundary_arc(a, n_arc)
        img = m.value((1.0 - eps) * arc.points)
        diam = geometry.set_diameter(img)
        d = geometry.boundary_distance(m, complex(m.value(a)), eps=eps).value
        rhs = 32.0 * qc_k * c36 * d
        margins.append(float(rel_margin(diam, rhs)))
    a_arr = np.atleast_1d(np.asarray(a_points, dtype=complex))
    return _report("arc_image_diameter", alpha, qc_k, margins, a_arr, slack,
                   notes=f"C36={c36!r} C35={c35!r} delta={delta!r}")
