"""Hyperbolic metric, sampling regions, and boundary-distance estimation.

The inequality checks all run over deterministic discretizations of a few
disk regions: the boundary-anchored box B(z), the boundary arc I(a), a
Stolz-type convex hull, radii, circles and near-boundary rings.  Region
samples are immutable value objects; membership predicates use closed
regions so that corner extremes (where suprema tend to live) are included.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .maps import DiskDomainError, HarmonicMap, ParameterError

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# hyperbolic metric


def hyp_dist(z1, z2):
    """Poincare distance arctanh |(z1 - z2) / (1 - conj(z1) z2)| on the disk.

    Accepts scalars or arrays; raises ``DiskDomainError`` if an argument is
    on or outside the circle.
    """
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    if np.any(np.abs(z1) >= 1.0) or np.any(np.abs(z2) >= 1.0):
        raise DiskDomainError("hyperbolic distance needs both points inside the disk")
    t = np.abs((z1 - z2) / (1.0 - np.conjugate(z1) * z2))
    out = np.arctanh(t)
    return float(out) if out.ndim == 0 else out


def mobius_shift(z, a):
    """The disk automorphism (z + a) / (1 + conj(a) z)."""
    z = np.asarray(z, dtype=complex)
    return (z + a) / (1.0 + np.conjugate(a) * z)


def wrap_angle(t):
    """Reduce an angle difference to (-pi, pi]."""
    t = np.asarray(t, dtype=float)
    out = np.mod(t + math.pi, TWO_PI) - math.pi
    out = np.where(out == -math.pi, math.pi, out)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# region samples


@dataclass(eq=False)
class RegionSample:
    """A deterministic discretization of one of the toolkit's regions."""

    kind: str
    anchor: complex
    params: dict
    points: np.ndarray
    density: tuple
    note: str = ""

    def contains(self, z) -> np.ndarray:
        """Re-verify membership of z in the (closed) region being sampled."""
        z = np.asarray(z, dtype=complex)
        if self.kind == "box-B":
            return box_contains(self.anchor, z)
        if self.kind == "arc-I":
            a = self.anchor
            on_circle = np.abs(np.abs(z) - 1.0) <= 1e-12
            ang = np.abs(wrap_angle(np.angle(z) - np.angle(a)))
            return on_circle & (ang <= math.pi * (1.0 - abs(a)) + 1e-12)
        if self.kind == "stolz":
            r = self.params["r"]
            return stolz_contains(r, z) & (np.abs(z) > r / 4.0)
        if self.kind in ("circle", "boundary-ring"):
            return np.abs(np.abs(z) - self.params["radius"]) <= 1e-12
        if self.kind == "radius":
            ang_ok = np.abs(wrap_angle(np.angle(z) - self.params["theta"])) <= 1e-12
            return (np.abs(z) <= self.params["r"] + 1e-12) & (ang_ok | (np.abs(z) == 0))
        if self.kind == "disk-grid":
            return np.abs(z) < 1.0
        raise ParameterError(f"unknown region kind {self.kind!r}")

    def to_csv(self, fileobj) -> None:
        writer = csv.writer(fileobj, lineterminator="\n")
        writer.writerow(["kind", "anchor_re", "anchor_im", "point_re", "point_im"])
        for p in self.points:
            writer.writerow([
                self.kind,
                repr(float(self.anchor.real)), repr(float(self.anchor.imag)),
                repr(float(p.real)), repr(float(p.imag)),
            ])


def _geom_radii(r_lo: float, r_hi: float, n: int) -> np.ndarray:
    """Radii from r_lo to r_hi with 1 - r geometrically clustered toward 1."""
    if n == 1 or r_hi == r_lo:
        return np.array([r_lo])
    return 1.0 - np.geomspace(1.0 - r_lo, 1.0 - r_hi, n)


def box_contains(z: complex, zeta) -> np.ndarray:
    """Membership in B(z) = {w : |z| <= |w| < 1, |arg z - arg w| <= pi(1-|z|)}."""
    zeta = np.asarray(zeta, dtype=complex)
    rad_ok = (np.abs(zeta) >= abs(z) - 1e-12) & (np.abs(zeta) < 1.0)
    if z == 0:
        return rad_ok
    ang = np.abs(wrap_angle(np.angle(zeta) - np.angle(complex(z))))
    return rad_ok & (ang <= math.pi * (1.0 - abs(z)) + 1e-12)


def boundary_box(z: complex, n_radial: int = 24, n_angular: int = 25,
                 reach: float = 0.999) -> RegionSample:
    """Tensor sample of the boundary-anchored box B(z).

    The radial coordinate is geometrically clustered toward the circle and
    stops at ``reach``; corner extremes are included exactly.  For z = 0 the
    angular condition is vacuous and a full annulus grid is returned with a
    note.
    """
    z = complex(z)
    r0 = abs(z)
    if r0 >= reach:
        raise ParameterError("box anchor must satisfy |z| < reach")
    note = ""
    if z == 0:
        half_width = math.pi
        base_angle = 0.0
        note = "anchor at origin: angular condition is the full circle"
    else:
        half_width = math.pi * (1.0 - r0)
        base_angle = float(np.angle(z))
    radii = _geom_radii(r0, reach, n_radial)
    angles = base_angle + np.linspace(-half_width, half_width, n_angular)
    pts = (radii[:, None] * np.exp(1j * angles[None, :])).ravel()
    return RegionSample(
        kind="box-B",
        anchor=z,
        params={"reach": reach, "half_width": float(half_width)},
        points=pts,
        density=(n_radial, n_angular),
        note=note,
    )


def boundary_arc(a: complex, n: int = 512) -> RegionSample:
    """Unit-circle arc I(a) = {|arg z - arg a| <= pi (1 - |a|)}."""
    a = complex(a)
    if not 0.0 <= abs(a) < 1.0:
        raise DiskDomainError("arc anchor must lie in the disk")
    half_width = math.pi * (1.0 - abs(a))
    base = float(np.angle(a)) if a != 0 else 0.0
    angles = base + np.linspace(-half_width, half_width, n)
    return RegionSample(
        kind="arc-I",
        anchor=a,
        params={"half_width": half_width},
        points=np.exp(1j * angles),
        density=(n,),
    )


def disk_grid(n_radial: int = 48, n_angular: int = 64, r_cap: float = 0.999,
              include_zero: bool = True) -> RegionSample:
    """Polar grid over the disk, radially clustered toward the cap."""
    radii = np.minimum(1.0 - np.geomspace(1.0, 1.0 - r_cap, n_radial), r_cap)
    angles = np.linspace(0.0, TWO_PI, n_angular, endpoint=False)
    pts = (radii[:, None] * np.exp(1j * angles[None, :])).ravel()
    pts = pts[np.abs(pts) > 0]
    if include_zero:
        pts = np.concatenate(([0.0 + 0.0j], pts))
    return RegionSample(
        kind="disk-grid",
        anchor=0.0 + 0.0j,
        params={"r_cap": r_cap},
        points=pts,
        density=(n_radial, n_angular),
    )


def circle_points(radius: float, n: int = 256, kind: str = "circle") -> RegionSample:
    angles = np.linspace(0.0, TWO_PI, n, endpoint=False)
    return RegionSample(
        kind=kind,
        anchor=0.0 + 0.0j,
        params={"radius": radius},
        points=radius * np.exp(1j * angles),
        density=(n,),
    )


def boundary_ring(eps: float, n: int) -> RegionSample:
    if not 0.0 < eps < 1.0:
        raise ParameterError("ring offset must lie in (0, 1)")
    return circle_points(1.0 - eps, n, kind="boundary-ring")


def radius_points(theta: float, r: float, n: int = 256) -> RegionSample:
    rho = np.linspace(0.0, r, n)
    return RegionSample(
        kind="radius",
        anchor=r * np.exp(1j * theta),
        params={"theta": theta, "r": r},
        points=rho * np.exp(1j * theta),
        density=(n,),
    )


# ---------------------------------------------------------------------------
# Stolz-type domain: convex hull of the point r and the disk of radius r/4


def stolz_contains(r: float, z) -> np.ndarray:
    """Membership in the closed convex hull of {r} and the closed disk of
    radius r/4 centered at the origin.

    A point p belongs to the hull iff p is in the disk or the ray from the
    apex r through p meets the disk; the nearest ray point is a closed-form
    projection.
    """
    c = r / 4.0
    p = np.asarray(z, dtype=complex)
    scalar = p.ndim == 0
    p = np.atleast_1d(p)
    inside = np.abs(p) <= c + 1e-15
    d = p - r
    nd = np.abs(d)
    apex = nd == 0.0
    with np.errstate(invalid="ignore", divide="ignore"):
        u = -np.real(p * np.conjugate(d)) / np.where(nd == 0, 1.0, nd) ** 2
    u = np.maximum(u, 0.0)
    dist = np.abs(p + u * d)
    on_ray = dist <= c + 1e-15
    out = inside | apex | on_ray
    return bool(out[0]) if scalar else out


@dataclass(frozen=True)
class StolzCheck:
    in_hull: bool
    in_wedge: bool  # in the hull but outside the closed core disk
    bound_ok: bool
    bound_value: float


def stolz_angle_check(r: float, z: complex) -> StolzCheck:
    """Report membership in the Stolz hull minus its core disk, and whether
    the angle of z = rho e^{i eta} obeys |eta| <= 4 pi (r - rho) / (r sqrt 15).
    """
    if not 0.0 < r < 1.0:
        raise ParameterError("Stolz parameter r must lie in (0, 1)")
    z = complex(z)
    rho = abs(z)
    in_hull = bool(stolz_contains(r, z))
    in_wedge = in_hull and rho > r / 4.0
    eta = abs(float(np.angle(z))) if z != 0 else 0.0
    bound = 4.0 * math.pi * (r - rho) / (r * math.sqrt(15.0))
    return StolzCheck(in_hull, in_wedge, eta <= bound, bound)


def stolz_sample(r: float, n_rho: int = 160, n_eta: int = 160) -> RegionSample:
    """Deterministic lattice over the hull minus the core disk."""
    if not 0.0 < r < 1.0:
        raise ParameterError("Stolz parameter r must lie in (0, 1)")
    eta_max = math.acos(0.25) + 1e-3  # tangent-line angle plus margin
    rho = np.linspace(r / 4.0 * (1.0 + 1e-9), r, n_rho)
    eta = np.linspace(-eta_max, eta_max, n_eta)
    pts = (rho[:, None] * np.exp(1j * eta[None, :])).ravel()
    keep = stolz_contains(r, pts) & (np.abs(pts) > r / 4.0)
    return RegionSample(
        kind="stolz",
        anchor=complex(r),
        params={"r": r},
        points=pts[keep],
        density=(n_rho, n_eta),
    )


# ---------------------------------------------------------------------------
# Euclidean distance to the image boundary


@dataclass(frozen=True)
class DistanceEstimate:
    value: float
    drift: float
    converged: bool


@lru_cache(maxsize=128)
def _ring_image(m: HarmonicMap, eps: float, n: int) -> np.ndarray:
    ring = boundary_ring(eps, n)
    vals = m.value(ring.points)
    vals.setflags(write=False)
    return vals


def ring_image(m: HarmonicMap, eps: float, n: int) -> np.ndarray:
    """Image of the circle of radius 1 - eps at n uniform angles (cached)."""
    return _ring_image(m, float(eps), int(n))


def boundary_distances(m: HarmonicMap, ws, eps: float = 1e-4, n: int = 4096) -> np.ndarray:
    """Vector of min-over-samples distances from each w to the ring image."""
    img = ring_image(m, eps, n)
    ws = np.atleast_1d(np.asarray(ws, dtype=complex))
    out = np.empty(ws.shape, dtype=float)
    chunk = max(1, (1 << 22) // max(n, 1))  # keep the distance matrix small
    for i in range(0, len(ws), chunk):
        block = ws[i:i + chunk]
        out[i:i + chunk] = np.min(np.abs(block[:, None] - img[None, :]), axis=1)
    return out


def boundary_distance(m: HarmonicMap, w: complex, eps: float = 1e-4,
                      n: int = 4096) -> DistanceEstimate:
    """Distance from w to the image of the circle of radius 1 - eps,
    estimated as a min over n samples; converges to the distance to the
    image boundary as eps -> 0, n -> infinity for maps extending
    continuously to the closed disk.

    The returned estimate compares the n- and 2n-sample values and flags
    convergence when they agree to 5 percent.
    """
    if n < 64:
        raise ParameterError("boundary distance needs at least 64 samples")
    v1 = float(np.min(np.abs(ring_image(m, eps, n) - w)))
    v2 = float(np.min(np.abs(ring_image(m, eps, 2 * n) - w)))
    drift = abs(v1 - v2)
    return DistanceEstimate(v2, drift, drift <= 0.05 * max(v2, 1e-300))


# ---------------------------------------------------------------------------
# diameters


def convex_hull(points: np.ndarray) -> np.ndarray:
    """Andrew's monotone chain on complex points; returns hull vertices."""
    pts = np.unique(np.asarray(points, dtype=complex))
    order = np.lexsort((pts.imag, pts.real))
    pts = pts[order]
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                a = out[-1] - out[-2]
                b = p - out[-2]
                if a.real * b.imag - a.imag * b.real > 0:
                    break
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


def set_diameter(points: np.ndarray) -> float:
    """Max pairwise distance, with a convex-hull prefilter before the
    quadratic scan."""
    pts = np.asarray(points, dtype=complex).ravel()
    if len(pts) < 2:
        return 0.0
    if len(pts) > 64:
        pts = convex_hull(pts)
        if len(pts) < 2:
            return 0.0
    diff = np.abs(pts[:, None] - pts[None, :])
    return float(diff.max())
