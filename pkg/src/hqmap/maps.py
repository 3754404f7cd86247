"""Harmonic mappings of the unit disk and their pointwise derivative data.

A planar harmonic mapping is written f = h + conj(g) with h and g analytic
on the unit disk D = {|z| < 1}.  Everything downstream (derivative norms,
Jacobian, dilatation, quasiconformality, renormalization) is computed from
the pair (h, g), so analytic parts carry exact closed-form first and second
derivatives; finite differences are never used for the inequality checks.

Derivative conventions (Wirtinger): f_z = (f_x - i f_y)/2 and
f_zb = (f_x + i f_y)/2, so that f_z = h'(z) and f_zb = conj(g'(z)).
The derivative-matrix norm is |f_z| + |f_zb|, the minimum stretch is
||f_z| - |f_zb||, and the Jacobian is |f_z|^2 - |f_zb|^2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

SAFE_SERIES_RADIUS = 0.999

# tolerance used when validating normalization flags at construction
_FLAG_TOL = 1e-9


class HqmapError(Exception):
    """Base class for all toolkit errors."""


class DiskDomainError(HqmapError, ValueError):
    """An argument lies on or outside the unit circle."""


class DegenerateMapError(HqmapError, ValueError):
    """A normalization or transform is singular (e.g. h'(0) = 0, |g'(0)| >= 1)."""


class ParameterError(HqmapError, ValueError):
    """A parameter is outside its admissible range."""


class SenseReversalError(HqmapError, ValueError):
    """The Jacobian is non-positive at a sampled point."""

    def __init__(self, message: str, witness: complex):
        super().__init__(f"{message} (witness z = {witness})")
        self.witness = witness


class SafeRadiusWarning(UserWarning):
    """A truncated power series was evaluated beyond the safe radius."""


def _check_in_disk(z) -> None:
    if np.any(np.abs(z) >= 1.0):
        bad = np.asarray(z, dtype=complex).ravel()
        bad = bad[np.abs(bad) >= 1.0][0] if np.ndim(z) else complex(z)
        raise DiskDomainError(f"point {bad} is not in the open unit disk")


# ---------------------------------------------------------------------------
# analytic parts


class AnalyticPart:
    """An analytic function on the disk with exact derivatives up to order two.

    Subclasses implement ``value``, ``d1`` and ``d2``; all three accept a
    complex scalar or a numpy array and broadcast elementwise.
    """

    kind = "abstract"

    def value(self, z):
        raise NotImplementedError

    def d1(self, z):
        raise NotImplementedError

    def d2(self, z):
        raise NotImplementedError


def _identity_forms():
    return (lambda z: z,
            lambda z: np.ones_like(np.asarray(z, dtype=complex)),
            lambda z: np.zeros_like(np.asarray(z, dtype=complex)))


def _koebe_forms():
    return (lambda z: z / (1.0 - z) ** 2,
            lambda z: (1.0 + z) / (1.0 - z) ** 3,
            lambda z: (4.0 + 2.0 * z) / (1.0 - z) ** 4)


def _halfplane_forms():
    return (lambda z: z / (1.0 - z),
            lambda z: 1.0 / (1.0 - z) ** 2,
            lambda z: 2.0 / (1.0 - z) ** 3)


_CATALOG = {
    "identity": _identity_forms(),
    "koebe": _koebe_forms(),
    "halfplane": _halfplane_forms(),
}


@dataclass(frozen=True)
class CatalogPart(AnalyticPart):
    """Closed-form catalog entry, optionally precomposed with a rotation.

    With unit-modulus ``rotation`` s the part evaluates conj(s) * base(s z),
    which keeps the value and first derivative of a normalized base at the
    origin unchanged.
    """

    name: str
    rotation: complex = 1.0 + 0.0j

    kind = "catalog"

    def __post_init__(self):
        if self.name not in _CATALOG:
            raise ParameterError(f"unknown catalog entry {self.name!r}")
        if abs(abs(complex(self.rotation)) - 1.0) > 1e-12:
            raise ParameterError("rotation factor must have modulus one")

    def value(self, z):
        v, _, _ = _CATALOG[self.name]
        s = complex(self.rotation)
        return np.conjugate(s) * v(s * np.asarray(z, dtype=complex)) if s != 1.0 else v(z)

    def d1(self, z):
        _, d, _ = _CATALOG[self.name]
        s = complex(self.rotation)
        return d(s * np.asarray(z, dtype=complex)) if s != 1.0 else d(z)

    def d2(self, z):
        _, _, d = _CATALOG[self.name]
        s = complex(self.rotation)
        return s * d(s * np.asarray(z, dtype=complex)) if s != 1.0 else d(z)


@dataclass(frozen=True)
class SeriesPart(AnalyticPart):
    """Truncated power series sum a_k z^k (coefficients ascending from z^0).

    Evaluation uses the Horner recurrence; derivatives are termwise and
    therefore exact for the truncation.  Beyond |z| = 0.999 a
    ``SafeRadiusWarning`` is attached instead of raising, because the
    boundary-limit studies deliberately evaluate near the circle.
    """

    coeffs: tuple

    kind = "series"

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ParameterError("a power series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @cached_property
    def _d1_coeffs(self):
        return tuple(k * c for k, c in enumerate(self.coeffs))[1:] or (0.0j,)

    @cached_property
    def _d2_coeffs(self):
        return tuple(k * (k - 1) * c for k, c in enumerate(self.coeffs))[2:] or (0.0j,)

    @staticmethod
    def _horner(coeffs, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc

    def _warn_radius(self, z):
        if np.max(np.abs(z)) > SAFE_SERIES_RADIUS * (1.0 + 1e-12):
            warnings.warn(
                f"series evaluated beyond the safe radius {SAFE_SERIES_RADIUS}",
                SafeRadiusWarning,
                stacklevel=3,
            )

    def value(self, z):
        self._warn_radius(z)
        return self._horner(self.coeffs, z)

    def d1(self, z):
        self._warn_radius(z)
        return self._horner(self._d1_coeffs, z)

    def d2(self, z):
        self._warn_radius(z)
        return self._horner(self._d2_coeffs, z)


@dataclass(frozen=True)
class ComboPart(AnalyticPart):
    """Affine combination sum w_i * p_i(z) + shift of analytic parts."""

    terms: tuple  # tuple of (complex weight, AnalyticPart)
    shift: complex = 0.0 + 0.0j

    kind = "combo"

    def __post_init__(self):
        object.__setattr__(
            self, "terms", tuple((complex(w), p) for w, p in self.terms)
        )
        object.__setattr__(self, "shift", complex(self.shift))

    def value(self, z):
        acc = np.asarray(z, dtype=complex) * 0.0 + self.shift
        for w, p in self.terms:
            acc = acc + w * p.value(z)
        return acc

    def d1(self, z):
        acc = np.zeros_like(np.asarray(z, dtype=complex))
        for w, p in self.terms:
            acc = acc + w * p.d1(z)
        return acc

    def d2(self, z):
        acc = np.zeros_like(np.asarray(z, dtype=complex))
        for w, p in self.terms:
            acc = acc + w * p.d2(z)
        return acc


@dataclass(frozen=True)
class MobiusPart(AnalyticPart):
    """Lazy composition (base(phi(z)) - base(zeta)) / scale with the disk
    automorphism phi(z) = (z + zeta)/(1 + conj(zeta) z).

    Derivatives come from the exact chain rule on phi, so second derivatives
    of renormalized compositions keep closed-form accuracy near the boundary.
    """

    base: AnalyticPart
    zeta: complex
    scale: complex

    kind = "composed"

    def __post_init__(self):
        object.__setattr__(self, "zeta", complex(self.zeta))
        object.__setattr__(self, "scale", complex(self.scale))
        if abs(self.zeta) >= 1.0:
            raise DiskDomainError("composition center must lie in the open disk")
        if self.scale == 0:
            raise DegenerateMapError("zero normalizing scale")

    def _phi(self, z):
        zc = np.conjugate(self.zeta)
        return (z + self.zeta) / (1.0 + zc * z)

    def _dphi(self, z):
        zc = np.conjugate(self.zeta)
        return (1.0 - abs(self.zeta) ** 2) / (1.0 + zc * z) ** 2

    def _ddphi(self, z):
        zc = np.conjugate(self.zeta)
        return -2.0 * zc * (1.0 - abs(self.zeta) ** 2) / (1.0 + zc * z) ** 3

    def value(self, z):
        z = np.asarray(z, dtype=complex)
        return (self.base.value(self._phi(z)) - self.base.value(self.zeta)) / self.scale

    def d1(self, z):
        z = np.asarray(z, dtype=complex)
        return self.base.d1(self._phi(z)) * self._dphi(z) / self.scale

    def d2(self, z):
        z = np.asarray(z, dtype=complex)
        w = self._phi(z)
        return (self.base.d2(w) * self._dphi(z) ** 2 + self.base.d1(w) * self._ddphi(z)) / self.scale


ZERO_PART = SeriesPart((0.0j,))


# ---------------------------------------------------------------------------
# Wirtinger data


@dataclass(frozen=True)
class WirtingerPair:
    """The pair (f_z, f_zb) at a point; fields may be scalars or arrays."""

    fz: object
    fzb: object

    @property
    def dnorm(self):
        """Matrix norm of the formal derivative, |f_z| + |f_zb|."""
        return np.abs(self.fz) + np.abs(self.fzb)

    @property
    def dmin(self):
        """Minimum stretch, | |f_z| - |f_zb| |."""
        return np.abs(np.abs(self.fz) - np.abs(self.fzb))

    @property
    def jacobian(self):
        return np.abs(self.fz) ** 2 - np.abs(self.fzb) ** 2

    @property
    def dilatation(self):
        """|f_zb| / |f_z|, with an infinite sentinel where f_z = 0."""
        fz = np.abs(self.fz)
        fzb = np.abs(self.fzb)
        if np.ndim(fz) == 0:
            return math.inf if fz == 0 else float(fzb) / float(fz)
        out = np.full(np.shape(fz), np.inf)
        np.divide(fzb, fz, out=out, where=fz != 0)
        return out


# ---------------------------------------------------------------------------
# harmonic maps


@dataclass(frozen=True)
class HarmonicMap:
    """Harmonic mapping f = h + conj(g) with optional corpus metadata flags.

    Recognized flags: ``SH`` (normalized sense-preserving univalent),
    ``SH0`` (additionally g'(0) = 0), ``analytic`` (g identically zero),
    ``starlike``, ``convex``, ``bounded``.  The SH/SH0 normalizations are
    verified at construction; geometric flags are trusted corpus metadata.
    """

    h: AnalyticPart
    g: AnalyticPart
    label: str
    flags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "flags", frozenset(self.flags))
        if "SH0" in self.flags and "SH" not in self.flags:
            object.__setattr__(self, "flags", self.flags | {"SH"})
        if "SH" in self.flags:
            if abs(complex(self.h.value(0.0 + 0.0j))) > _FLAG_TOL:
                raise ParameterError(f"{self.label}: SH flag requires h(0) = 0")
            if abs(complex(self.g.value(0.0 + 0.0j))) > _FLAG_TOL:
                raise ParameterError(f"{self.label}: SH flag requires g(0) = 0")
            if abs(complex(self.h.d1(0.0 + 0.0j)) - 1.0) > _FLAG_TOL:
                raise ParameterError(f"{self.label}: SH flag requires h'(0) = 1")
        if "SH0" in self.flags:
            if abs(complex(self.g.d1(0.0 + 0.0j))) > _FLAG_TOL:
                raise ParameterError(f"{self.label}: SH0 flag requires g'(0) = 0")

    # -- evaluation ---------------------------------------------------------

    def value(self, z):
        """f(z) = h(z) + conj(g(z)), for |z| < 1."""
        _check_in_disk(z)
        return self.h.value(z) + np.conjugate(self.g.value(z))

    def wirtinger(self, z) -> WirtingerPair:
        """Exact Wirtinger pair (h'(z), conj(g'(z)))."""
        _check_in_disk(z)
        return WirtingerPair(self.h.d1(z), np.conjugate(self.g.d1(z)))

    def dnorm(self, z):
        return self.wirtinger(z).dnorm

    def is_analytic(self) -> bool:
        return "analytic" in self.flags


def qc_constant(m: HarmonicMap, points) -> float:
    """Supremum over the sample of dnorm/dmin, i.e. the quasiconformality
    constant witnessed by the grid.  Nondecreasing under grid refinement.

    Raises ``SenseReversalError`` with a witness point if the Jacobian is
    not positive somewhere on the sample.
    """
    pts = np.asarray(points, dtype=complex).ravel()
    w = m.wirtinger(pts)
    jac = w.jacobian
    if np.any(jac <= 0.0):
        idx = int(np.argmin(jac))
        raise SenseReversalError(f"{m.label}: non-positive Jacobian", complex(pts[idx]))
    return float(np.max(w.dnorm / w.dmin))


def normalize(m: HarmonicMap) -> HarmonicMap:
    """Renormalize to the standard form with h(0) = g(0) = 0, h'(0) = 1 and
    g'(0) = 0 (translation, rescaling by h'(0), then the affine de-shear
    (F - conj(G'(0)) conj(F)) / (1 - |G'(0)|^2)).  Idempotent.
    """
    z0 = 0.0 + 0.0j
    h0 = complex(m.h.value(z0))
    g0 = complex(m.g.value(z0))
    hp0 = complex(m.h.d1(z0))
    if hp0 == 0:
        raise DegenerateMapError(f"{m.label}: h'(0) = 0 cannot be normalized")
    omega0 = complex(m.g.d1(z0)) / np.conjugate(hp0)
    if abs(omega0) >= 1.0:
        raise DegenerateMapError(
            f"{m.label}: |g'(0)/h'(0)| = {abs(omega0):.6g} >= 1 is degenerate"
        )
    big_h = ComboPart(((1.0 / hp0, m.h),), shift=-h0 / hp0)
    big_g = ComboPart(((1.0 / np.conjugate(hp0), m.g),), shift=-g0 / np.conjugate(hp0))
    b = np.conjugate(omega0)
    denom = 1.0 - abs(b) ** 2
    h_new = ComboPart(((1.0 / denom, big_h), (-b / denom, big_g)))
    g_new = ComboPart(((1.0 / denom, big_g), (-np.conjugate(b) / denom, big_h)))
    flags = {"SH", "SH0"}
    if "analytic" in m.flags and abs(omega0) == 0.0:
        flags.add("analytic")
    if "bounded" in m.flags:
        flags.add("bounded")
    return HarmonicMap(h_new, g_new, label=f"normalized({m.label})", flags=frozenset(flags))


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class Config:
    """Run parameters shared by the check suites.

    ``alpha`` is the order parameter used for genuinely harmonic maps (the
    sharp order of the normalized family is unknown, so harmonic reports are
    advisory); the analytic subfamily always uses the classical value 2.
    """

    alpha: float = 3.0
    qc_k: float = 1.0
    n_radial: int = 48
    n_angular: int = 64
    quad_abs_tol: float = 1e-12
    quad_rel_tol: float = 1e-9
    boundary_eps: float = 1e-4
    boundary_n: int = 4096
    slack: float = 1e-9
    r_cap: float = 0.999
    grid_level: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.alpha < 2.0:
            raise ParameterError("alpha must be >= 2")
        if self.qc_k < 1.0:
            raise ParameterError("K must be >= 1")
        if not 0.0 < self.boundary_eps <= 0.5:
            raise ParameterError("boundary offset must lie in (0, 0.5]")


def alpha_for(m: HarmonicMap, config: Config) -> float:
    """Order parameter: classical 2 for the analytic subfamily, configured
    value otherwise."""
    return 2.0 if m.is_analytic() else config.alpha
