"""Named check suites over a corpus: bundles of inequality predicates with
deterministic grids, used by the command-line runner and the tests.

Suite results are lists of CheckReports in canonical order (predicate name,
then witness), so repeated runs with the same manifest serialize to
byte-identical JSON lines.
"""

from __future__ import annotations

import math

import numpy as np

from . import bounds, geometry, johndisk, radial
from .corpus import map_qc
from .maps import Config, HarmonicMap
from .transforms import shear_qc


def _scale(config: Config) -> float:
    return 2.0 ** (config.grid_level - 1)


def suite_grid(config: Config) -> np.ndarray:
    n_r = max(8, round(config.n_radial * _scale(config)))
    n_a = max(8, round(config.n_angular * _scale(config)))
    return geometry.disk_grid(n_r, n_a, r_cap=config.r_cap).points


def _sorted_reports(reports) -> list:
    return sorted(
        reports,
        key=lambda r: (r.predicate, r.witness.real, r.witness.imag),
    )


def _inequality_family(m: HarmonicMap, alpha: float, qc_k: float,
                       config: Config, tag: str) -> list:
    pts = suite_grid(config)
    eps = config.boundary_eps
    out = [
        bounds.check_distortion(m, alpha, pts, slack=config.slack),
        bounds.check_two_point_growth(m, alpha, qc_k, slack=config.slack),
        bounds.check_derivative_value_bound(m, alpha, qc_k, pts, slack=config.slack),
        bounds.check_weighted_deriv_growth(m, alpha, slack=config.slack),
        bounds.check_boundary_dist_lower(m, qc_k, eps=eps, n=config.boundary_n,
                                         slack=config.slack),
        bounds.check_harnack(m, 0.9 + 0.0j, alpha, slack=config.slack),
        bounds.check_displacement(m, qc_k, alpha, 0.9 + 0.0j, slack=config.slack),
        bounds.check_ray_quotient(m, qc_k, alpha, rho0=0.25, r=0.9,
                                  slack=config.slack),
    ]
    if "bounded" in m.flags:
        fit = johndisk.decay_fit(m)
        if fit.hypothesis_holds():
            out.append(bounds.check_arc_image_diameter(
                m, qc_k, alpha, [0.9 + 0.0j, 0.7j], (fit.c, fit.delta),
                eps=eps, slack=config.slack))
    for r in out:
        r.predicate = f"{r.predicate}:{tag}"
    return out


def suite_analytic_classical(corpus: dict, config: Config) -> list:
    """Every inequality predicate on the analytic subfamily with the classical
    sharp order 2 and K = 1; these are theorems and must pass."""
    reports = []
    for label in sorted(corpus):
        m = corpus[label]
        if m.is_analytic():
            reports.extend(_inequality_family(m, 2.0, 1.0, config, label))
    return _sorted_reports(reports)


def suite_harmonic_advisory(corpus: dict, config: Config) -> list:
    """The same predicates on genuinely harmonic corpus maps with the
    configured order parameter; margins are advisory because the sharp
    order of the family is unknown.

    The grid-computed quasiconformality constant is only a lower bound for
    the true one, so an explicitly configured K overrides it upward.
    """
    reports = []
    for label in sorted(corpus):
        m = corpus[label]
        if not m.is_analytic():
            qc_k = max(map_qc(m), config.qc_k)
            reports.extend(_inequality_family(m, config.alpha, qc_k, config, label))
    return _sorted_reports(reports)


def suite_geometry(config: Config) -> list:
    """Stolz-domain angle bound, hyperbolic-metric properties, and
    boundary-distance convergence on the identity."""
    from .corpus import default_corpus

    reports = []
    n = max(60, round(160 * _scale(config)))
    for r in (0.5, 0.8, 0.95):
        sample = geometry.stolz_sample(r, n, n)
        pts = sample.points
        eta = np.abs(np.angle(pts))
        bound = 4.0 * math.pi * (r - np.abs(pts)) / (r * math.sqrt(15.0))
        margins = bound - eta
        hard = 3.0 * math.pi / math.sqrt(15.0) - eta
        idx = int(np.argmin(margins))
        reports.append(bounds.CheckReport(
            predicate=f"stolz_angle_bound:r={r:g}",
            alpha=0.0, qc_k=1.0,
            samples=int(pts.size),
            worst_margin=float(min(margins[idx], hard.min())),
            witness=complex(pts[idx]),
            passed=bool(margins[idx] >= 0.0 and hard.min() > 0.0),
            slack=0.0,
            notes=f"points={pts.size}",
        ))

    rng = np.random.default_rng(config.seed)
    zs = (np.sqrt(rng.uniform(0, 1, (10_000, 3))) * 0.95
          * np.exp(1j * rng.uniform(0, 2 * math.pi, (10_000, 3))))
    lam12 = geometry.hyp_dist(zs[:, 0], zs[:, 1])
    lam23 = geometry.hyp_dist(zs[:, 1], zs[:, 2])
    lam13 = geometry.hyp_dist(zs[:, 0], zs[:, 2])
    tri = lam12 + lam23 - lam13
    idx = int(np.argmin(tri))
    reports.append(bounds.CheckReport(
        predicate="hyp_triangle", alpha=0.0, qc_k=1.0, samples=len(zs),
        worst_margin=float(tri[idx]), witness=complex(zs[idx, 1]),
        passed=bool(tri[idx] >= -1e-12), slack=1e-12,
    ))

    a = 0.3 - 0.4j
    moved = geometry.mobius_shift(zs[:, :2], a)
    drift = np.abs(geometry.hyp_dist(moved[:, 0], moved[:, 1]) - lam12)
    idx = int(np.argmax(drift))
    reports.append(bounds.CheckReport(
        predicate="hyp_mobius_invariance", alpha=0.0, qc_k=1.0, samples=len(zs),
        worst_margin=float(1e-10 - drift[idx]), witness=complex(zs[idx, 0]),
        passed=bool(drift[idx] < 1e-10), slack=0.0,
    ))

    ident = default_corpus()["identity"]
    ws = np.linspace(0.0, 0.9, 19) * np.exp(0.37j)
    errs = np.array([
        abs(geometry.boundary_distance(ident, complex(w), eps=1e-4, n=4096).value
            - (1.0 - abs(w)))
        for w in ws
    ])
    idx = int(np.argmax(errs))
    reports.append(bounds.CheckReport(
        predicate="boundary_distance_identity", alpha=0.0, qc_k=1.0,
        samples=len(ws), worst_margin=float(1e-3 - errs[idx]),
        witness=complex(ws[idx]), passed=bool(errs[idx] <= 1e-3), slack=0.0,
    ))
    return _sorted_reports(reports)


def suite_radial_growth(corpus: dict, config: Config) -> list:
    """Growth-ratio boundedness for every corpus map, the classical
    starlike/convex radial bounds, and the shear sharpness identity."""
    reports = []
    for label in sorted(corpus):
        m = corpus[label]
        res = radial.growth_ratio(m, 0.0, config=config)
        margin = (10.0 * res.median_ratio - res.max_ratio) / (10.0 * res.median_ratio)
        reports.append(bounds.CheckReport(
            predicate=f"growth_bounded:{label}", alpha=0.0, qc_k=1.0,
            samples=len(res.profile.r), worst_margin=float(margin),
            witness=complex(res.profile.r[int(np.argmax(res.profile.ratio))]),
            passed=res.bounded, slack=0.0,
            notes=f"max={res.max_ratio!r} median={res.median_ratio!r}",
        ))
        for r in (0.3, 0.6, 0.9):
            chk = radial.classical_bounds(m, 0.0, r)
            for kind, ok, bound in (("starlike", chk.starlike_ok, chk.starlike_bound),
                                    ("convex", chk.convex_ok, chk.convex_bound)):
                if ok is None:
                    continue
                reports.append(bounds.CheckReport(
                    predicate=f"classical_{kind}:{label}", alpha=0.0, qc_k=1.0,
                    samples=1, worst_margin=float(bound - chk.ratio),
                    witness=complex(r), passed=bool(ok), slack=1e-9,
                ))
    from .maps import CatalogPart

    for big_k in (2.0, 3.0):
        sheared = shear_qc(CatalogPart("koebe"), big_k)
        for r in (0.5, 0.9):
            ell_s = radial.radial_length(sheared, 0.0, r).value
            ell_h = radial.radial_length(corpus["koebe"], 0.0, r).value
            margin = ell_s - 2.0 / (big_k + 1.0) * ell_h
            reports.append(bounds.CheckReport(
                predicate=f"shear_sharpness:K={big_k:g}", alpha=0.0, qc_k=big_k,
                samples=1, worst_margin=float(margin / max(1.0, ell_s)),
                witness=complex(r), passed=bool(margin >= -1e-9), slack=1e-9,
                notes=f"ell_shear={ell_s!r} ell_base={ell_h!r}",
            ))
    return _sorted_reports(reports)


def suite_none(corpus: dict, config: Config) -> list:
    return []


# name -> (builder, advisory)
SUITES = {
    "analytic-classical": (lambda c, cfg: suite_analytic_classical(c, cfg), False),
    "harmonic-advisory": (lambda c, cfg: suite_harmonic_advisory(c, cfg), True),
    "geometry": (lambda c, cfg: suite_geometry(cfg), False),
    "radial-growth": (lambda c, cfg: suite_radial_growth(c, cfg), False),
    "none": (suite_none, False),
}


def run_suite(name: str, corpus: dict, config: Config):
    """Returns (reports, advisory flag); unknown names raise KeyError."""
    builder, advisory = SUITES[name]
    return builder(corpus, config), advisory
