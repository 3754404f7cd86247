"""Command-line front end: corpus loading, check suites, report emission.

Commands: eval, radial, check, john, poisson, report.  Outputs are plain
CSV / JSON-lines / JSON documents a human reads after the fact; identical
manifests (corpus, config, seed) produce byte-identical files.  Exit codes:
0 all checks pass, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import johndisk, poisson, radial, suites
from .corpus import default_corpus, dump_corpus, load_corpus, validate_corpus
from .maps import Config, HqmapError

_REPORT_SUITES = ("analytic-classical", "geometry", "radial-growth", "harmonic-advisory")


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError as exc:
        raise HqmapError(f"cannot parse complex number {text!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hqmap",
        description="harmonic quasiconformal mapping toolkit",
    )
    parser.add_argument("--corpus", default=None, help="corpus JSON path (default: built-in)")
    parser.add_argument("--config", default=None, help="config JSON path")
    parser.add_argument("--alpha", type=float, default=None, help="order parameter for harmonic maps")
    parser.add_argument("--bigk", type=float, default=None, help="quasiconformality constant")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--grid-level", type=int, default=None, help="grid density level (0/1/2)")
    parser.add_argument("--eps", type=float, default=None, help="boundary offset")
    parser.add_argument("--tol", type=float, default=None, help="quadrature relative tolerance")
    parser.add_argument("--seed", type=int, default=None, help="seed for sampled checks")

    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a corpus map at a point")
    p_eval.add_argument("label")
    p_eval.add_argument("z", help="complex point, e.g. 0.5+0.1i")

    p_rad = sub.add_parser("radial", help="radial profile CSV")
    p_rad.add_argument("label")
    p_rad.add_argument("theta", type=float)
    p_rad.add_argument("radii", help="comma-separated increasing radii in (0,1)")

    p_check = sub.add_parser("check", help="run a named check suite")
    p_check.add_argument("suite", help="one of: " + ", ".join(sorted(suites.SUITES)))

    p_john = sub.add_parser("john", help="John-disk estimate for a corpus map")
    p_john.add_argument("label")

    p_poi = sub.add_parser("poisson", help="Poisson-functional sup trace for a corpus map")
    p_poi.add_argument("label")

    sub.add_parser("report", help="run everything and write files to --out")
    return parser


_CONFIG_KEYS = {
    "alpha": "alpha",
    "bigk": "qc_k",
    "eps": "boundary_eps",
    "tol": "quad_rel_tol",
    "grid_level": "grid_level",
    "seed": "seed",
}


def _load_config(args) -> Config:
    values = {}
    if args.config:
        with open(args.config) as fh:
            doc = json.load(fh)
        for key, field in _CONFIG_KEYS.items():
            if key in doc:
                values[field] = doc[key]
    for key, field in _CONFIG_KEYS.items():
        flag = getattr(args, key)
        if flag is not None:
            values[field] = flag
    return replace(Config(), **values)


def _get_map(corpus: dict, label: str):
    try:
        return corpus[label]
    except KeyError:
        raise HqmapError(f"unknown map label {label!r}; corpus has: "
                         + ", ".join(sorted(corpus)))


def _eps_levels(config: Config):
    return (1e-2, 3e-3, 1e-3) if config.grid_level <= 0 else (1e-2, 1e-3, 1e-4)


def _cmd_eval(args, corpus, config) -> int:
    m = _get_map(corpus, args.label)
    z = _parse_complex(args.z)
    f = complex(m.value(z))
    w = m.wirtinger(z)
    doc = {
        "label": m.label,
        "z": [z.real, z.imag],
        "f": [f.real, f.imag],
        "fz": [complex(w.fz).real, complex(w.fz).imag],
        "fzb": [complex(w.fzb).real, complex(w.fzb).imag],
        "dnorm": float(w.dnorm),
        "dmin": float(w.dmin),
        "jacobian": float(w.jacobian),
        "dilatation": float(w.dilatation),
    }
    print(json.dumps(doc, sort_keys=True))
    return 0


def _radial_csv(m, theta, radii, config) -> str:
    profile = radial.radial_profile(m, theta, radii,
                                    rel_tol=config.quad_rel_tol / 4)
    buf = io.StringIO()
    profile.to_csv(buf)
    return buf.getvalue()


def _cmd_radial(args, corpus, config) -> int:
    m = _get_map(corpus, args.label)
    try:
        radii = np.array([float(tok) for tok in args.radii.split(",") if tok])
    except ValueError as exc:
        raise HqmapError(f"bad radius list {args.radii!r}") from exc
    text = _radial_csv(m, args.theta, radii, config)
    sys.stdout.write(text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"radial_{m.label}.csv").write_text(text, newline="\n")
    return 0


def _cmd_check(args, corpus, config) -> int:
    if args.suite not in suites.SUITES:
        raise HqmapError(f"unknown suite {args.suite!r}; have: "
                         + ", ".join(sorted(suites.SUITES)))
    reports, advisory = suites.run_suite(args.suite, corpus, config)
    lines = "".join(r.to_json() + "\n" for r in reports)
    sys.stdout.write(lines)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"checks_{args.suite}.jsonl").write_text(lines, newline="\n")
    if advisory:
        return 0
    return 0 if all(r.passed for r in reports) else 1


def _cmd_john(args, corpus, config) -> int:
    m = _get_map(corpus, args.label)
    est = johndisk.john_estimate(m, config=config)
    text = est.to_json()
    print(text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"john_{m.label}.json").write_text(text + "\n", newline="\n")
    return 0


def _cmd_poisson(args, corpus, config) -> int:
    m = _get_map(corpus, args.label)
    trace = poisson.poisson_sup(m, eps_levels=_eps_levels(config))
    text = poisson.poisson_trace_json(m, trace)
    print(text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"poisson_{m.label}.json").write_text(text + "\n", newline="\n")
        with open(out / f"poisson_{m.label}.csv", "w", newline="\n") as fh:
            poisson.poisson_csv(m, fh, eps_levels=_eps_levels(config))
    return 0


def _cmd_report(args, corpus, config) -> int:
    if not args.out:
        raise HqmapError("report needs --out DIR")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {
        "corpus": args.corpus or "builtin",
        "alpha": config.alpha,
        "bigk": config.qc_k,
        "eps": config.boundary_eps,
        "tol": config.quad_rel_tol,
        "grid_level": config.grid_level,
        "seed": config.seed,
        "suites": list(_REPORT_SUITES),
    }
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", newline="\n")
    (out / "corpus.json").write_text(dump_corpus(corpus), newline="\n")

    ok = True
    for name in _REPORT_SUITES:
        reports, advisory = suites.run_suite(name, corpus, config)
        lines = "".join(r.to_json() + "\n" for r in reports)
        (out / f"checks_{name}.jsonl").write_text(lines, newline="\n")
        if not advisory:
            ok = ok and all(r.passed for r in reports)

    radii = 1.0 - np.geomspace(0.9, 1.0 - config.r_cap, 24)
    for label in sorted(corpus):
        m = corpus[label]
        (out / f"radial_{label}.csv").write_text(
            _radial_csv(m, 0.0, radii, config), newline="\n")
        est = johndisk.john_estimate(m, config=config)
        (out / f"john_{label}.json").write_text(est.to_json() + "\n", newline="\n")
        trace = poisson.poisson_sup(m, eps_levels=_eps_levels(config))
        (out / f"poisson_{label}.json").write_text(
            poisson.poisson_trace_json(m, trace) + "\n", newline="\n")
        with open(out / f"poisson_{label}.csv", "w", newline="\n") as fh:
            poisson.poisson_csv(m, fh, eps_levels=_eps_levels(config))
    return 0 if ok else 1


_COMMANDS = {
    "eval": _cmd_eval,
    "radial": _cmd_radial,
    "check": _cmd_check,
    "john": _cmd_john,
    "poisson": _cmd_poisson,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
        corpus = load_corpus(args.corpus) if args.corpus else default_corpus()
        validate_corpus(corpus)
        return _COMMANDS[args.command](args, corpus, config)
    except HqmapError as exc:
        print(f"hqmap: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"hqmap: input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
