"""The built-in map corpus and its JSON serialization.

Corpus files hold a list of map descriptors:

    {"label": str,
     "h": {"kind": "catalog" | "series", "name"?: str, "coeffs"?: [[re, im], ...]},
     "g": {...},
     "flags": ["SH", "SH0", ...]}

Catalog parts may carry an optional unit-modulus "rotation": [re, im].
The built-in corpus covers both sides of the John dichotomy: the identity,
a K = 3 shear of it, and two bounded convex polynomials map onto John
disks; the Koebe map (slit plane) and the half-plane map do not.
"""

from __future__ import annotations

import json

import numpy as np

from .geometry import disk_grid
from .maps import (
    AnalyticPart,
    CatalogPart,
    HarmonicMap,
    ParameterError,
    SenseReversalError,
    SeriesPart,
)


def default_corpus() -> dict:
    """Label -> map for the shipped test family."""
    identity = CatalogPart("identity")
    zero = SeriesPart((0.0j,))
    maps = [
        HarmonicMap(identity, zero, "identity",
                    frozenset({"SH", "SH0", "analytic", "starlike", "convex", "bounded"})),
        HarmonicMap(CatalogPart("koebe"), zero, "koebe",
                    frozenset({"SH", "SH0", "analytic", "starlike"})),
        HarmonicMap(CatalogPart("halfplane"), zero, "halfplane",
                    frozenset({"SH", "SH0", "analytic", "convex"})),
        HarmonicMap(identity, SeriesPart((0.0j, 0.5 + 0.0j)), "shear-k3",
                    frozenset({"SH", "bounded"})),
        HarmonicMap(SeriesPart((0.0j, 1.0 + 0.0j, 0.125 + 0.0j)), zero, "convex-poly2",
                    frozenset({"SH", "SH0", "analytic", "convex", "bounded"})),
        HarmonicMap(SeriesPart((0.0j, 1.0 + 0.0j, 0.0j, 1.0 / 9.0 + 0.0j)), zero,
                    "convex-poly3",
                    frozenset({"SH", "SH0", "analytic", "convex", "bounded"})),
    ]
    return {m.label: m for m in maps}


# declared quasiconformality constants of the built-ins (the shear has
# constant dilatation modulus, everything else is conformal)
DEFAULT_QC = {"shear-k3": 3.0}


def map_qc(m: HarmonicMap, points=None) -> float:
    """Quasiconformality constant of a corpus map, from the declared table
    or a grid supremum."""
    from .maps import qc_constant

    if m.label in DEFAULT_QC:
        return DEFAULT_QC[m.label]
    pts = points if points is not None else disk_grid(24, 32).points
    return qc_constant(m, pts)


# ---------------------------------------------------------------------------
# serialization


def _c2pair(c: complex):
    return [float(c.real), float(c.imag)]


def part_to_json(p: AnalyticPart) -> dict:
    if isinstance(p, CatalogPart):
        out = {"kind": "catalog", "name": p.name}
        if complex(p.rotation) != 1.0 + 0.0j:
            out["rotation"] = _c2pair(complex(p.rotation))
        return out
    if isinstance(p, SeriesPart):
        return {"kind": "series", "coeffs": [_c2pair(c) for c in p.coeffs]}
    raise ParameterError(
        f"{type(p).__name__} parts are in-memory compositions and do not serialize"
    )


def part_from_json(d: dict) -> AnalyticPart:
    kind = d.get("kind")
    if kind == "catalog":
        rot = d.get("rotation")
        rotation = complex(rot[0], rot[1]) if rot else 1.0 + 0.0j
        return CatalogPart(d["name"], rotation=rotation)
    if kind == "series":
        return SeriesPart(tuple(complex(re, im) for re, im in d["coeffs"]))
    raise ParameterError(f"unknown part kind {kind!r}")


def map_to_json(m: HarmonicMap) -> dict:
    return {
        "label": m.label,
        "h": part_to_json(m.h),
        "g": part_to_json(m.g),
        "flags": sorted(m.flags),
    }


def map_from_json(d: dict) -> HarmonicMap:
    return HarmonicMap(
        part_from_json(d["h"]),
        part_from_json(d["g"]),
        d["label"],
        frozenset(d.get("flags", ())),
    )


def dump_corpus(maps: dict) -> str:
    docs = [map_to_json(maps[label]) for label in sorted(maps)]
    return json.dumps(docs, indent=2, sort_keys=True) + "\n"


def save_corpus(maps: dict, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(dump_corpus(maps))


def load_corpus(path) -> dict:
    with open(path) as fh:
        docs = json.load(fh)
    maps = [map_from_json(d) for d in docs]
    return {m.label: m for m in maps}


def validate_corpus(maps: dict, points=None) -> None:
    """Verify sense preservation of every corpus entry on an evaluation grid;
    a non-positive Jacobian is an input error with a witness point."""
    pts = points if points is not None else disk_grid(12, 16).points
    for label in sorted(maps):
        m = maps[label]
        jac = m.wirtinger(pts).jacobian
        if np.any(jac <= 0.0):
            idx = int(np.argmin(jac))
            raise SenseReversalError(
                f"corpus map {label!r} is sense-reversing",
                complex(np.asarray(pts).ravel()[idx]),
            )
