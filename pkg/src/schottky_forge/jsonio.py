"""JSON encodings for exact values, circles, orbit lines and verdicts.

Rationals are strings "p/q", radical values are objects with exact string
fields, and ∞ is the string "inf".  Decoding an encoded value gives back an
equal value whose re-encoding is byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebraic import INF, AlgebraicPoint, rational_str
from .engine import ClassicalVerdict, OrbitEntry, ReducedWord
from .geometry import GapInterval, Semicircle


def point_to_json(x):
    if x is INF:
        return "inf"
    if isinstance(x, AlgebraicPoint):
        if x.is_rational:
            return rational_str(x.base)
        if len(x.terms) == 1:
            return {"base": rational_str(x.base), "coeff": rational_str(x.coeff), "radicand": rational_str(x.radicand)}
        return {
            "base": rational_str(x.base),
            "terms": [{"coeff": rational_str(c), "radicand": rational_str(Fraction(r))} for r, c in x.terms],
        }
    return rational_str(Fraction(x))


def point_from_json(obj):
    if obj == "inf":
        return INF
    if isinstance(obj, str):
        return Fraction(obj)
    if "terms" in obj:
        value = AlgebraicPoint(obj["base"])
        for t in obj["terms"]:
            value = value + AlgebraicPoint(0, t["coeff"], t["radicand"])
        return value
    return AlgebraicPoint(obj["base"], obj["coeff"], obj["radicand"])


def algebraic_to_json(x):
    """Always the object form, even for rationals (coeff 0, radicand 0)."""
    if not isinstance(x, AlgebraicPoint):
        x = AlgebraicPoint(x)
    if x.is_rational:
        return {"base": rational_str(x.base), "coeff": "0/1", "radicand": "0/1"}
    return point_to_json(x)


def semicircle_to_json(C: Semicircle):
    d = {"p": point_to_json(C.p), "q": point_to_json(C.q)}
    if C.is_line:
        d["interior"] = "right" if C.interior_right else "left"
    return d


def semicircle_from_json(obj) -> Semicircle:
    return Semicircle(point_from_json(obj["p"]), point_from_json(obj["q"]), obj.get("interior", "right") == "right")


def gap_to_json(g: GapInterval):
    return {
        "lo": point_to_json(g.lo),
        "hi": point_to_json(g.hi),
        "length": point_to_json(g.length),
        "length_float": float(g.length),
    }


def orbit_entry_to_json(e: OrbitEntry):
    return {"word": str(e.word), "circle": semicircle_to_json(e.circle), "depth": e.depth, "seed": f"SC{e.seed + 1}"}


def orbit_entry_from_json(obj) -> OrbitEntry:
    return OrbitEntry(ReducedWord.parse(obj["word"]), semicircle_from_json(obj["circle"]), obj["depth"], int(obj["seed"][2:]) - 1)


def orbit_to_jsonl(entries) -> str:
    return "".join(dumps(orbit_entry_to_json(e), indent=None) + "\n" for e in entries)


def verdict_to_json(v: ClassicalVerdict):
    return {"passed": v.passed, "failures": [f.to_json() for f in v.failures]}


def dumps(obj, indent=2) -> str:
    """Deterministic JSON text (sorted keys, fixed separators)."""
    if indent is None:
        return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return json.dumps(obj, sort_keys=True, indent=indent, ensure_ascii=False)
