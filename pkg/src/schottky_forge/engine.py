"""Rank-2 free group words, circle orbits, and the classical (ping-pong) checker.

Generators are ``A`` and ``B``; ``A'`` and ``B'`` are their inverses.  A word
``x1 x2 ... xn`` acts as the map ``x1 ∘ x2 ∘ ... ∘ xn``.
"""

from __future__ import annotations

import bisect
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .algebraic import INF, rational_str
from .errors import NotClassicalError, PairingError, PoleError
from .geometry import (
    GapInterval,
    Semicircle,
    check_non_crossing,
    consecutive_gap,
    gaps_on_real_line,
    image_under_map,
    interior_contains,
    nested_inside,
    relation,
    separates,
)
from .mobius import IDENTITY, MobiusMap, apply_boundary, boundary_derivative, compose, inverse

LETTERS = ("A", "A'", "B", "B'")
_ORDER = {x: i for i, x in enumerate(LETTERS)}
_INVERSE = {"A": "A'", "A'": "A", "B": "B'", "B'": "B"}


@dataclass(frozen=True, order=False)
class ReducedWord:
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple(self.letters)
        for x in letters:
            if x not in _ORDER:
                raise ValueError(f"unknown letter {x!r}")
        for x, y in zip(letters, letters[1:]):
            if _INVERSE[x] == y:
                raise ValueError(f"word is not reduced: {x}{y}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> "ReducedWord":
        text = text.strip()
        return cls(tuple(text.split("."))) if text else cls(())

    def __str__(self):
        return ".".join(self.letters)

    def __len__(self):
        return len(self.letters)

    def sort_key(self):
        return (len(self.letters), tuple(_ORDER[x] for x in self.letters))

    def __add__(self, other: "ReducedWord") -> "ReducedWord":
        return ReducedWord(self.letters + other.letters)

    def inverse(self) -> "ReducedWord":
        return ReducedWord(tuple(_INVERSE[x] for x in reversed(self.letters)))


def enumerate_words(max_length: int) -> list:
    """All reduced words of length 1..max_length, by length then letter order A < A' < B < B'."""
    words = []
    layer = [()]
    for _ in range(max(max_length, 0)):
        layer = [w + (x,) for w in layer for x in LETTERS if not w or _INVERSE[w[-1]] != x]
        words.extend(ReducedWord(w) for w in layer)
    return words


def _letter_maps(gens):
    A, B = gens
    return {"A": A, "A'": inverse(A), "B": B, "B'": inverse(B)}


def word_map(w: ReducedWord, gens) -> MobiusMap:
    maps = _letter_maps(gens)
    g = IDENTITY
    for x in w.letters:
        g = compose(g, maps[x])
    return g


def chainrule_derivative(w: ReducedWord, x, gens):
    """|(x1∘...∘xn)'(x)| as the product of single-letter derivatives along the orbit of x."""
    maps = _letter_maps(gens)
    total = Fraction(1)
    y = x
    letters = w.letters
    for i in range(len(letters) - 1, -1, -1):
        g = maps[letters[i]]
        try:
            total *= boundary_derivative(g, y)
        except PoleError as exc:
            suffix = ReducedWord(letters[i + 1:])
            raise PoleError(f"pole of {letters[i]} reached after applying suffix {str(suffix)!r}") from exc
        y = apply_boundary(g, y)
    return total


@dataclass(frozen=True)
class GeneratorPairing:
    """``map`` is meant to send ``source`` onto ``target`` (exterior of source onto interior of target)."""

    map: MobiusMap
    source: Semicircle
    target: Semicircle

    def holds(self) -> bool:
        return image_under_map(self.source, self.map) == self.target


CIRCLE_LABELS = ("SC1", "SC2", "SC3", "SC4")


@dataclass(frozen=True)
class SchottkySystem:
    """Four circles SC1..SC4 with pairings A: source -> target and B: source -> target."""

    circles: tuple
    pairings: tuple

    def __post_init__(self):
        object.__setattr__(self, "circles", tuple(self.circles))
        object.__setattr__(self, "pairings", tuple(self.pairings))
        if len(self.circles) != 4 or len(self.pairings) != 2:
            raise ValueError("a rank-2 system has four circles and two pairings")
        for pr in self.pairings:
            for C in (pr.source, pr.target):
                if C not in self.circles:
                    raise ValueError(f"pairing circle {C!r} is not one of the system circles")

    @property
    def generators(self):
        return (self.pairings[0].map, self.pairings[1].map)

    def label(self, C: Semicircle) -> str:
        return CIRCLE_LABELS[self.circles.index(C)]

    def source_index(self) -> dict:
        """Base-circle index a letter must not act on (it would just return a base circle)."""
        (pa, pb) = self.pairings
        idx = self.circles.index
        return {"A": idx(pa.source), "A'": idx(pa.target), "B": idx(pb.source), "B'": idx(pb.target)}

    def validate(self) -> "SchottkySystem":
        check_non_crossing(self.circles)
        for name, pr in zip("AB", self.pairings):
            image = image_under_map(pr.source, pr.map)
            if image != pr.target:
                raise PairingError(
                    f"{name} maps {self.label(pr.source)} to {image!r}, expected {self.label(pr.target)} = {pr.target!r}"
                )
        return self


@dataclass(frozen=True)
class OrbitEntry:
    word: ReducedWord
    circle: Semicircle
    depth: int
    seed: int = 0

    def sort_key(self):
        return self.word.sort_key() + (self.seed,)


def _expand(system: SchottkySystem, start: list, depth: int) -> list:
    maps = _letter_maps(system.generators)
    out = []
    frontier = start
    while frontier and frontier[0].depth < depth:
        nxt = []
        for e in frontier:
            first = e.word.letters[0] if e.word.letters else None
            for x in LETTERS:
                if first is not None and _INVERSE[first] == x:
                    continue
                circle = image_under_map(e.circle, maps[x])
                nxt.append(OrbitEntry(ReducedWord((x,) + e.word.letters), circle, e.depth + 1, e.seed))
        out.extend(nxt)
        frontier = nxt
    return out


def _expand_job(args):
    system, entry, depth = args
    return [entry] + _expand(system, [entry], depth)


def orbit_circles(system: SchottkySystem, depth: int, workers: int = 1) -> list:
    """Base circles plus every admissible image w(SC_i) with 1 <= |w| <= depth.

    Admissible: the last letter of ``w`` does not act on its own source circle.
    Order is (length, word, seed) and does not depend on ``workers``.
    """
    base = [OrbitEntry(ReducedWord(), C, 0, i) for i, C in enumerate(system.circles)]
    if depth <= 0:
        return base
    maps = _letter_maps(system.generators)
    src = system.source_index()
    roots = [
        OrbitEntry(ReducedWord((x,)), image_under_map(C, maps[x]), 1, i)
        for i, C in enumerate(system.circles)
        for x in LETTERS
        if src[x] != i
    ]
    jobs = [(system, r, depth) for r in roots]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_expand_job, jobs))
    else:
        parts = [_expand_job(j) for j in jobs]
    entries = base + [e for part in parts for e in part]
    entries.sort(key=OrbitEntry.sort_key)
    return entries


@dataclass(frozen=True)
class LaminarReport:
    non_crossing: bool
    unique_parents: bool
    problems: tuple = ()


def check_orbit_laminar(entries) -> LaminarReport:
    """Pairwise non-crossing, and each depth-(d+1) circle nested in exactly one depth-d circle."""
    problems = []
    non_crossing = True
    try:
        check_non_crossing([e.circle for e in entries])
    except Exception as exc:  # noqa: BLE001 - recorded as a finding
        non_crossing = False
        problems.append(str(exc))
    by_depth = {}
    for e in entries:
        by_depth.setdefault(e.depth, []).append(e)
    unique = True
    for d, layer in sorted(by_depth.items()):
        if d == 0:
            continue
        parents = sorted(by_depth.get(d - 1, []), key=lambda e: e.circle.span()[0])
        lows = [p.circle.span()[0] for p in parents]
        for left, right in zip(parents, parents[1:]):
            if not left.circle.span()[1] < right.circle.span()[0]:
                unique = False
                problems.append(f"depth-{d - 1} circles {left.word} and {right.word} are not disjoint")
        for e in layer:
            count = sum(1 for p in _candidates(parents, lows, e) if nested_inside(e.circle, p.circle))
            if count != 1:
                unique = False
                problems.append(f"{e.word} on {CIRCLE_LABELS[e.seed]} has {count} parents")
    return LaminarReport(non_crossing, unique, tuple(problems))


def _candidates(parents, lows, e):
    # parents at one depth are pairwise disjoint, so only the last one starting left of e can contain it
    lo = e.circle.span()[0]
    i = bisect.bisect_left(lows, lo)
    return parents[max(0, i - 1): i + 1]


@dataclass
class Failure:
    kind: str
    witness: dict

    def to_json(self):
        return {"kind": self.kind, "witness": self.witness}


@dataclass
class ClassicalVerdict:
    passed: bool
    failures: list = field(default_factory=list)


def _pt(x):
    return "inf" if x is INF else (rational_str(x) if isinstance(x, (int, Fraction)) else str(x))


def classical_check(system: SchottkySystem) -> ClassicalVerdict:
    """Ping-pong test on the given circles only.

    (a) closed circle intervals pairwise disjoint, (b) each generator maps its
    source onto its target, (c) the probe ∞ (exterior to every circle) lands
    strictly inside the target.
    """
    failures = []
    circles = system.circles
    for i, j in itertools.combinations(range(4), 2):
        rel = relation(circles[i], circles[j])
        if rel == "disjoint":
            continue
        names = [CIRCLE_LABELS[i], CIRCLE_LABELS[j]]
        if rel == "tangent":
            shared = [x for x in (circles[i].p, circles[i].q) if x in (circles[j].p, circles[j].q)]
            failures.append(Failure("tangency", {"circles": names, "point": _pt(shared[0])}))
        else:
            failures.append(Failure("disjointness", {"circles": names, "relation": rel}))
    for name, pr in zip("AB", system.pairings):
        image = image_under_map(pr.source, pr.map)
        if image != pr.target:
            failures.append(Failure("pairing", {
                "map": name,
                "source": system.label(pr.source),
                "target": system.label(pr.target),
                "image": [_pt(image.p), _pt(image.q)],
            }))
        probe = apply_boundary(pr.map, INF)
        if not interior_contains(pr.target, probe):
            failures.append(Failure("orientation", {
                "map": name,
                "probe": "inf",
                "image": _pt(probe),
                "target": system.label(pr.target),
            }))
    return ClassicalVerdict(not failures, failures)


@dataclass
class NestedFamily:
    entries: list
    chain_ok: bool
    findings: list
    gaps: list


def nested_family(system: SchottkySystem, depth: int, tau, lam) -> NestedFamily:
    """Orbit circles meeting (-tau, lam+3) exactly once and satisfying one of the filters.

    (i) separates tau and -tau; (iii) the inner endpoint lies in [tau, lam+3),
    (lam+1, tau) or (-tau, lam+1].  The result is ordered outermost first and
    checked as a chain: each circle nested in the previous one with -tau inside.
    """
    lo, hi = -tau, lam + 3
    picked = []
    for e in orbit_circles(system, depth):
        C = e.circle
        if C.is_line:
            continue
        inside = [x for x in (C.p, C.q) if lo < x < hi]
        if len(inside) != 1:
            continue
        x = inside[0]
        try:
            sep = separates(C, tau, -tau)
        except Exception:  # noqa: BLE001 - a circle through ±tau cannot separate them
            sep = False
        in_iii = (tau <= x < hi) or (lam + 1 < x < tau) or (lo < x <= lam + 1)
        if sep or in_iii:
            picked.append(e)
    picked.sort(key=lambda e: (-(e.circle.q - e.circle.p), e.sort_key()))
    findings = []
    if not picked:
        findings.append({"kind": "empty", "detail": "no orbit circle passes the filters"})
    chain_ok = bool(picked)
    for outer, inner in zip(picked, picked[1:]):
        ok = nested_inside(inner.circle, outer.circle) and interior_contains(inner.circle, -tau)
        if not ok:
            chain_ok = False
            findings.append({"kind": "not-a-chain", "outer": str(outer.word), "inner": str(inner.word)})
    gaps = []
    for outer, inner in zip(picked, picked[1:]):
        try:
            gaps.append(consecutive_gap(outer.circle, inner.circle))
        except Exception as exc:  # noqa: BLE001
            findings.append({"kind": "gap-undefined", "detail": str(exc)})
    return NestedFamily(picked, chain_ok, findings, gaps)


@dataclass(frozen=True)
class FundamentalDomain:
    """Complement in H^2 of the four closed half-disks; ∞ is an ordinary point."""

    circles: tuple
    window: tuple
    real_trace: tuple
    vertices: tuple
    infinity_ordinary: bool = True

    def contains(self, x, y) -> bool:
        """Exact test for a rational interior point (x, y), y > 0: outside every closed half-disk."""
        for C in self.circles:
            c, r = C.center, C.radius
            if (x - c) ** 2 + y * y <= r * r:
                return False
        return y > 0


def fundamental_domain(system: SchottkySystem, margin=1) -> FundamentalDomain:
    verdict = classical_check(system)
    if not verdict.passed:
        raise NotClassicalError(f"classical check failed: {[f.kind for f in verdict.failures]}")
    ends = sorted(x for C in system.circles for x in (C.p, C.q))
    window = (ends[0] - margin, ends[-1] + margin)
    trace = tuple(gaps_on_real_line(system.circles, window))
    return FundamentalDomain(tuple(system.circles), window, trace, tuple(ends))


__all__ = [
    "LETTERS",
    "ReducedWord",
    "enumerate_words",
    "word_map",
    "chainrule_derivative",
    "GeneratorPairing",
    "SchottkySystem",
    "OrbitEntry",
    "orbit_circles",
    "check_orbit_laminar",
    "LaminarReport",
    "ClassicalVerdict",
    "Failure",
    "classical_check",
    "NestedFamily",
    "nested_family",
    "FundamentalDomain",
    "fundamental_domain",
    "GapInterval",
]
