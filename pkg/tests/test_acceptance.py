"""Acceptance criteria 1-11, one printed PASS/FAIL line each.

Run directly (``python tests/test_acceptance.py``) for the table, or through
pytest, which prints the same table in the terminal summary.  Tolerances and
runtime limits are pinned in the checks below.
"""

import hashlib
import json
import os
import random
import subprocess
import sys
import time
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

import mpmath
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracle  # noqa: E402
from schottky_forge.algebraic import AlgebraicPoint  # noqa: E402
from schottky_forge.construction import (  # noqa: E402
    PRESETS,
    PaperParams,
    build_circles,
    build_generators,
    build_system,
    commutator_fixed_points_closed_form,
    commutator_map,
    corollary_check,
    lemma22_bound,
    lemma23_bound,
    lemma24_factor,
    lemma25_both,
    psi_components,
    quartic_residual,
    theorem_diameter_check,
)
from schottky_forge.engine import (  # noqa: E402
    ReducedWord,
    chainrule_derivative,
    check_orbit_laminar,
    classical_check,
    enumerate_words,
    orbit_circles,
    word_map,
)
from schottky_forge.geometry import image_under_map  # noqa: E402
from schottky_forge.jsonio import verdict_to_json  # noqa: E402
from schottky_forge.mobius import boundary_derivative, compose, fixed_points  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"
RESULTS = []

REL_TOL_7 = 1e-10
ABS_TOL_4 = mpmath.mpf(10) ** -30
ABS_TOL_8 = Decimal("1e-6")
DIAMETER_LITERAL = Decimal("0.225832")


def record(n, title, ok, detail, elapsed, limit):
    ok = ok and elapsed < limit
    line = f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail} [{elapsed:.2f}s < {limit}s]"
    RESULTS.append(line)
    return ok, line


def _timed(fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


def c1():
    checked = 0
    for lam in (Fraction(2), Fraction(5, 3)):
        for kappa in (Fraction(1, 10**12), Fraction(4, 10**12), Fraction(9, 10**12)):
            p = PaperParams(lam, kappa)
            sc1, sc2, sc3, sc4 = build_circles(p)
            h1, h2 = build_generators(p)
            i2, i1 = image_under_map(sc3, h1), image_under_map(sc4, h2)
            if not (i2.p == sc2.p and i2.q == sc2.q and i1.p == sc1.p and i1.q == sc1.q):
                return False, f"pairing broken at lam={lam}, kappa={kappa}"
            checked += 1
    return True, f"exact endpoint equality in {checked} configurations (tolerance 0)"


def c2():
    for lam in (Fraction(2), Fraction(5, 3)):
        for kappa in (Fraction(0), Fraction(1, 10**12), Fraction(4, 10**12), Fraction(9, 10**12)):
            p = PaperParams(lam, kappa)
            root = AlgebraicPoint.sqrt((lam + 2) ** 2 - (1 - kappa) ** 2)
            if fixed_points(build_generators(p)[1]) != (-root, root):
                return False, f"fixed points wrong at lam={lam}, kappa={kappa}"
    tau = AlgebraicPoint.sqrt(15)
    ok = fixed_points(build_generators(PaperParams(2, 0))[1]) == (-tau, tau)
    return ok, "±sqrt((lam+2)^2-(1-kappa)^2) exact; kappa=0, lam=2 gives ±sqrt(15)"


def c3():
    roots = [Fraction(-2), Fraction(-5, 3), Fraction(-1), Fraction(-2, 3)]
    res = [quartic_residual(x) for x in roots]
    return all(r == 0 for r in res), f"residuals {[str(r) for r in res]}"


def c4():
    D = commutator_map(PaperParams(2, 0))
    lo, hi = fixed_points(D)
    ok = D.rows == ((139, -492), (76, -269)) and D.det == 1
    ok = ok and lo == AlgebraicPoint(Fraction(51, 19), Fraction(-1, 19), 264) and hi == AlgebraicPoint(Fraction(51, 19), Fraction(1, 19), 264)
    rng = random.Random(4)
    cases = [PaperParams(pr.lam, pr.kappa_threshold) for pr in (PRESETS["lambda2"], PRESETS["lambda5over3"])]
    cases += [PaperParams(rng.choice([Fraction(2), Fraction(5, 3)]), Fraction(rng.randrange(1, 10**6), 10**12)) for _ in range(20)]
    worst = mpmath.mpf(0)
    for p in cases:
        cf = commutator_fixed_points_closed_form(p, 50)
        m_lo, m_hi = fixed_points(commutator_map(p))
        with mpmath.workdps(80):
            for c, m in ((cf.minus, m_lo), (cf.plus, m_hi)):
                worst = max(worst, abs(mpmath.mpf(str(c)) - mpmath.mpf(str(m.to_decimal(70)))))
    ok = ok and worst < ABS_TOL_4
    return ok, f"matrix and (51±sqrt264)/19 exact; closed form vs matrix max |diff| {mpmath.nstr(worst, 3)} < 1e-30 over {len(cases)} cases"


def c5():
    rng = random.Random(55)
    n = 1000
    for lam in (Fraction(2), Fraction(5, 3)):
        p = PaperParams(lam, Fraction(1, 10**12))
        sc1, sc2, sc3, sc4 = build_circles(p)
        h1, h2 = build_generators(p)
        for g, C in ((h1, sc3), (h2, sc4)):
            for _ in range(n):
                inside = C.p + Fraction(rng.randrange(1, 10**6), 10**6) * (C.q - C.p)
                if not boundary_derivative(g, inside) > 1:
                    return False, f"inside point {inside} not expanding"
                side = rng.choice((-1, 1))
                outside = (C.q if side > 0 else C.p) + side * Fraction(rng.randrange(1, 10**6), 10**4)
                if not boundary_derivative(g, outside) < 1:
                    return False, f"outside point {outside} not contracting"
            if not (boundary_derivative(g, C.p) == 1 and boundary_derivative(g, C.q) == 1):
                return False, "endpoint derivative not exactly 1"
    return True, f"{n} inside / {n} outside points per (map, lam), exact; endpoints exactly 1"


def c6():
    kappas = [Fraction(1, 10**12), Fraction(4, 10**12), Fraction(9, 10**12), Fraction(1, 10**6), Fraction(3, 10)]
    passes = all(classical_check(build_system(PaperParams(2, k))).passed for k in kappas)
    v0 = verdict_to_json(classical_check(build_system(PaperParams(2, 0))))
    v12 = verdict_to_json(classical_check(build_system(PaperParams(2, Fraction(1, 10**12)))))
    g0 = json.loads((GOLDEN / "classical_lambda2_kappa0.json").read_text())
    g12 = json.loads((GOLDEN / "classical_lambda2_kappa1e-12.json").read_text())
    points = sorted(f["witness"]["point"] for f in v0["failures"] if f["kind"] == "tangency")
    ok = passes and not v0["passed"] and points == ["-3/1", "3/1"] and v0 == g0 and v12 == g12
    return ok, (f"passes at {len(kappas)} kappa>0; kappa=0 tangency at {points}; goldens match "
                "(pass concerns this generating set only, see README)")


def c7():
    k = Fraction(1, 10**11)
    p = PaperParams(2, k)
    pairs = [
        ("lemma22", lemma22_bound(p).value, oracle.lemma22(2, k)),
        ("lemma23", lemma23_bound(p).value, oracle.lemma23(2, k)),
        ("lemma24 factor lam=2", lemma24_factor(p)[0], oracle.lemma24_factor(2)),
    ]
    both = lemma25_both(p)
    pairs.append(("Z via lemma22", both["reports"]["lemma22"].value, oracle.z_bound(2, k, "lemma22")))
    pairs.append(("Z via lemma23", both["reports"]["lemma23"].value, oracle.z_bound(2, k, "lemma23")))
    for preset in ("lambda2", "lambda5over3"):
        pr = PRESETS[preset]
        rep = corollary_check(preset)["reports"]["lemma22"]
        pairs.append((f"corollary {preset}", rep.value, oracle.z_bound(pr.lam, pr.kappa_threshold, "lemma22")))
    worst = 0.0
    with mpmath.workdps(oracle.DPS):
        for _, v, ref in pairs:
            worst = max(worst, float(abs(mpmath.mpf(str(v)) - ref) / abs(ref)))
    verdicts = (both["reports"]["lemma22"].verdict, both["reports"]["lemma23"].verdict, both["discrepancy"])
    ok = worst < REL_TOL_7 and verdicts == ("holds", "fails", True)
    ok = ok and all(corollary_check(n)["reports"]["lemma22"].verdict == "holds" for n in ("lambda2", "lambda5over3"))
    return ok, (f"{len(pairs)} values vs mpmath oracle, max rel err {worst:.1e} < {REL_TOL_7:g}; "
                f"Z 8.971e-2 holds, 3.588e-1 fails, discrepancy flagged")


def c8():
    rep = theorem_diameter_check(PaperParams(2, 0))
    ref = Decimal(str(oracle.diameter(2, 0)))
    ok = abs(rep.value - ref) < ABS_TOL_8 and rep.value > Decimal("0.2") and rep.verdict == "holds"
    literal_gap = abs(rep.value - DIAMETER_LITERAL)
    return ok, (f"|h*(-20)-h*(sqrt15)| = {rep.value:.7f} (oracle ±1e-6) > 1/5; "
                f"literal 0.225832 is {literal_gap:.1e} away (recorded as expected failure)")


def c9():
    counts = all(len([w for w in enumerate_words(ell) if len(w) == ell]) == 4 * 3 ** (ell - 1) for ell in range(1, 9))
    gens = build_generators(PaperParams(2, Fraction(1, 10**12)))
    words = [ReducedWord()] + enumerate_words(4)
    maps = {w: word_map(w, gens) for w in words}
    hom = all(
        maps[u + v] == compose(maps[u], maps[v])
        for u in words for v in words
        if len(u) + len(v) <= 4 and not (u.letters and v.letters and {u.letters[-1], v.letters[0]} in ({"A", "A'"}, {"B", "B'"}))
    )
    probes = [Fraction(i, 7) for i in range(-30, 31, 5)]
    chain = True
    for w in words:
        g = maps[w]
        for x in probes:
            try:
                lhs = chainrule_derivative(w, x, gens)
            except ZeroDivisionError:
                continue
            chain = chain and lhs == g.det / (g.c * x + g.d) ** 2
    entries = orbit_circles(build_system(PaperParams(2, Fraction(1, 10**12))), 5)
    lam = check_orbit_laminar(entries)
    ok = counts and hom and chain and lam.non_crossing and lam.unique_parents
    return ok, (f"counts 4*3^(l-1) l<=8 {counts}; homomorphism {hom}; chain rule {chain}; "
                f"depth-5 orbit {len(entries)} circles non-crossing {lam.non_crossing}, unique parents {lam.unique_parents}")


def _cli(args, cwd, env=None):
    r = subprocess.run([sys.executable, "-m", "schottky_forge", *args], capture_output=True, cwd=cwd, env=env)
    return r.returncode, r.stdout


def c10(tmp=None):
    import tempfile

    tmp = Path(tmp or tempfile.mkdtemp())
    runs = [
        ["construct"],
        ["check-classical", "--kappa", "0"],
        ["orbit", "--depth", "4"],
        ["bounds", "--lemma", "all", "--epsilon-source", "both", "--kappa", "1e-11"],
        ["psi", "--depth", "3"],
        ["diameter", "--kappa", "0"],
        ["render", "--depth", "2"],
    ] + [["render", "--figure", str(n)] for n in range(1, 6)]
    bad = []
    for args in runs:
        a = _cli(args, tmp)
        b = _cli(args, tmp)
        if a[0] != 0 or a != b:
            bad.append(" ".join(args))
    w1 = _cli(["orbit", "--depth", "5", "--workers", "1"], tmp)
    w2 = _cli(["orbit", "--depth", "5", "--workers", "2"], tmp)
    same_workers = w1 == w2 and w1[0] == 0
    digest = hashlib.sha256(w1[1]).hexdigest()[:12]
    return not bad and same_workers, (f"{len(runs)} commands byte-identical over two runs{'' if not bad else ' except ' + str(bad)}; "
                                      f"depth-5 orbit workers 1 vs 2 identical {same_workers} (sha256 {digest})")


def c11():
    p = PaperParams(2, Fraction(1, 10**12))
    rep = psi_components(p, 6)
    g = rep.gap_at_lam_plus_1
    ok = g is not None and g.contains(3) and g.length >= 2 * p.kappa
    mx = rep.max_bounded_gap
    return ok, (f"{len(rep.gaps)} depth-6 gaps meet the windows; gap at 3 has length {float(g.length):.4e} >= 2*kappa; "
                f"max bounded gap {float(mx):.3e} vs lemma22 bound {rep.bound.value_float:.3e} (reported, not asserted)")


CRITERIA = [
    (1, "pairing identity", c1, 1),
    (2, "fixed points of h**", c2, 1),
    (3, "quartic roots", c3, 1),
    (4, "commutator cross-check", c4, 5),
    (5, "contraction dichotomy", c5, 5),
    (6, "classical checker", c6, 1),
    (7, "bound evaluations", c7, 1),
    (8, "diameter check", c8, 1),
    (9, "orbit properties", c9, 60),
    (10, "determinism", c10, 60),
    (11, "empirical component measurement", c11, 60),
]


@pytest.mark.parametrize("n,title,fn,limit", CRITERIA, ids=[f"criterion{n}" for n, *_ in CRITERIA])
def test_criterion(n, title, fn, limit):
    ok, detail, elapsed = _timed(fn)
    ok, line = record(n, title, ok, detail, elapsed, limit)
    print(line)
    assert ok, line


@pytest.mark.xfail(strict=True, reason="literal 0.225832 disagrees with the exact value 0.2258268 by 5.2e-6")
def test_criterion8_literal_value():
    rep = theorem_diameter_check(PaperParams(2, 0))
    ok = abs(rep.value - DIAMETER_LITERAL) < ABS_TOL_8
    RESULTS.append(f"criterion  8 {'PASS' if ok else 'FAIL'}  diameter literal 0.225832 ± 1e-6: computed {rep.value:.7f} "
                   "(expected failure, see decisions ledger)")
    assert abs(rep.value - DIAMETER_LITERAL) < ABS_TOL_8


def _half_unit(text):
    mant = text.split("e")[0]
    digits = len(mant.split(".")[1]) if "." in mant else 0
    return Decimal(1).scaleb(-digits) / 2 * Decimal(text) / Decimal(mant)


ROUNDED = [
    ("lemma22 lam=2", "3.3928e-6", lambda: oracle.lemma22(2, Fraction(1, 10**11))),
    ("lemma23 lam=2", "1.3571e-5", lambda: oracle.lemma23(2, Fraction(1, 10**11))),
    ("lemma24 factor lam=2", "2.6440e4", lambda: oracle.lemma24_factor(2)),
    ("lemma24 factor lam=5/3", "2.0297e4", lambda: oracle.lemma24_factor(Fraction(5, 3))),
    ("Z lemma22", "8.971e-2", lambda: oracle.z_bound(2, Fraction(1, 10**11), "lemma22")),
    ("corollary lam=2", "5.674e-2", lambda: oracle.z_bound(2, Fraction(4, 10**12), "lemma22")),
]
ROUNDING_SLIPS = [
    ("Z lemma23", "3.589e-1", lambda: oracle.z_bound(2, Fraction(1, 10**11), "lemma23")),
    ("corollary lam=5/3", "5.752e-2", lambda: oracle.z_bound(Fraction(5, 3), Fraction(9, 10**12), "lemma22")),
    ("lemma22 lam=5/3", "2.8337e-6", lambda: oracle.lemma22(Fraction(5, 3), Fraction(9, 10**12))),
]


@pytest.mark.parametrize("name,text,ref", ROUNDED, ids=[r[0] for r in ROUNDED])
def test_rounded_reference_values(name, text, ref):
    value = Decimal(mpmath.nstr(ref(), 30))
    assert abs(value - Decimal(text)) <= _half_unit(text)


@pytest.mark.xfail(strict=True, reason="printed value is off by one unit in its last digit")
@pytest.mark.parametrize("name,text,ref", ROUNDING_SLIPS, ids=[r[0] for r in ROUNDING_SLIPS])
def test_rounded_reference_slips(name, text, ref):
    value = Decimal(mpmath.nstr(ref(), 30))
    assert abs(value - Decimal(text)) <= _half_unit(text)


def main():
    failed = 0
    for n, title, fn, limit in CRITERIA:
        ok, detail, elapsed = _timed(fn)
        ok, line = record(n, title, ok, detail, elapsed, limit)
        print(line, flush=True)
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    os.environ.setdefault("PYTHONHASHSEED", "0")
    sys.exit(main())
