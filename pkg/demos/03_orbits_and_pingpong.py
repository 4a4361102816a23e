"""Reduced words, circle orbits and the ping-pong check on the given circles.

Run: python demos/03_orbits_and_pingpong.py
"""

from fractions import Fraction

from schottky_forge.construction import PaperParams, build_system, paper_tau
from schottky_forge.engine import check_orbit_laminar, classical_check, enumerate_words, nested_family, orbit_circles

for L in range(1, 5):
    print(f"reduced words of length <= {L}: {len(enumerate_words(L))}")

system = build_system(PaperParams(2, Fraction(1, 10**12)))
for depth in range(4):
    entries = orbit_circles(system, depth)
    report = check_orbit_laminar(entries)
    print(f"depth {depth}: {len(entries)} circles, non-crossing={report.non_crossing}, unique parents={report.unique_parents}")

# The check passes for kappa > 0 and fails at the tangent limit kappa = 0.
for kappa in (Fraction(1, 10**12), Fraction(0)):
    verdict = classical_check(build_system(PaperParams(2, kappa)))
    print(f"kappa={kappa}: passed={verdict.passed}", [f.to_json() for f in verdict.failures])

# The nested chain around -tau and the outer-endpoint gaps between its members.
p = PaperParams(2, Fraction(1, 10**12))
fam = nested_family(system, 2, paper_tau(p), p.lam)
print("nested chain:", [str(e.word) or "(base)" for e in fam.entries], "chain ok:", fam.chain_ok)
for g in fam.gaps:
    print(f"  Z = {float(g.value):.6f} on ray {g.ray}")
