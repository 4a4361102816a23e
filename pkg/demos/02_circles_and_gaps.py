"""The four kappa-circles, their relations, axis crossings and the real-line gaps.

Run: python demos/02_circles_and_gaps.py
"""

from fractions import Fraction

from schottky_forge import AxisRay, axis_intersections, consecutive_gap, gaps_on_real_line, relation, separates
from schottky_forge.construction import PaperParams, build_circles, paper_tau

kappa = Fraction(1, 10**12)
sc1, sc2, sc3, sc4 = build_circles(PaperParams(2, kappa))
print("SC1..SC4:", sc1, sc2, sc3, sc4, sep="\n  ")

# Consecutive circles are 2 kappa apart; at kappa = 0 they touch.
print("SC1 vs SC2:", relation(sc1, sc2))
t1, t2, _, _ = build_circles(PaperParams(2, 0))
print("SC1 vs SC2 at kappa=0:", relation(t1, t2))

tau = paper_tau(PaperParams(2, kappa))
print("SC4 separates tau and -tau:", separates(sc4, tau, -tau))

for gap in gaps_on_real_line([sc1, sc2, sc3, sc4], (-6, 6)):
    print(f"gap ({float(gap.lo):+.12f}, {float(gap.hi):+.12f}) length {gap.length}")

# Axis crossings and the outer-endpoint gap measure between two nested circles.
outer, inner = build_circles(PaperParams(2, 0))[3], build_circles(PaperParams(2, Fraction(1, 10)))[3]
for k in AxisRay:
    print(k.name, axis_intersections(outer, k), axis_intersections(inner, k))
z = consecutive_gap(outer, inner)
print("Z =", z.value, "on ray", z.ray)
