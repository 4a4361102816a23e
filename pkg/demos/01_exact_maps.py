"""Exact Möbius maps on the boundary line, their fixed points and derivatives.

Run: python demos/01_exact_maps.py
"""

from fractions import Fraction

from schottky_forge import (
    AlgebraicPoint,
    apply_boundary,
    boundary_derivative,
    classify,
    fixed_points,
    inverse,
    isometric_circle,
    to_decimal,
)
from schottky_forge.construction import PaperParams, build_generators, commutator_map

# At lambda = 2 and kappa = 0 the two generators have small integer matrices.
h1, h2 = build_generators(PaperParams(2, 0))
print("h*  =", h1.rows)
print("h** =", h2.rows)
print("class of h*:", classify(h1).value)

# Boundary points are exact: rationals stay rationals, the pole goes to infinity.
for x in (Fraction(0), Fraction(-2), AlgebraicPoint.sqrt(15)):
    print(f"h*({x}) = {apply_boundary(h1, x)}")

# Fixed points come back as exact square-root values.
lo, hi = fixed_points(h2)
print("fixed points of h**:", lo, hi, "  tau^2 =", hi * hi)

# |g'| equals 1 exactly on the isometric circle and nowhere else.
C = isometric_circle(h1)
print("isometric circle of h*:", C, " derivative at its endpoints:",
      boundary_derivative(h1, C.p), boundary_derivative(h1, C.q))
print("inverse pairs it with", isometric_circle(inverse(h1)))

# The commutator D = h* h** h* (h**)^-1 and its fixed points (51 ± 2 sqrt 66)/19.
D = commutator_map(PaperParams(2, 0))
zlo, zhi = fixed_points(D)
print("D =", [[str(v) for v in row] for row in D.rows], " fixed points", zlo, zhi)
print("decimal:", to_decimal(zlo, 30), to_decimal(zhi, 30))
