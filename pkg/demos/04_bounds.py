"""Extended-precision evaluation of the component and gap bounds.

Run: python demos/04_bounds.py   (SCHOTTKY_PRECISION changes the digit count)
"""

from fractions import Fraction

from schottky_forge.construction import (
    PaperParams,
    corollary_check,
    lemma22_bound,
    lemma23_bound,
    lemma24_factor,
    lemma25_both,
    psi_components,
    theorem_diameter_check,
)

p = PaperParams(2, Fraction(1, 10**11))
print("lemma 2.2:", lemma22_bound(p).value_str)
print("lemma 2.3:", lemma23_bound(p).value_str)
print("lemma 2.4 factor:", f"{lemma24_factor(p)[0]:.20g}")

# The Z-bound depends on which component bound feeds it.
both = lemma25_both(p)
for src, rep in both["reports"].items():
    print(f"Z via {src}: {rep.value_float:.6g} -> {rep.verdict}")
print("verdicts differ:", both["discrepancy"])

for preset in ("lambda2", "lambda5over3"):
    rep = corollary_check(preset)["reports"]["lemma22"]
    print(f"{preset} at its kappa threshold: {rep.value_float:.6g} {rep.verdict}")

print("diameter at kappa=0:", theorem_diameter_check(PaperParams(2, 0)).value_float)

# Measured gaps next to the lemma 2.2 bound; nothing is asserted here.
psi = psi_components(PaperParams(2, Fraction(1, 10**12)), 4)
print("largest measured gap:", float(psi.max_bounded_gap), " bound:", psi.bound.value_float)
