"""Write the orbit picture and the five construction figures as SVG files.

Run: python demos/05_figures.py [output-dir]
"""

import sys
from fractions import Fraction
from pathlib import Path

from schottky_forge.construction import PaperParams
from schottky_forge.render import RenderOptions, figure_preset, render_scene, system_scene

out = Path(sys.argv[1] if len(sys.argv) > 1 else "figures")
out.mkdir(parents=True, exist_ok=True)
p = PaperParams(2, Fraction(1, 10**12))

# At kappa = 1e-12 the gaps are invisible, so widen them for display only.
scene = system_scene(p, 3, RenderOptions(exaggerate_gaps=2e10), "orbit to depth 3")
(out / "orbit_depth3.svg").write_text(render_scene(scene), encoding="utf-8")
for n in range(1, 6):
    (out / f"figure{n}.svg").write_text(render_scene(figure_preset(n, p)), encoding="utf-8")
print("wrote", sorted(f.name for f in out.glob("*.svg")))
