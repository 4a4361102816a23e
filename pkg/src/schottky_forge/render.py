"""Deterministic SVG scenes for circle systems, orbits and the construction figures.

Scenes are built in math coordinates (x along the real axis, y up) and
rendered to a standalone SVG 1.1 document.  Every coordinate is printed with
six decimals and every element carries a stable id, so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from xml.sax.saxutils import escape

from .algebraic import INF
from .construction import PaperParams, build_system, paper_tau
from .engine import CIRCLE_LABELS, classical_check, nested_family, orbit_circles
from .errors import GeometryError
from .geometry import Semicircle

DEPTH_COLORS = ("#c0392b", "#2e86c1", "#28b463", "#af7ac5", "#f39c12", "#16a085", "#7f8c8d", "#d35400", "#1abc9c", "#34495e", "#95a5a6")


@dataclass(frozen=True)
class Arc:
    id: str
    p: float
    q: float
    color: str = DEPTH_COLORS[0]
    dashed: bool = False
    cls: str = "arc"


@dataclass(frozen=True)
class VLine:
    id: str
    x: float
    color: str = DEPTH_COLORS[0]
    cls: str = "arc"


@dataclass(frozen=True)
class Segment:
    id: str
    x1: float
    y1: float
    x2: float
    y2: float
    color: str = "#000000"
    cls: str = "segment"


@dataclass(frozen=True)
class ComplementRegion:
    """Part of the viewport above the axis and outside the given half-disks."""

    id: str
    disks: tuple
    color: str = "#abebc6"


@dataclass(frozen=True)
class AnnulusRegion:
    """Doubly connected region between an outer and a nested inner half-disk."""

    id: str
    outer: tuple
    inner: tuple
    color: str = "#a3e4d7"


@dataclass(frozen=True)
class Marker:
    id: str
    x: float
    y: float = 0.0
    color: str = "#000000"


@dataclass(frozen=True)
class Label:
    id: str
    x: float
    y: float
    text: str


@dataclass
class Scene:
    viewport: tuple
    items: list = field(default_factory=list)
    title: str = ""
    width: int = 900
    stroke_width: float = 1.5
    imaginary_axis: bool = False


@dataclass
class RenderOptions:
    viewport: tuple | None = None
    width: int = 900
    stroke_width: float = 1.5
    colors: tuple = DEPTH_COLORS
    exaggerate_gaps: float | None = None


def _f(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


class _Frame:
    def __init__(self, scene: Scene):
        xmin, xmax, ymin, ymax = (float(v) for v in scene.viewport)
        if not (math.isfinite(xmin) and math.isfinite(xmax) and math.isfinite(ymin) and math.isfinite(ymax)):
            raise GeometryError("viewport bounds must be finite")
        if not (xmax > xmin and ymax > ymin):
            raise GeometryError(f"degenerate viewport {scene.viewport}")
        self.xmin, self.xmax, self.ymin, self.ymax = xmin, xmax, ymin, ymax
        self.scale = scene.width / (xmax - xmin)
        self.width = scene.width
        self.height = (ymax - ymin) * self.scale

    def x(self, v):
        return (v - self.xmin) * self.scale

    def y(self, v):
        return self.height - (v - self.ymin) * self.scale

    def r(self, v):
        return v * self.scale


def _arc_path(fr: _Frame, p: float, q: float) -> str:
    r = fr.r((q - p) / 2)
    return f"M {_f(fr.x(p))} {_f(fr.y(0))} A {_f(r)} {_f(r)} 0 0 1 {_f(fr.x(q))} {_f(fr.y(0))}"


def render_scene(scene: Scene) -> str:
    fr = _Frame(scene)
    sw = scene.stroke_width
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(fr.width)}" height="{_f(fr.height)}" '
        f'viewBox="0 0 {_f(fr.width)} {_f(fr.height)}">',
    ]
    if scene.title:
        out.append(f"<title>{escape(scene.title)}</title>")
    out.append(f'<rect id="background" x="0" y="0" width="{_f(fr.width)}" height="{_f(fr.height)}" fill="#ffffff"/>')
    for it in scene.items:
        if isinstance(it, ComplementRegion):
            d = [f"M {_f(fr.x(fr.xmin))} {_f(fr.y(0))}"]
            for p, q in sorted(it.disks):
                r = fr.r((q - p) / 2)
                d.append(f"L {_f(fr.x(p))} {_f(fr.y(0))} A {_f(r)} {_f(r)} 0 0 1 {_f(fr.x(q))} {_f(fr.y(0))}")
            d.append(f"L {_f(fr.x(fr.xmax))} {_f(fr.y(0))} L {_f(fr.x(fr.xmax))} {_f(fr.y(fr.ymax))} "
                     f"L {_f(fr.x(fr.xmin))} {_f(fr.y(fr.ymax))} Z")
            out.append(f'<path id="{it.id}" class="region" d="{" ".join(d)}" fill="{it.color}" fill-opacity="0.6" stroke="none"/>')
        elif isinstance(it, AnnulusRegion):
            (op, oq), (ip, iq) = it.outer, it.inner
            ro, ri = fr.r((oq - op) / 2), fr.r((iq - ip) / 2)
            d = (f"M {_f(fr.x(op))} {_f(fr.y(0))} A {_f(ro)} {_f(ro)} 0 0 1 {_f(fr.x(oq))} {_f(fr.y(0))} "
                 f"L {_f(fr.x(iq))} {_f(fr.y(0))} A {_f(ri)} {_f(ri)} 0 0 0 {_f(fr.x(ip))} {_f(fr.y(0))} Z")
            out.append(f'<path id="{it.id}" class="region" d="{d}" fill="{it.color}" fill-opacity="0.6" stroke="none"/>')
    out.append(f'<line id="axis-real" class="axis" x1="{_f(fr.x(fr.xmin))}" y1="{_f(fr.y(0))}" '
               f'x2="{_f(fr.x(fr.xmax))}" y2="{_f(fr.y(0))}" stroke="#000000" stroke-width="{_f(sw)}"/>')
    if scene.imaginary_axis and fr.xmin < 0 < fr.xmax:
        out.append(f'<line id="axis-imaginary" class="axis" x1="{_f(fr.x(0))}" y1="{_f(fr.y(0))}" '
                   f'x2="{_f(fr.x(0))}" y2="{_f(fr.y(fr.ymax))}" stroke="#000000" stroke-width="{_f(sw)}"/>')
    for it in scene.items:
        if isinstance(it, Arc):
            dash = ' stroke-dasharray="6 4"' if it.dashed else ""
            out.append(f'<path id="{it.id}" class="{it.cls}" d="{_arc_path(fr, it.p, it.q)}" fill="none" '
                       f'stroke="{it.color}" stroke-width="{_f(sw)}"{dash}/>')
        elif isinstance(it, VLine):
            out.append(f'<line id="{it.id}" class="{it.cls}" x1="{_f(fr.x(it.x))}" y1="{_f(fr.y(0))}" '
                       f'x2="{_f(fr.x(it.x))}" y2="{_f(fr.y(fr.ymax))}" stroke="{it.color}" stroke-width="{_f(sw)}"/>')
        elif isinstance(it, Segment):
            out.append(f'<line id="{it.id}" class="{it.cls}" x1="{_f(fr.x(it.x1))}" y1="{_f(fr.y(it.y1))}" '
                       f'x2="{_f(fr.x(it.x2))}" y2="{_f(fr.y(it.y2))}" stroke="{it.color}" stroke-width="{_f(2 * sw)}"/>')
    for it in scene.items:
        if isinstance(it, Marker):
            out.append(f'<circle id="{it.id}" class="marker" cx="{_f(fr.x(it.x))}" cy="{_f(fr.y(it.y))}" '
                       f'r="{_f(2.5 * sw)}" fill="{it.color}"/>')
    for it in scene.items:
        if isinstance(it, Label):
            out.append(f'<text id="{it.id}" class="label" x="{_f(fr.x(it.x))}" y="{_f(fr.y(it.y))}" '
                       f'font-family="sans-serif" font-size="14" text-anchor="middle">{escape(it.text)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# --- scene builders --------------------------------------------------------

def _display_span(C: Semicircle, shrink: Fraction):
    """Float endpoints, optionally pulled toward the center by ``shrink * radius``."""
    p, q = float(C.p), float(C.q)
    if shrink:
        c, r = (p + q) / 2, (q - p) / 2
        r *= 1 - float(shrink)
        p, q = c - r, c + r
    return p, q


def _shrink(params: PaperParams, factor) -> Fraction:
    # base radius 1 - kappa becomes 1 - factor*kappa, so base gaps 2 kappa grow to 2 factor kappa
    if not factor or factor <= 1:
        return Fraction(0)
    return (Fraction(factor) - 1) * params.kappa / (1 - params.kappa)


def default_viewport(params: PaperParams):
    w = float(params.lam) + 3.5
    return (-w, w, -0.4, 1.6)


def system_scene(params: PaperParams, depth: int = 0, options: RenderOptions | None = None, title: str = "") -> Scene:
    """Orbit arcs colored by depth over the shaded fundamental domain, with ±tau markers."""
    options = options or RenderOptions()
    system = build_system(params)
    shrink = _shrink(params, options.exaggerate_gaps)
    scene = Scene(options.viewport or default_viewport(params), [], title, options.width, options.stroke_width)
    if classical_check(system).passed:
        disks = tuple(_display_span(C, shrink) for C in system.circles)
        scene.items.append(ComplementRegion("fundamental-domain", disks))
    for e in orbit_circles(system, depth):
        color = options.colors[min(e.depth, len(options.colors) - 1)]
        ident = f"arc-{CIRCLE_LABELS[e.seed]}" + (f"-{str(e.word)}" if e.word.letters else "")
        ident = ident.replace("'", "i").replace(".", "_")
        if e.circle.q is INF:
            scene.items.append(VLine(ident, float(e.circle.p), color))
        else:
            p, q = _display_span(e.circle, shrink)
            scene.items.append(Arc(ident, p, q, color))
    tau = float(paper_tau(params))
    scene.items.append(Marker("fixed-plus-tau", tau, 0.0, "#1f618d"))
    scene.items.append(Marker("fixed-minus-tau", -tau, 0.0, "#1f618d"))
    if shrink:
        scene.items.append(Label("exaggeration-note", 0.0, scene.viewport[3] * 0.9,
                                 f"gap exaggeration x{options.exaggerate_gaps:g} (display only)"))
    return scene


def _auto_factor(params: PaperParams, options: RenderOptions):
    if options.exaggerate_gaps:
        return options.exaggerate_gaps
    if params.kappa and params.kappa < Fraction(1, 100):
        return float(Fraction(1, 20) / params.kappa)
    return None


def figure_preset(n: int, params: PaperParams, options: RenderOptions | None = None) -> Scene:
    """Scenes analogous to the five construction figures.

    1 classical rank-2 configuration (kappa = 1/5), 2 the four kappa-circles as
    hollow half-moons (arc plus diameter chord), 3 the fundamental domain with
    vertex labels v1..v8, 4 the tangent-circle construction with the tangency
    point P and the Y' markers, 5 the doubly connected region between two
    consecutive nested circles with the vertical segment G.
    """
    options = options or RenderOptions()
    if n == 1:
        p1 = params.with_kappa(Fraction(1, 5))
        scene = system_scene(p1, 0, RenderOptions(options.viewport, options.width, options.stroke_width, options.colors),
                             "classical rank-2 configuration")
        _label_circles(scene, build_system(p1).circles, 0)
        return scene
    if n == 2:
        factor = _auto_factor(params, options)
        opts = RenderOptions(options.viewport, options.width, options.stroke_width, options.colors, factor)
        scene = system_scene(params, 0, opts, "four kappa-circles as hollow half-moons")
        scene.items = [it for it in scene.items if not isinstance(it, ComplementRegion)]
        shrink = _shrink(params, factor)
        for i, C in enumerate(build_system(params).circles):
            p, q = _display_span(C, shrink)
            scene.items.append(Segment(f"chord-{CIRCLE_LABELS[i]}", p, 0.0, q, 0.0, DEPTH_COLORS[0], "chord"))
        _label_circles(scene, build_system(params).circles, shrink)
        return scene
    if n == 3:
        factor = _auto_factor(params, options)
        opts = RenderOptions(options.viewport, options.width, options.stroke_width, options.colors, factor)
        scene = system_scene(params, 0, opts, "fundamental domain")
        shrink = _shrink(params, factor)
        ends = sorted(x for C in build_system(params).circles for x in _display_span(C, shrink))
        for i, x in enumerate(ends, start=1):
            scene.items.append(Marker(f"vertex-v{i}", x, 0.0))
            scene.items.append(Label(f"label-v{i}", x, -0.15 - 0.1 * (i % 2), f"v{i}"))
        return scene
    if n in (4, 5):
        return _nested_pair_scene(n, params, options)
    raise ValueError(f"figure number must be 1..5, got {n}")


def _label_circles(scene: Scene, circles, shrink):
    for i, C in enumerate(circles):
        p, q = _display_span(C, shrink)
        scene.items.append(Label(f"label-{CIRCLE_LABELS[i]}", (p + q) / 2, (q - p) / 2 + 0.1, CIRCLE_LABELS[i]))


def _nested_pair(params: PaperParams):
    system = build_system(params)
    fam = nested_family(system, 1, paper_tau(params), params.lam)
    if len(fam.entries) < 2:
        raise GeometryError("nested family has fewer than two circles")
    return fam.entries[0].circle, fam.entries[1].circle


def _nested_pair_scene(n: int, params: PaperParams, options: RenderOptions) -> Scene:
    outer, inner = _nested_pair(params)
    po, qo = float(outer.p), float(outer.q)
    pi, qi = float(inner.p), float(inner.q)
    co, ro = (po + qo) / 2, (qo - po) / 2
    ci, ri = (pi + qi) / 2, (qi - pi) / 2
    vp = options.viewport or (co - 1.3 * ro, co + 1.3 * ro, -0.25 * ro, 1.25 * ro)
    scene = Scene(vp, [], "", options.width, options.stroke_width)
    dist = abs(co - ci)
    if n == 4:
        scene.title = "tangent-circle construction"
        scene.items += [Arc("arc-SCj", po, qo, DEPTH_COLORS[0]), Arc("arc-SCj1", pi, qi, DEPTH_COLORS[1])]
        rk = ro - dist
        scene.items.append(Arc("arc-SCkappa", ci - rk, ci + rk, "#555555", dashed=True))
        P = co + ro if ci >= co else co - ro
        scene.items.append(Marker("tangency-P", P, 0.0, "#e74c3c"))
        scene.items.append(Label("label-P", P, -0.12 * ro, "P"))
        for k, x in ((1, ci + rk), (3, ci - rk)):
            scene.items.append(Marker(f"Yprime-{k}", x, 0.0, "#1f618d"))
            scene.items.append(Label(f"label-Yprime-{k}", x, 0.08 * ro, f"Y'{k}"))
        scene.items.append(Marker("Yprime-2", ci, rk, "#1f618d"))
        scene.items.append(Label("label-Yprime-2", ci, rk + 0.06 * ro, "Y'2"))
        scene.items.append(Label("label-SCj", co, ro + 0.06 * ro, "SC^j"))
        scene.items.append(Label("label-SCj1", ci, ri + 0.06 * ro, "SC^(j+1)"))
        return scene
    scene.title = "doubly connected region V with segment G"
    scene.items.append(AnnulusRegion("region-V", (po, qo), (pi, qi)))
    scene.items += [Arc("arc-SCj", po, qo, DEPTH_COLORS[0]), Arc("arc-SCj1", pi, qi, DEPTH_COLORS[1])]
    top = math.sqrt(max(ro * ro - dist * dist, 0.0))
    scene.items.append(Segment("segment-G", ci, ri, ci, top, "#e74c3c", "segment-G"))
    scene.items.append(Label("label-G", ci + 0.05 * ro, (ri + top) / 2, "G"))
    scene.items.append(Label("label-V", co - 0.6 * ro, 0.3 * ro, "V"))
    scene.items.append(Marker("inner-center", ci, 0.0, DEPTH_COLORS[1]))
    scene.items.append(Label("label-SCj1", ci, -0.12 * ro, "SC^(j+1)"))
    return scene
