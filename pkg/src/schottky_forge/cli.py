"""``schottky-forge`` command line: JSON configuration, reports and SVG output.

Exit status: 0 when the computation ran (a failed verdict is still 0),
1 for usage or configuration errors, 2 for numeric errors raised during the
computation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebraic import rational_str
from .construction import (
    PRESETS,
    DEFAULT_KAPPA,
    PaperParams,
    build_system,
    centers_outside_unit_interval,
    commutator_fixed_points_closed_form,
    commutator_map,
    corollary_check,
    derived_constants,
    lemma22_bound,
    lemma23_bound,
    lemma24_bound,
    lemma25_both,
    lemma25_pipeline,
    psi_components,
    quartic_roots,
    theorem_diameter_check,
    working_precision,
)
from .engine import CIRCLE_LABELS, classical_check, orbit_circles
from .errors import ConfigError, ConfigValueError, MalformedConfigError, SchottkyError, UnknownKeyError
from .jsonio import dumps, gap_to_json, orbit_to_jsonl, point_to_json, semicircle_to_json, verdict_to_json
from .mobius import classify, fixed_points
from .render import RenderOptions, figure_preset, render_scene, system_scene

SCHEMA = "1"
COMMANDS = ("construct", "check-classical", "orbit", "bounds", "psi", "diameter", "render")
PRESET_NAMES = tuple(PRESETS) + ("custom",)
EPSILON_CHOICES = ("lemma22", "lemma23", "both")
LEMMA_CHOICES = ("2", "3", "4", "5", "all")
MAX_DEPTH = 10

_TOP_KEYS = {"preset", "lambda", "kappa", "depth", "epsilon_source", "lemma", "epsilon", "figure", "workers", "out", "svg", "render"}
_RENDER_KEYS = {"viewport", "width", "stroke_width", "colors", "exaggerate_gaps"}


@dataclass
class RunConfig:
    preset: str = "lambda2"
    lam: Fraction | None = None
    kappa: Fraction | None = None
    depth: int = 6
    epsilon_source: str = "lemma22"
    lemma: str = "all"
    epsilon: Fraction | None = None
    figure: int | None = None
    workers: int = 1
    out: str | None = None
    svg: str | None = None
    viewport: tuple | None = None
    width: int = 900
    stroke_width: float = 1.5
    colors: tuple | None = None
    exaggerate_gaps: float | None = None

    @property
    def params(self) -> PaperParams:
        if self.preset == "custom":
            return PaperParams(self.lam, self.kappa)
        lam = PRESETS[self.preset].lam if self.lam is None else self.lam
        return PaperParams(lam, DEFAULT_KAPPA if self.kappa is None else self.kappa)

    def render_options(self) -> RenderOptions:
        opts = RenderOptions(self.viewport, self.width, self.stroke_width, exaggerate_gaps=self.exaggerate_gaps)
        if self.colors:
            opts.colors = tuple(self.colors)
        return opts

    def to_json(self):
        """Fully resolved configuration (output paths excluded so reports do not depend on them)."""
        p = self.params
        return {
            "preset": self.preset,
            "lambda": rational_str(p.lam),
            "kappa": rational_str(p.kappa),
            "depth": self.depth,
            "epsilon_source": self.epsilon_source,
            "lemma": self.lemma,
            "epsilon": None if self.epsilon is None else rational_str(self.epsilon),
            "figure": self.figure,
            "precision": working_precision(),
            "render": {
                "viewport": None if self.viewport is None else list(self.viewport),
                "width": self.width,
                "stroke_width": self.stroke_width,
                "colors": None if self.colors is None else list(self.colors),
                "exaggerate_gaps": self.exaggerate_gaps,
            },
        }


def _exact(value, path: str) -> Fraction:
    if isinstance(value, bool):
        raise ConfigValueError(f"expected a number, got {value!r}", path)
    if isinstance(value, float):
        # JSON floats lose the decimal text; repr gives the shortest round-trip form
        value = repr(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigValueError(f"not an exact decimal or fraction: {value!r}", path) from None


def _int(value, path: str, lo: int, hi: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigValueError(f"expected an integer, got {value!r}", path)
    if value < lo or (hi is not None and value > hi):
        raise ConfigValueError(f"{value} outside [{lo}, {hi if hi is not None else 'inf'}]", path)
    return value


def _positive(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
        raise ConfigValueError(f"expected a positive number, got {value!r}", path)
    return float(value)


def config_from_dict(data) -> RunConfig:
    if not isinstance(data, dict):
        raise MalformedConfigError("configuration must be a JSON object", "$")
    for key in sorted(data):
        if key not in _TOP_KEYS:
            raise UnknownKeyError(f"unknown key {key!r}", f"$.{key}")
    cfg = RunConfig()
    preset = data.get("preset", "lambda2")
    if preset not in PRESET_NAMES:
        raise ConfigValueError(f"preset must be one of {PRESET_NAMES}, got {preset!r}", "$.preset")
    cfg.preset = preset
    if "lambda" in data:
        cfg.lam = _exact(data["lambda"], "$.lambda")
    if "kappa" in data:
        cfg.kappa = _exact(data["kappa"], "$.kappa")
    if preset == "custom":
        if cfg.lam is None or cfg.kappa is None:
            missing = "$.lambda" if cfg.lam is None else "$.kappa"
            raise ConfigValueError("custom preset needs lambda and kappa", missing)
        if not 0 < cfg.kappa < 1:
            raise ConfigValueError(f"kappa must lie in (0, 1), got {rational_str(cfg.kappa)}", "$.kappa")
    elif cfg.lam is not None and cfg.lam != PRESETS[preset].lam:
        raise ConfigValueError("lambda is fixed by the preset; use preset 'custom'", "$.lambda")
    if cfg.lam is not None and not cfg.lam > 1:
        raise ConfigValueError(f"lambda must exceed 1, got {rational_str(cfg.lam)}", "$.lambda")
    if cfg.kappa is not None and not 0 <= cfg.kappa < 1:
        raise ConfigValueError(f"kappa must lie in [0, 1), got {rational_str(cfg.kappa)}", "$.kappa")
    if "depth" in data:
        cfg.depth = _int(data["depth"], "$.depth", 0, MAX_DEPTH)
    if "epsilon_source" in data:
        if data["epsilon_source"] not in EPSILON_CHOICES:
            raise ConfigValueError(f"epsilon_source must be one of {EPSILON_CHOICES}", "$.epsilon_source")
        cfg.epsilon_source = data["epsilon_source"]
    if "lemma" in data:
        lemma = str(data["lemma"]).removeprefix("2.")
        if lemma not in LEMMA_CHOICES:
            raise ConfigValueError(f"lemma must be one of {LEMMA_CHOICES}", "$.lemma")
        cfg.lemma = lemma
    if "epsilon" in data:
        cfg.epsilon = _exact(data["epsilon"], "$.epsilon")
        if not cfg.epsilon > 0:
            raise ConfigValueError("epsilon must be positive", "$.epsilon")
    if data.get("figure") is not None:
        cfg.figure = _int(data["figure"], "$.figure", 1, 5)
    if "workers" in data:
        cfg.workers = _int(data["workers"], "$.workers", 1, 64)
    for key in ("out", "svg"):
        if data.get(key) is not None:
            if not isinstance(data[key], str):
                raise ConfigValueError("expected a path string", f"$.{key}")
            setattr(cfg, key, data[key])
    render = data.get("render", {})
    if not isinstance(render, dict):
        raise ConfigValueError("render must be an object", "$.render")
    for key in sorted(render):
        if key not in _RENDER_KEYS:
            raise UnknownKeyError(f"unknown key {key!r}", f"$.render.{key}")
    if render.get("viewport") is not None:
        vp = render["viewport"]
        if not (isinstance(vp, list) and len(vp) == 4 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in vp)):
            raise ConfigValueError("viewport must be [xmin, xmax, ymin, ymax]", "$.render.viewport")
        if not (vp[0] < vp[1] and vp[2] < vp[3]):
            raise ConfigValueError("degenerate viewport", "$.render.viewport")
        cfg.viewport = tuple(float(v) for v in vp)
    if "width" in render:
        cfg.width = _int(render["width"], "$.render.width", 16, 20000)
    if "stroke_width" in render:
        cfg.stroke_width = _positive(render["stroke_width"], "$.render.stroke_width")
    if render.get("colors") is not None:
        colors = render["colors"]
        if not (isinstance(colors, list) and colors and all(isinstance(c, str) for c in colors)):
            raise ConfigValueError("colors must be a non-empty list of strings", "$.render.colors")
        cfg.colors = tuple(colors)
    if render.get("exaggerate_gaps") is not None:
        cfg.exaggerate_gaps = _positive(render["exaggerate_gaps"], "$.render.exaggerate_gaps")
    try:
        cfg.params
    except ValueError as exc:
        raise ConfigValueError(str(exc), "$") from None
    return cfg


def parse_config(text: str) -> RunConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedConfigError(f"malformed JSON: {exc.msg} at line {exc.lineno} column {exc.colno}", "$") from None
    return config_from_dict(data)


# --- commands ---------------------------------------------------------------

def _matrix(g):
    return [[rational_str(g.a), rational_str(g.b)], [rational_str(g.c), rational_str(g.d)]]


def _construct(cfg: RunConfig):
    p = cfg.params
    system = build_system(p)
    dc = derived_constants(p)
    comm = commutator_map(p)
    result = {
        "generators": {
            name: {"matrix": _matrix(pr.map), "class": classify(pr.map).value,
                   "source": system.label(pr.source), "target": system.label(pr.target), "pairing_holds": pr.holds()}
            for name, pr in zip(("h*", "h**"), system.pairings)
        },
        "circles": {CIRCLE_LABELS[i]: semicircle_to_json(C) for i, C in enumerate(system.circles)},
        "centers_outside_unit_interval": centers_outside_unit_interval(p),
        "constants": {
            "tau": point_to_json(dc.tau),
            "e": point_to_json(dc.e),
            "A": point_to_json(dc.A),
            "fixed_points_h*": [point_to_json(x) for x in dc.h_star_fixed],
            "fixed_points_h**": [point_to_json(x) for x in dc.h_2star_fixed],
            "tau_is_exact_fixed_point_of_h**": dc.tau_is_exact_fixed_point,
        },
        "quartic_roots": [point_to_json(x) for x in quartic_roots()],
        "commutator": {"matrix": _matrix(comm), "fixed_points": [point_to_json(x) for x in fixed_points(comm)]},
    }
    try:
        cf = commutator_fixed_points_closed_form(p)
        result["commutator"]["closed_form"] = {"minus": str(cf.minus), "plus": str(cf.plus), "precision": cf.precision}
    except SchottkyError as exc:
        result["commutator"]["closed_form"] = {"error": str(exc)}
    return result


def _check_classical(cfg: RunConfig):
    verdict = classical_check(build_system(cfg.params))
    out = verdict_to_json(verdict)
    out["verdict"] = "holds" if verdict.passed else "fails"
    out["note"] = (
        "the verdict concerns this generating set with these four circles only; "
        "a pass does not decide whether some other circle system exists or not"
    )
    return out


def _bounds(cfg: RunConfig):
    p = cfg.params
    out = {}
    want = LEMMA_CHOICES[:4] if cfg.lemma == "all" else (cfg.lemma,)
    if "2" in want:
        out["lemma2.2"] = lemma22_bound(p).to_json()
    if "3" in want:
        out["lemma2.3"] = lemma23_bound(p).to_json()
    if "4" in want:
        eps = cfg.epsilon if cfg.epsilon is not None else lemma22_bound(p).value
        out["lemma2.4"] = lemma24_bound(p, eps).to_json()
    if "5" in want:
        if cfg.epsilon_source == "both":
            both = lemma25_both(p)
            out["lemma2.5"] = {src: r.to_json() for src, r in both["reports"].items()}
            out["lemma2.5_discrepancy"] = both["discrepancy"]
        else:
            out["lemma2.5"] = {cfg.epsilon_source: lemma25_pipeline(p, cfg.epsilon_source).to_json()}
        if cfg.preset in PRESETS:
            cc = corollary_check(cfg.preset)
            out["corollary"] = {
                "kappa": rational_str(PRESETS[cfg.preset].kappa_threshold),
                "reports": {src: r.to_json() for src, r in cc["reports"].items()},
                "discrepancy": cc["discrepancy"],
            }
    return out


def _psi(cfg: RunConfig):
    rep = psi_components(cfg.params, cfg.depth, cfg.workers)
    mx = rep.max_bounded_gap
    return {
        "depth": rep.depth,
        "intervals": [
            {"name": iv.name, "lo": point_to_json(iv.lo), "hi": point_to_json(iv.hi), "wraps_infinity": iv.wraps_infinity}
            for iv in rep.intervals
        ],
        "gaps": [dict(gap_to_json(g["gap"]), touches_window_edge=g["touches_window_edge"]) for g in rep.gaps],
        "gap_containing_lambda_plus_1": None if rep.gap_at_lam_plus_1 is None else gap_to_json(rep.gap_at_lam_plus_1),
        "max_bounded_gap": None if mx is None else point_to_json(mx),
        "max_bounded_gap_float": None if mx is None else float(mx),
        "lemma2.2": rep.bound.to_json(),
        "note": "measured gaps are reported next to the bound; no inequality is asserted",
    }


def _render(cfg: RunConfig):
    opts = cfg.render_options()
    if cfg.figure is not None:
        scene = figure_preset(cfg.figure, cfg.params, opts)
    else:
        scene = system_scene(cfg.params, cfg.depth, opts, f"orbit to depth {cfg.depth}")
    return render_scene(scene), scene


def _envelope(cmd: str, cfg: RunConfig, result) -> str:
    return dumps({"schema": SCHEMA, "tool": "schottky-forge", "version": __version__, "command": cmd,
                  "config": cfg.to_json(), "result": result}) + "\n"


def _emit(text: str, path: str | None, stdout):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def run_command(cmd: str, cfg: RunConfig, stdout=None) -> int:
    """Run one command; return the exit status. Numeric errors give 2."""
    stdout = stdout or sys.stdout
    try:
        if cmd == "orbit":
            entries = orbit_circles(build_system(cfg.params), cfg.depth, cfg.workers)
            _emit(orbit_to_jsonl(entries), cfg.out, stdout)
            return 0
        if cmd == "render":
            svg, scene = _render(cfg)
            if cfg.svg or not cfg.out:
                _emit(svg, cfg.svg, stdout)
            if cfg.out:
                counts = {}
                for it in scene.items:
                    counts[type(it).__name__] = counts.get(type(it).__name__, 0) + 1
                _emit(_envelope(cmd, cfg, {"title": scene.title, "items": counts}), cfg.out, stdout)
            return 0
        handlers = {"construct": _construct, "check-classical": _check_classical, "bounds": _bounds,
                    "psi": _psi, "diameter": lambda c: theorem_diameter_check(c.params).to_json()}
        result = handlers[cmd](cfg)
        text = _envelope(cmd, cfg, result)
        _emit(text, cfg.out, stdout)
        if cfg.svg:
            svg, _ = _render(cfg)
            Path(cfg.svg).write_text(svg, encoding="utf-8")
        return 0
    except (SchottkyError, ArithmeticError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        print(f"schottky-forge: numeric error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="schottky-forge", description="Rank-2 Schottky construction: reports and figures.")
    ap.add_argument("--version", action="version", version=f"schottky-forge {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="JSON configuration file; flags override its values")
    ap.add_argument("--preset", choices=PRESET_NAMES)
    ap.add_argument("--lambda", dest="lam", metavar="P/Q")
    ap.add_argument("--kappa", metavar="DEC")
    ap.add_argument("--depth", type=int)
    ap.add_argument("--epsilon-source", choices=EPSILON_CHOICES)
    ap.add_argument("--lemma", choices=LEMMA_CHOICES)
    ap.add_argument("--epsilon", metavar="DEC", help="epsilon for lemma 2.4 (default: the lemma 2.2 bound)")
    ap.add_argument("--figure", type=int)
    ap.add_argument("--workers", type=int)
    ap.add_argument("--out")
    ap.add_argument("--svg")
    ap.add_argument("--exaggerate-gaps", type=float, metavar="FACTOR")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        data = {}
        if args.config:
            try:
                text = Path(args.config).read_text(encoding="utf-8")
            except OSError as exc:
                raise ConfigValueError(f"cannot read config: {exc.strerror}", args.config) from None
            data = json.loads(text) if text.strip() else {}
            if not isinstance(data, dict):
                raise MalformedConfigError("configuration must be a JSON object", "$")
        flags = {"preset": args.preset, "lambda": args.lam, "kappa": args.kappa, "depth": args.depth,
                 "epsilon_source": args.epsilon_source, "lemma": args.lemma, "epsilon": args.epsilon,
                 "figure": args.figure, "workers": args.workers, "out": args.out, "svg": args.svg}
        for k, v in flags.items():
            if v is not None:
                data[k] = v
        if args.lam is not None and "preset" not in data:
            data["preset"] = "custom"
        if args.exaggerate_gaps is not None:
            data.setdefault("render", {})
            data["render"]["exaggerate_gaps"] = args.exaggerate_gaps
        cfg = config_from_dict(data)
        return run_command(args.command, cfg)
    except json.JSONDecodeError as exc:
        print(f"schottky-forge: config error: $: malformed JSON: {exc.msg}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"schottky-forge: config error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
