"""Deterministic figure reconstruction as SVG or TikZ.

Geometry comes from the exact generators; floats appear only at the last
moment, when exact coordinates are formatted into the output document.
Adjacency is therefore decided by the exact model and rounding can never
open gaps or create overlaps in the drawing's structure.  Identical
FigureSpec inputs produce byte-identical documents.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dissect.generators import (
    UnsupportedN,
    five_pyramids_layers,
    gauss_rectangle,
    nicomachus_4d_2d,
    step2_reshape,
    step3_scissor,
    step4_top_layer,
    three_pyramids_2d,
)
from .dissect.geometry import DissectionCertificate, Rect, Region, rect
from .exact import QuadExt, quad_to_float, strip_root
from .pyramid import build_pyramid, main_sections, secondary_sections

FIGURE_NAMES = (
    "ODD_NUMBERS",
    "GAUSS",
    "MAIN_SECTIONS",
    "SECONDARY_SECTIONS",
    "PUZZLE_3D",
    "PUZZLE_3D_DIY",
    "NICOMACHUS_GRID",
    "NICOMACHUS_GRID_DIY",
    "FIVE_PYR_SECTION",
    "CONVOLUTION_EXCESS",
    "STEP2",
    "STEP3_SCISSOR",
    "TOP_DUAL",
    "TWO_COPIES",
)

#: Fill colours per piece label (total over everything the generators and
#: figure builders emit).
PALETTE: dict[str, str] = {
    "tri_a": "#5b8dd9",
    "tri_b": "#d95b5b",
    "main_square": "#f0c33c",
    "stair_a": "#5b8dd9",
    "stair_b": "#d95b5b",
    "main_green": "#6cbf6c",
    "square_orange": "#ef9a3c",
    "fifth_pink": "#f2a0c0",
    "body": "#c9c9c9",
    "row_strip": "#8fd1d1",
    "strip_a": "#ef9a3c",
    "left_b": "#f0c33c",
    "left_c": "#d95b5b",
    "corner_sq": "#f2a0c0",
    "dual_l": "#b08fd1",
    "deficit": "#9a9a9a",
    "ring0": "#f2a0c0",
    "ring1": "#e07ba6",
    "ring2": "#c9568c",
    "ring3": "#a63572",
    "ring4": "#7d1f58",
}

_STROKE = "#303030"


@dataclass(frozen=True)
class FigureSpec:
    figure_name: str
    n: int
    format: str = "svg"  # "svg" or "tikz"
    unit_px: int = 24
    section: int = 1  # FIVE_PYR_SECTION: which layer t to draw


@dataclass
class _Scene:
    fills: list[tuple[Rect, str]] = field(default_factory=list)
    frames: list[Rect] = field(default_factory=list)
    notes: list[tuple[QuadExt, QuadExt, str]] = field(default_factory=list)

    def add_region(self, region: Region, dx: int = 0, dy: int = 0,
                   label: str | None = None) -> None:
        for r in region.rects:
            self.add_rect(r, label or region.label, dx, dy)

    def add_rect(self, r: Rect, label: str, dx: int = 0, dy: int = 0) -> None:
        shifted = Rect(r.x + dx, r.y + dy, r.w, r.h)
        for cell in _unit_cells(shifted):
            self.fills.append((cell, label))

    def add_frame(self, r: Rect, dx: int = 0, dy: int = 0) -> None:
        self.frames.append(Rect(r.x + dx, r.y + dy, r.w, r.h))

    def cell_count(self) -> int:
        return len(self.fills)


def _unit_cells(r: Rect) -> list[Rect]:
    """Split a rect with integer corners and sides into unit cells;
    anything with fractional or irrational extent is drawn whole."""
    if not (r.x.is_integer() and r.y.is_integer()
            and r.w.is_integer() and r.h.is_integer()):
        return [r]
    x0, y0 = int(r.x.a), int(r.y.a)
    w, h = int(r.w.a), int(r.h.a)
    one = QuadExt(1)
    return [Rect(QuadExt(x0 + i), QuadExt(y0 + j), one, one)
            for i in range(w) for j in range(h)]


def _placed_scene(cert: DissectionCertificate, layers: set[str] | None,
                  scene: _Scene, dx: int = 0, dy: int = 0) -> None:
    """Draw the destination state of a certificate (selected layers)."""
    for p in cert.placements:
        if layers is None or p.destination_layer in layers:
            scene.add_region(p.placed(), dx, dy)
    for layer, region in cert.targets:
        if layers is None or layer in layers:
            for r in region.rects:
                scene.add_frame(r, dx, dy)


def _source_scene(cert: DissectionCertificate, layers: set[str],
                  scene: _Scene, dx: int = 0, dy: int = 0) -> None:
    for p in cert.placements:
        if p.source_layer in layers:
            scene.add_region(p.source, dx, dy)


def _gnomon_rects(k: int, x0: int, y0: int) -> list[Rect]:
    if k == 1:
        return [rect(x0, y0, 1, 1)]
    return [rect(x0 + k - 1, y0, 1, k), rect(x0, y0 + k - 1, k - 1, 1)]


def _ring_label(k: int) -> str:
    return f"ring{(k - 1) % 5}"


def _build_scene(spec: FigureSpec) -> _Scene:
    name, n = spec.figure_name, spec.n
    scene = _Scene()

    if name == "ODD_NUMBERS":
        x0 = 0
        for k in range(1, n + 1):
            for r in _gnomon_rects(k, x0, 0):
                scene.add_rect(r, _ring_label(k))
            x0 += k + 1
        for k in range(1, n + 1):  # the assembled square, ring by ring
            for r in _gnomon_rects(k, x0, 0):
                scene.add_rect(r, _ring_label(k))
        scene.add_frame(rect(x0, 0, n, n))

    elif name == "GAUSS":
        cert = gauss_rectangle(n)
        _placed_scene(cert, None, scene)

    elif name == "MAIN_SECTIONS":
        x0 = 0
        for section in main_sections(build_pyramid(3, n)):
            k = max(c[0] for c in section.cells) + 1
            scene.add_rect(rect(x0, 0, k, k), "square_orange")
            x0 += k + 1

    elif name == "SECONDARY_SECTIONS":
        x0 = 0
        pyramid = build_pyramid(3, n)
        for m, _section in enumerate(secondary_sections(pyramid, 2), start=1):
            for j in range(m, n + 1):
                scene.add_rect(rect(x0, n - j, j, 1), "stair_a")
            x0 += n + 2

    elif name in ("PUZZLE_3D", "PUZZLE_3D_DIY"):
        cert = three_pyramids_2d(n)
        for m in range(1, n + 1):
            layer = {f"layer/{m}"}
            dx = (m - 1) * (n + 3)
            if name == "PUZZLE_3D":
                _source_scene(cert, layer, scene, dx=dx)
                scene.add_frame(rect(dx, 0, n + 1, n + 1))
            else:
                _placed_scene(cert, layer, scene, dx=dx)

    elif name == "NICOMACHUS_GRID":
        cert = nicomachus_4d_2d(n)
        _source_scene(cert, {"grid"}, scene)

    elif name == "NICOMACHUS_GRID_DIY":
        cert = nicomachus_4d_2d(n)
        _placed_scene(cert, {"grid"}, scene)

    elif name == "FIVE_PYR_SECTION":
        t = spec.section
        if not 1 <= t <= n:
            raise UnsupportedN(f"FIVE_PYR_SECTION: section must be 1..{n}, got {t}")
        cert = five_pyramids_layers(n)
        _placed_scene(cert, {f"layer/{t}"}, scene)

    elif name == "CONVOLUTION_EXCESS":
        cert = five_pyramids_layers(n)
        _placed_scene(cert, {"excess"}, scene)

    elif name == "STEP2":
        cert = step2_reshape(n)
        layer = {"layer/1"}
        _source_scene(cert, layer, scene)
        _placed_scene(cert, layer, scene, dx=n * (n + 1) + 2)

    elif name == "STEP3_SCISSOR":
        cert = step3_scissor(n)
        first = [p for p in cert.placements
                 if p.piece_id.startswith("STEP3_SCISSOR/layer/1/0,0/")]
        for p in first:  # before: the cut rectangle
            scene.add_region(p.source)
        after_dx = n + 4
        for p in first:  # after: reshaped rectangle plus the leftovers
            dest = p.placed()
            if p.destination_layer == "leftover":
                scene.add_region(Region(dest.label, tuple(
                    Rect(r.x + after_dx + n + 3, r.y + n, r.w, r.h)
                    for r in dest.rects)))
            else:
                scene.add_region(dest, dx=after_dx)
        x = quad_to_float(strip_root())
        scene.notes.append((QuadExt(0), QuadExt(n + 1), f"x ~ {x:.4f}"))

    elif name == "TOP_DUAL":
        for i in range(n):
            for j in range(n):
                for k in range(max(i, j) + 1, n + 1):
                    for r in _gnomon_rects(k, i * n, j * n):
                        scene.add_rect(r, _ring_label(k))
                scene.add_frame(rect(i * n, j * n, n, n))

    elif name == "TWO_COPIES":
        cert = step4_top_layer(n).overlap
        _placed_scene(cert, {"doubled"}, scene)

    else:
        raise ValueError(f"unknown figure: {name!r}")
    return scene


def _fmt(value: float) -> str:
    text = f"{value:.4f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def _bounds(scene: _Scene) -> tuple[float, float, float, float]:
    xs: list[float] = []
    ys: list[float] = []
    for r, _ in scene.fills:
        xs += [quad_to_float(r.x), quad_to_float(r.x2)]
        ys += [quad_to_float(r.y), quad_to_float(r.y2)]
    for r in scene.frames:
        xs += [quad_to_float(r.x), quad_to_float(r.x2)]
        ys += [quad_to_float(r.y), quad_to_float(r.y2)]
    if not xs:
        return 0.0, 0.0, 1.0, 1.0
    return min(xs), min(ys), max(xs), max(ys)


def _emit_svg(scene: _Scene, unit_px: int) -> str:
    x0, y0, x1, y1 = _bounds(scene)
    margin = 0.5
    width = (x1 - x0 + 2 * margin) * unit_px
    height = (y1 - y0 + 2 * margin) * unit_px

    def px(x: float) -> str:
        return _fmt((x - x0 + margin) * unit_px)

    def py(y: float) -> str:  # flip: SVG y grows downward
        return _fmt((y1 - y + margin) * unit_px)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
    ]
    for r, label in scene.fills:
        rx, ry = quad_to_float(r.x), quad_to_float(r.y2)
        rw = quad_to_float(r.w) * unit_px
        rh = quad_to_float(r.h) * unit_px
        lines.append(
            f'<rect x="{px(rx)}" y="{py(ry)}" width="{_fmt(rw)}" '
            f'height="{_fmt(rh)}" fill="{PALETTE[label]}" '
            f'stroke="{_STROKE}" stroke-width="1"/>'
        )
    for r in scene.frames:
        rx, ry = quad_to_float(r.x), quad_to_float(r.y2)
        rw = quad_to_float(r.w) * unit_px
        rh = quad_to_float(r.h) * unit_px
        lines.append(
            f'<rect x="{px(rx)}" y="{py(ry)}" width="{_fmt(rw)}" '
            f'height="{_fmt(rh)}" fill="none" stroke="{_STROKE}" '
            'stroke-width="2" stroke-dasharray="4 3"/>'
        )
    for x, y, text in scene.notes:
        lines.append(
            f'<text x="{px(quad_to_float(x))}" y="{py(quad_to_float(y))}" '
            f'font-family="monospace" font-size="{_fmt(unit_px * 0.6)}" '
            f'fill="{_STROKE}">{text}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _emit_tikz(scene: _Scene) -> str:
    used = sorted({label for _, label in scene.fills})
    lines = []
    for label in used:
        rgb = PALETTE[label].lstrip("#")
        r, g, b = (int(rgb[i:i + 2], 16) for i in (0, 2, 4))
        lines.append(f"\\definecolor{{fill{label.replace('_', '')}}}"
                     f"{{RGB}}{{{r},{g},{b}}}")
    lines.append("\\begin{tikzpicture}[scale=0.42]")
    for r, label in scene.fills:
        name = f"fill{label.replace('_', '')}"
        lines.append(
            f"\\draw[fill={name}, line width=0.3pt] "
            f"({_fmt(quad_to_float(r.x))},{_fmt(quad_to_float(r.y))}) rectangle "
            f"({_fmt(quad_to_float(r.x2))},{_fmt(quad_to_float(r.y2))});"
        )
    for r in scene.frames:
        lines.append(
            f"\\draw[dashed, thick] "
            f"({_fmt(quad_to_float(r.x))},{_fmt(quad_to_float(r.y))}) rectangle "
            f"({_fmt(quad_to_float(r.x2))},{_fmt(quad_to_float(r.y2))});"
        )
    for x, y, text in scene.notes:
        escaped = text.replace("~", "$\\approx$")
        lines.append(
            f"\\node[anchor=west] at ({_fmt(quad_to_float(x))},"
            f"{_fmt(quad_to_float(y))}) {{{escaped}}};"
        )
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def emit_figure(spec: FigureSpec) -> str:
    """Render one figure to a text document (SVG or TikZ fragment)."""
    if spec.figure_name not in FIGURE_NAMES:
        raise ValueError(f"unknown figure: {spec.figure_name!r}")
    if spec.format not in ("svg", "tikz"):
        raise ValueError(f"format must be svg or tikz, got {spec.format!r}")
    if spec.n < 1:
        raise UnsupportedN(f"n must be >= 1, got {spec.n}")
    scene = _build_scene(spec)
    if spec.format == "svg":
        return _emit_svg(scene, spec.unit_px)
    return _emit_tikz(scene)


def figure_cell_count(spec: FigureSpec) -> int:
    """Number of unit cells the figure draws (for cell-count invariants)."""
    return _build_scene(spec).cell_count()
