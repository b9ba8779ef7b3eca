"""Exact-cover verification of dissection certificates.

The ground truth for every generator.  Coordinate compression over the
exactly-ordered QuadExt coordinate multiset partitions each layer into
grid cells; a certificate passes iff, on every destination layer, the
transformed pieces cover each cell inside the declared targets exactly
once and no cell outside them, and the piece sources are pairwise
disjoint on every source layer.  Declared leftovers act as the target
frame of the reserved ``leftover`` layer.

Malformed input produces a report-carrying failure, never an exception.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

from ..exact import QuadExt, quad_to_text
from .geometry import (
    CONSTRUCTIONS,
    LEFTOVER_LAYER,
    DissectionCertificate,
    Placement,
    Rect,
    Region,
    RigidTransform,
)


@dataclass(frozen=True)
class CellInterval:
    x1: QuadExt
    y1: QuadExt
    x2: QuadExt
    y2: QuadExt

    def __str__(self) -> str:
        return (f"[{quad_to_text(self.x1)}, {quad_to_text(self.x2)}] x "
                f"[{quad_to_text(self.y1)}, {quad_to_text(self.y2)}]")


@dataclass(frozen=True)
class CheckFailure:
    kind: str  # "overlap" | "uncovered" | "outside" | "source-overlap" | "malformed"
    layer: Optional[str]
    cell: Optional[CellInterval]
    message: str

    def __str__(self) -> str:
        where = f" on layer {self.layer!r}" if self.layer else ""
        at = f" at {self.cell}" if self.cell else ""
        return f"{self.kind}{where}{at}: {self.message}"


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    failure: Optional[CheckFailure]
    layers_checked: int = 0
    cells_checked: int = 0

    def __str__(self) -> str:
        if self.ok:
            return (f"PASS ({self.layers_checked} layers, "
                    f"{self.cells_checked} grid cells)")
        return f"FAIL {self.failure}"


def _fail(kind: str, layer: Optional[str], cell: Optional[CellInterval],
          message: str) -> CheckReport:
    return CheckReport(False, CheckFailure(kind, layer, cell, message))


def _grid_counts(rect_groups: Sequence[Sequence[Rect]],
                 ) -> tuple[list[QuadExt], list[QuadExt], list[list[list[int]]]]:
    """Compressed-grid coverage counts for several rect collections.

    Returns the sorted distinct x and y coordinates and, per collection,
    a (len(xs)-1) x (len(ys)-1) matrix counting how many rectangles cover
    each grid cell.
    """
    coords_x: set[QuadExt] = set()
    coords_y: set[QuadExt] = set()
    for group in rect_groups:
        for r in group:
            coords_x.add(r.x)
            coords_x.add(r.x2)
            coords_y.add(r.y)
            coords_y.add(r.y2)
    xs = sorted(coords_x)
    ys = sorted(coords_y)
    x_index = {v: i for i, v in enumerate(xs)}
    y_index = {v: i for i, v in enumerate(ys)}
    nx, ny = max(len(xs) - 1, 0), max(len(ys) - 1, 0)
    counts: list[list[list[int]]] = []
    for group in rect_groups:
        diff = [[0] * (ny + 1) for _ in range(nx + 1)]
        for r in group:
            i1, i2 = x_index[r.x], x_index[r.x2]
            j1, j2 = y_index[r.y], y_index[r.y2]
            diff[i1][j1] += 1
            diff[i2][j1] -= 1
            diff[i1][j2] -= 1
            diff[i2][j2] += 1
        grid = [[0] * ny for _ in range(nx)]
        for i in range(nx):
            row_prev = grid[i - 1] if i else None
            diff_i = diff[i]
            grid_i = grid[i]
            acc = 0
            for j in range(ny):
                acc += diff_i[j]
                grid_i[j] = acc + (row_prev[j] if row_prev else 0)
        counts.append(grid)
    return xs, ys, counts


def _check_layer_cover(layer: str, piece_rects: Sequence[Rect],
                       target_rects: Sequence[Rect]) -> tuple[Optional[CheckReport], int]:
    xs, ys, counts = _grid_counts([piece_rects, target_rects])
    pieces, targets = counts
    cells = 0
    for i in range(len(xs) - 1):
        for j in range(len(ys) - 1):
            cells += 1
            pc = pieces[i][j]
            tc = targets[i][j]
            if pc == tc and tc <= 1:
                continue
            cell = CellInterval(xs[i], ys[j], xs[i + 1], ys[j + 1])
            if tc > 1:
                return _fail("malformed", layer, cell,
                             f"target regions overlap ({tc} deep)"), cells
            if tc == 0:
                return _fail("outside", layer, cell,
                             f"{pc} piece(s) outside every target"), cells
            if pc == 0:
                return _fail("uncovered", layer, cell,
                             "target cell covered by no piece"), cells
            return _fail("overlap", layer, cell,
                         f"target cell covered {pc} times"), cells
    return None, cells


def _check_source_disjoint(layer: str, source_rects: Sequence[Rect],
                           ) -> tuple[Optional[CheckReport], int]:
    xs, ys, counts = _grid_counts([source_rects])
    grid = counts[0]
    cells = 0
    for i in range(len(xs) - 1):
        for j in range(len(ys) - 1):
            cells += 1
            if grid[i][j] > 1:
                cell = CellInterval(xs[i], ys[j], xs[i + 1], ys[j + 1])
                return _fail("source-overlap", layer, cell,
                             f"piece sources overlap ({grid[i][j]} deep)"), cells
    return None, cells


def _validate_structure(cert: DissectionCertificate) -> Optional[CheckReport]:
    if cert.construction not in CONSTRUCTIONS:
        return _fail("malformed", None, None,
                     f"unknown construction {cert.construction!r}")
    if cert.n < 1:
        return _fail("malformed", None, None, f"n must be >= 1, got {cert.n}")
    for layer, _region in cert.targets:
        if layer == LEFTOVER_LAYER:
            return _fail("malformed", layer, None,
                         f"{LEFTOVER_LAYER!r} is reserved for declared leftovers")
    seen_ids: set[str] = set()
    for p in cert.placements:
        if p.piece_id in seen_ids:
            return _fail("malformed", None, None,
                         f"duplicate piece id {p.piece_id!r}")
        seen_ids.add(p.piece_id)
        t = p.transform
        if not 0 <= t.quarter_turns <= 3:
            return _fail("malformed", None, None,
                         f"piece {p.piece_id!r}: quarter_turns must be 0..3, "
                         f"got {t.quarter_turns}")
        if not p.source.rects:
            return _fail("malformed", p.source_layer, None,
                         f"piece {p.piece_id!r} has an empty source region")
        for r in p.source.rects:
            if r.w.sign() <= 0 or r.h.sign() <= 0:
                return _fail("malformed", p.source_layer, None,
                             f"piece {p.piece_id!r} has a degenerate rectangle")
    return None


def check_certificate(cert: DissectionCertificate) -> CheckReport:
    """Verify a certificate; returns a report, never raises.

    Checks, in order: structural well-formedness, source disjointness per
    source layer, and exact cover of every destination layer's targets
    (leftover pieces against the declared leftovers).  The first offending
    grid cell is reported.
    """
    try:
        bad = _validate_structure(cert)
        if bad is not None:
            return bad

        by_source: dict[str, list[Rect]] = {}
        by_dest: dict[str, list[Rect]] = {}
        for p in cert.placements:
            by_source.setdefault(p.source_layer, []).extend(p.source.rects)
            placed = p.placed()
            by_dest.setdefault(p.destination_layer, []).extend(placed.rects)

        target_map: dict[str, list[Rect]] = {}
        for layer, region in cert.targets:
            target_map.setdefault(layer, []).extend(region.rects)
        if cert.leftovers:
            target_map[LEFTOVER_LAYER] = [
                r for region in cert.leftovers for r in region.rects
            ]

        layers_checked = 0
        cells_checked = 0
        for layer in sorted(by_source):
            failure, cells = _check_source_disjoint(layer, by_source[layer])
            cells_checked += cells
            layers_checked += 1
            if failure is not None:
                return failure
        for layer in sorted(set(by_dest) | set(target_map)):
            failure, cells = _check_layer_cover(
                layer, by_dest.get(layer, []), target_map.get(layer, [])
            )
            cells_checked += cells
            layers_checked += 1
            if failure is not None:
                return failure
        return CheckReport(True, None, layers_checked, cells_checked)
    except Exception as exc:  # malformed input must never crash the checker
        return _fail("malformed", None, None, f"{type(exc).__name__}: {exc}")


def covers_exactly(piece_rects: Iterable[Rect], target_rects: Iterable[Rect]) -> bool:
    """True iff the first rect collection tiles the second exactly once."""
    failure, _ = _check_layer_cover("-", list(piece_rects), list(target_rects))
    return failure is None


MUTATION_KINDS = (
    "translate+x", "translate-x", "translate+y", "translate-y",
    "quarter-turn", "reflect",
)


def mutate_placement(cert: DissectionCertificate, rng: random.Random,
                     ) -> tuple[DissectionCertificate, str]:
    """Corrupt one random placement by a unit translation, an extra
    quarter turn, or a reflection toggle; returns the mutant and a label."""
    idx = rng.randrange(len(cert.placements))
    kind = MUTATION_KINDS[rng.randrange(len(MUTATION_KINDS))]
    p = cert.placements[idx]
    t = p.transform
    one = QuadExt(1)
    if kind == "translate+x":
        t = replace(t, dx=t.dx + one)
    elif kind == "translate-x":
        t = replace(t, dx=t.dx - one)
    elif kind == "translate+y":
        t = replace(t, dy=t.dy + one)
    elif kind == "translate-y":
        t = replace(t, dy=t.dy - one)
    elif kind == "quarter-turn":
        t = replace(t, quarter_turns=(t.quarter_turns + 1) % 4)
    else:
        t = replace(t, reflect=not t.reflect)
    placements = list(cert.placements)
    placements[idx] = Placement(p.piece_id, p.source_layer, p.source, t,
                                p.destination_layer)
    mutant = DissectionCertificate(
        cert.construction, cert.n, tuple(placements), cert.targets, cert.leftovers
    )
    return mutant, f"{kind} on {p.piece_id}"
