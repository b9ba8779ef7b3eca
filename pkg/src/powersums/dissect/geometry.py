"""Dissection vocabulary: rectangles, regions, rigid transforms,
placements, and the certificate object with its JSON wire format.

All coordinates are QuadExt values; the JSON form serialises every number
through the canonical Q(sqrt(21)) text representation, so files round-trip
bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, NamedTuple

from ..exact import QuadExt, QuadLike, quad_from_text, quad_to_text

CONSTRUCTIONS = (
    "GAUSS_RECT",
    "THREE_PYR_2D",
    "NICOMACHUS_4D_2D",
    "FIVE_PYR_LAYERS",
    "STEP2_RESHAPE",
    "STEP3_SCISSOR",
    "STEP4_TOP",
)

#: Reserved destination layer id: pieces sent here must tile the declared
#: leftover regions instead of a target frame.
LEFTOVER_LAYER = "leftover"


class CertificateFormatError(ValueError):
    """Raised when certificate JSON cannot be decoded."""


class Rect(NamedTuple):
    x: QuadExt
    y: QuadExt
    w: QuadExt
    h: QuadExt

    @property
    def x2(self) -> QuadExt:
        return self.x + self.w

    @property
    def y2(self) -> QuadExt:
        return self.y + self.h

    @property
    def area(self) -> QuadExt:
        return self.w * self.h


def rect(x: QuadLike, y: QuadLike, w: QuadLike, h: QuadLike) -> Rect:
    r = Rect(QuadExt.of(x), QuadExt.of(y), QuadExt.of(w), QuadExt.of(h))
    if r.w.sign() <= 0 or r.h.sign() <= 0:
        raise ValueError(f"rectangle sides must be positive: w={r.w} h={r.h}")
    return r


@dataclass(frozen=True)
class Region:
    """A labelled union of axis-aligned rectangles (one puzzle piece)."""

    label: str
    rects: tuple[Rect, ...]

    @property
    def area(self) -> QuadExt:
        total = QuadExt(0)
        for r in self.rects:
            total = total + r.area
        return total


@dataclass(frozen=True)
class RigidTransform:
    """Mirror across the vertical axis (optional), then rotate by
    quarter turns counter-clockwise about the origin, then translate."""

    quarter_turns: int = 0
    reflect: bool = False
    dx: QuadExt = QuadExt(0)
    dy: QuadExt = QuadExt(0)

    def apply_point(self, x: QuadExt, y: QuadExt) -> tuple[QuadExt, QuadExt]:
        if self.reflect:
            x = -x
        for _ in range(self.quarter_turns % 4):
            x, y = -y, x
        return x + self.dx, y + self.dy

    def apply_rect(self, r: Rect) -> Rect:
        x1, y1 = self.apply_point(r.x, r.y)
        x2, y2 = self.apply_point(r.x2, r.y2)
        lo_x, hi_x = (x1, x2) if x1 < x2 else (x2, x1)
        lo_y, hi_y = (y1, y2) if y1 < y2 else (y2, y1)
        return Rect(lo_x, lo_y, hi_x - lo_x, hi_y - lo_y)

    def apply_region(self, region: Region) -> Region:
        return Region(region.label, tuple(self.apply_rect(r) for r in region.rects))

    def compose(self, inner: RigidTransform) -> RigidTransform:
        """Transform equal to applying ``inner`` first, then ``self``."""
        reflect = self.reflect != inner.reflect
        q_inner = -inner.quarter_turns if self.reflect else inner.quarter_turns
        quarter_turns = (self.quarter_turns + q_inner) % 4
        dx, dy = self.apply_point(inner.dx, inner.dy)
        return RigidTransform(quarter_turns, reflect, dx, dy)

    @staticmethod
    def translation(dx: QuadLike, dy: QuadLike) -> RigidTransform:
        return RigidTransform(0, False, QuadExt.of(dx), QuadExt.of(dy))


@dataclass(frozen=True)
class Placement:
    """One piece: a source region on a source layer, moved rigidly to a
    destination layer (``LEFTOVER_LAYER`` for set-aside pieces)."""

    piece_id: str
    source_layer: str
    source: Region
    transform: RigidTransform
    destination_layer: str

    def placed(self) -> Region:
        return self.transform.apply_region(self.source)


@dataclass(frozen=True)
class DissectionCertificate:
    """A machine-checkable cut-and-paste proof object."""

    construction: str
    n: int
    placements: tuple[Placement, ...]
    targets: tuple[tuple[str, Region], ...]
    leftovers: tuple[Region, ...]

    @property
    def source_area(self) -> QuadExt:
        total = QuadExt(0)
        for p in self.placements:
            total = total + p.source.area
        return total

    @property
    def target_area(self) -> QuadExt:
        total = QuadExt(0)
        for _, region in self.targets:
            total = total + region.area
        return total

    @property
    def leftover_area(self) -> QuadExt:
        total = QuadExt(0)
        for region in self.leftovers:
            total = total + region.area
        return total

    def target_layers(self) -> list[str]:
        seen: list[str] = []
        for layer, _ in self.targets:
            if layer not in seen:
                seen.append(layer)
        return seen


# -- JSON wire format ----------------------------------------------------


def _rect_to_json(r: Rect) -> list[str]:
    return [quad_to_text(v) for v in r]


def _rect_from_json(data: Any) -> Rect:
    if not isinstance(data, list) or len(data) != 4:
        raise CertificateFormatError(f"rect must be a 4-list, got {data!r}")
    x, y, w, h = (quad_from_text(v) for v in data)
    return rect(x, y, w, h)


def _region_to_json(region: Region) -> dict[str, Any]:
    return {
        "label": region.label,
        "rects": [_rect_to_json(r) for r in region.rects],
    }


def _region_from_json(data: Any) -> Region:
    if not isinstance(data, dict) or "label" not in data or "rects" not in data:
        raise CertificateFormatError(f"region must have label and rects: {data!r}")
    return Region(str(data["label"]), tuple(_rect_from_json(r) for r in data["rects"]))


def certificate_to_json(cert: DissectionCertificate) -> dict[str, Any]:
    return {
        "construction": cert.construction,
        "n": cert.n,
        "placements": [
            {
                "piece_id": p.piece_id,
                "source_layer": p.source_layer,
                "source": _region_to_json(p.source),
                "transform": {
                    "quarter_turns": p.transform.quarter_turns,
                    "reflect": p.transform.reflect,
                    "dx": quad_to_text(p.transform.dx),
                    "dy": quad_to_text(p.transform.dy),
                },
                "destination_layer": p.destination_layer,
            }
            for p in cert.placements
        ],
        "targets": [
            {"layer": layer, "region": _region_to_json(region)}
            for layer, region in cert.targets
        ],
        "leftovers": [_region_to_json(region) for region in cert.leftovers],
    }


def certificate_from_json(data: Any) -> DissectionCertificate:
    try:
        construction = str(data["construction"])
        n = int(data["n"])
        placements = tuple(
            Placement(
                piece_id=str(p["piece_id"]),
                source_layer=str(p["source_layer"]),
                source=_region_from_json(p["source"]),
                transform=RigidTransform(
                    quarter_turns=int(p["transform"]["quarter_turns"]),
                    reflect=bool(p["transform"]["reflect"]),
                    dx=quad_from_text(p["transform"]["dx"]),
                    dy=quad_from_text(p["transform"]["dy"]),
                ),
                destination_layer=str(p["destination_layer"]),
            )
            for p in data["placements"]
        )
        targets = tuple(
            (str(t["layer"]), _region_from_json(t["region"])) for t in data["targets"]
        )
        leftovers = tuple(_region_from_json(r) for r in data["leftovers"])
    except CertificateFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateFormatError(f"bad certificate structure: {exc}") from exc
    return DissectionCertificate(construction, n, placements, targets, leftovers)


def dumps_certificate(cert: DissectionCertificate) -> str:
    return json.dumps(certificate_to_json(cert), indent=1)


def loads_certificate(text: str) -> DissectionCertificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"not valid JSON: {exc}") from exc
    return certificate_from_json(data)


def total_region_area(regions: Iterable[Region]) -> QuadExt:
    total = QuadExt(0)
    for region in regions:
        total = total + region.area
    return total
