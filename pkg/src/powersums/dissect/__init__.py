"""Dissection certificates: geometry, generators, and the exact-cover checker."""

from .checker import (
    CellInterval,
    CheckFailure,
    CheckReport,
    check_certificate,
    covers_exactly,
    mutate_placement,
)
from .generators import (
    StageCheckError,
    TopLayerResult,
    UnsupportedN,
    excess_corner_layout,
    five_pyramids_layers,
    full_theorem_report,
    gauss_rectangle,
    nicomachus_4d_2d,
    step2_reshape,
    step3_scissor,
    step4_top_layer,
    three_pyramids_2d,
)
from .geometry import (
    CONSTRUCTIONS,
    LEFTOVER_LAYER,
    CertificateFormatError,
    DissectionCertificate,
    Placement,
    Rect,
    Region,
    RigidTransform,
    certificate_from_json,
    certificate_to_json,
    dumps_certificate,
    loads_certificate,
    rect,
)

__all__ = [
    "CONSTRUCTIONS",
    "LEFTOVER_LAYER",
    "CellInterval",
    "CertificateFormatError",
    "CheckFailure",
    "CheckReport",
    "DissectionCertificate",
    "Placement",
    "Rect",
    "Region",
    "RigidTransform",
    "StageCheckError",
    "TopLayerResult",
    "UnsupportedN",
    "certificate_from_json",
    "certificate_to_json",
    "check_certificate",
    "covers_exactly",
    "dumps_certificate",
    "excess_corner_layout",
    "five_pyramids_layers",
    "full_theorem_report",
    "gauss_rectangle",
    "loads_certificate",
    "mutate_placement",
    "nicomachus_4d_2d",
    "rect",
    "step2_reshape",
    "step3_scissor",
    "step4_top_layer",
    "three_pyramids_2d",
]
