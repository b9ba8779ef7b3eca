"""Rigid transforms, regions, and the certificate wire format."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powersums.dissect import (
    RigidTransform,
    Region,
    dumps_certificate,
    gauss_rectangle,
    loads_certificate,
    rect,
    step3_scissor,
)
from powersums.dissect.geometry import CertificateFormatError
from powersums.exact import QuadExt

small_quads = st.builds(
    QuadExt,
    st.fractions(min_value=Fraction(-50), max_value=Fraction(50), max_denominator=12),
    st.fractions(min_value=Fraction(-5), max_value=Fraction(5), max_denominator=6),
)
transforms = st.builds(
    RigidTransform,
    st.integers(min_value=0, max_value=3),
    st.booleans(),
    small_quads,
    small_quads,
)
points = st.tuples(small_quads, small_quads)


def test_rect_validation():
    with pytest.raises(ValueError):
        rect(0, 0, 0, 1)
    with pytest.raises(ValueError):
        rect(0, 0, 1, -2)
    r = rect(1, 2, 3, 4)
    assert r.x2 == QuadExt(4) and r.y2 == QuadExt(6) and r.area == QuadExt(12)


def test_region_area():
    region = Region("x", (rect(0, 0, 2, 3), rect(5, 0, 1, 1)))
    assert region.area == QuadExt(7)


def test_transform_quarter_turn_and_reflection():
    t = RigidTransform(quarter_turns=1)
    assert t.apply_point(QuadExt(2), QuadExt(0)) == (QuadExt(0), QuadExt(2))
    r = t.apply_rect(rect(0, 0, 3, 1))
    assert r == rect(-1, 0, 1, 3)
    m = RigidTransform(reflect=True)
    assert m.apply_rect(rect(1, 0, 2, 1)) == rect(-3, 0, 2, 1)


@given(transforms)
def test_transform_preserves_area(t):
    r = rect(Fraction(1, 2), 3, Fraction(7, 3), Fraction(5, 4))
    assert t.apply_rect(r).area == r.area


@given(transforms, transforms, points)
@settings(max_examples=80)
def test_transform_composition(outer, inner, point):
    x, y = point
    via_compose = outer.compose(inner).apply_point(x, y)
    stepwise = outer.apply_point(*inner.apply_point(x, y))
    assert via_compose == stepwise


def test_json_round_trip_is_bit_exact():
    for cert in (gauss_rectangle(3), step3_scissor(1)):
        text = dumps_certificate(cert)
        again = loads_certificate(text)
        assert again == cert
        assert dumps_certificate(again) == text


def test_json_carries_exact_irrational_coordinates():
    text = dumps_certificate(step3_scissor(1))
    assert "*sqrt21" in text
    assert "." not in text.replace("piece_id", "").split('"rects"')[1][:200]


def test_loads_rejects_garbage():
    with pytest.raises(CertificateFormatError):
        loads_certificate("{not json")
    with pytest.raises(CertificateFormatError):
        loads_certificate('{"construction": "GAUSS_RECT"}')
    with pytest.raises(CertificateFormatError):
        loads_certificate(
            '{"construction": "GAUSS_RECT", "n": 1, "placements": '
            '[{"piece_id": "p", "source_layer": "l", "source": '
            '{"label": "a", "rects": [["0", "0", "zero", "1"]]}, '
            '"transform": {"quarter_turns": 0, "reflect": false, '
            '"dx": "0", "dy": "0"}, "destination_layer": "l"}], '
            '"targets": [], "leftovers": []}'
        )
