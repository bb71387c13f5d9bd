import json
import re

import pytest

from homotopy_forge.presentations import emit_presentation
from homotopy_forge.words import format_word


def test_s3_level_two_relator_count():
    doc = emit_presentation("s3", 1)
    assert [str(g) for g in doc.generators] == ["y[0]", "y[1]"]
    assert len(doc.relators) == doc.meta["relator_count"] == 42
    assert all(r.family == "bracket" and not r.word.is_identity() for r in doc.relators)


def test_relators_are_distinct_up_to_inverse():
    doc = emit_presentation("s3", 2)
    seen = set()
    for r in doc.relators:
        assert r.word not in seen and r.word.inverse() not in seen
        seen.add(r.word)


def test_sigma_kzm_power_relators_come_first():
    doc = emit_presentation("sigma_kzm", 2, m=3)
    powers = [r for r in doc.relators if r.family == "power"]
    assert [r.label for r in powers] == ["x[0]^3", "x[1]^3", "x[2]^3"]
    assert doc.relators[:3] == powers
    assert format_word(powers[0].word) == "x[0]*x[0]*x[0]"


def test_sigma_kzm_brackets_match_s3_after_coordinate_change():
    s3 = emit_presentation("s3", 1)
    kzm = emit_presentation("sigma_kzm", 1, m=2)
    assert kzm.meta["bracket_relator_count"] == 42
    assert [r.label for r in kzm.relators if r.family == "bracket"] == [r.label for r in s3.relators]


def test_wedge_on_one_circle_is_s3():
    w = emit_presentation("wedge_s2", 1, J=1)
    s = emit_presentation("s3", 1)
    renamed = [re.sub(r"y\[(-?\d+),0\]", r"y[\1]", format_word(r.word)) for r in w.relators]
    assert renamed == [format_word(r.word) for r in s.relators]


def test_wedge_generators():
    doc = emit_presentation("wedge_s2", 1, J=2)
    assert len(doc.generators) == 4


def test_deterministic_json():
    a = emit_presentation("wedge_s2", 1, J=2).to_json()
    assert a == emit_presentation("wedge_s2", 1, J=2).to_json()
    data = json.loads(a)
    assert data["meta"]["relator_count"] == len(data["relators"]) == 372


@pytest.mark.parametrize("target,kw", [("torus", {}), ("sigma_kzm", {}), ("wedge_s2", {}),
                                       ("s3", {"n": 0})])
def test_bad_arguments(target, kw):
    with pytest.raises(ValueError):
        emit_presentation(target, kw.pop("n", 1), **kw)


def test_weight_cap_override():
    doc = emit_presentation("s3", 1, weight_cap=4)
    assert doc.meta["weight_cap"] == 4
    assert len(doc.relators) > 42
