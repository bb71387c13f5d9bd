import math
import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homotopy_forge.pipelines import (
    PI3_F_CIRCLE,
    class_coords,
    class_word,
    cofinality_check,
    commutator_boundary_check,
    compute_one_stem_sphere,
    compute_pi2_circle,
    compute_pi_k_circle,
    displayed_face_families,
    k_basis,
    lie_basis,
    lie_rank,
    milnor_check,
    samelson,
    samelson_direct,
    samelson_pairs,
    samelson_property_check,
    samelson_shuffle,
    shuffles,
)
from homotopy_forge.simplicial import build_model
from homotopy_forge.words import ReducedWord, gen


def test_pi2_circle():
    r = compute_pi2_circle(4)
    assert r.per_degree[2].factors == (0,)
    assert r.per_degree[3].is_trivial() and r.per_degree[4].is_trivial()
    assert r.answer == "Z" and r.stable
    assert r.generator == "[y[0], y[1]]"
    assert r.checks["boundary_rank_degree2"] == 0
    assert r.checks["boundary_rank_degree3"] == 2
    assert r.checks["intersection_reading_agrees"]


def test_pi2_circle_rejects_small_c():
    with pytest.raises(ValueError):
        compute_pi2_circle(2)


def test_report_serializes():
    d = compute_pi2_circle(3).to_dict()
    assert d["per_degree"]["2"] == {"factors": [0], "group": "Z"}
    assert "answer: Z" in compute_pi2_circle(3).render_text()


def test_displayed_face_family_sizes():
    # one family of pairs i < j - 1 plus two families indexed by i < n - 1
    for n in (2, 3, 4):
        fams = displayed_face_families(n)
        assert len(fams) == comb(n, 2) + 2 * (n - 1)


@pytest.mark.parametrize("n,checked", [(2, 15), (3, 42), (4, 84)])
def test_one_stem(n, checked):
    r = compute_one_stem_sphere(n, 4)
    assert r.per_degree[2].nontrivial() == (2,)
    assert all(r.per_degree[d].is_trivial() for d in (3, 4))
    assert r.answer == "Z/2"
    assert r.checks["displayed_face_equations_checked"] == checked
    assert r.checks["twice_generator_is_boundary"]
    assert not r.checks["generator_is_boundary"]


def test_one_stem_range():
    with pytest.raises(ValueError):
        compute_one_stem_sphere(5)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_k_model_homotopy_is_lie(n):
    r = compute_pi_k_circle(n)
    assert r.per_degree[n].free_rank == math.factorial(n - 1)
    assert r.checks["faces_trivial"] and r.checks["d0_from_next_level_trivial"]


def test_lie_ranks():
    assert [lie_rank(n) for n in range(1, 7)] == [1, 1, 2, 6, 24, 120]


def test_lie_basis_shape():
    assert [str(t) for t in lie_basis(3)] == ["[[x[1], x[2]], x[3]]", "[[x[1], x[3]], x[2]]"]


def test_shuffles():
    sh = shuffles(2, 2)
    assert len(sh) == 6
    assert sh[0] == ((0, 1), (2, 3), 1)
    assert ((0, 2), (1, 3), -1) in sh
    assert sum(s for _, _, s in sh) == 2


def test_samelson_of_generator_with_itself():
    x0 = ReducedWord.of(gen("x", 0))
    assert samelson_direct(x0, 1, x0, 1) == {(0, 1): 2}
    assert samelson_shuffle({(0,): 1}, 1, {(0,): 1}, 1) == {(0, 1): 2}


def test_samelson_routes_agree():
    pairs = list(samelson_pairs())
    want = sum(math.factorial(p - 1) * math.factorial(q - 1)
               for p in range(1, 5) for q in range(1, 6 - p))
    assert len(pairs) == want == 24
    for p, a, q, b in pairs:
        direct, shuffle = samelson(a, p, b, q)
        assert direct == shuffle


def test_samelson_range():
    a = k_basis(3)[0]
    with pytest.raises(ValueError):
        samelson(a, 3, a, 3)


def _random_class(rng, p):
    w = ReducedWord()
    coords = {}
    for t in k_basis(p):
        e = rng.randint(-2, 2)
        w = w * class_word(t) ** e
        for m, c in class_coords(t, p).items():
            coords[m] = coords.get(m, 0) + e * c
    return w, {m: c for m, c in coords.items() if c}


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_samelson_antisymmetry(seed):
    rng = random.Random(seed)
    p = rng.randint(1, 3)
    q = rng.randint(1, 4 - p)
    (a, _), (b, _) = _random_class(rng, p), _random_class(rng, q)
    ab, ba = samelson_direct(a, p, b, q), samelson_direct(b, q, a, p)
    sign = -((-1) ** (p * q))
    assert ab == {m: sign * c for m, c in ba.items()}


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_samelson_direct_matches_shuffle_on_combinations(seed):
    rng = random.Random(seed)
    p = rng.randint(1, 3)
    q = rng.randint(1, 4 - p)
    (a, ca), (b, cb) = _random_class(rng, p), _random_class(rng, q)
    assert samelson_direct(a, p, b, q) == samelson_shuffle(ca, p, cb, q)


def test_samelson_property_check():
    r = samelson_property_check(5)
    assert r["ok"] and r["samples"] == 100


def test_milnor_check():
    r = milnor_check()
    assert r["lie_rank_3"] == 2
    assert str(PI3_F_CIRCLE) == "Z/2"
    assert not r["isomorphic"] and r["pi3_map_zero"]
    assert r["pi2"]["iso"] and r["pi1"]["iso"]


def test_commutator_boundary_check():
    r = commutator_boundary_check(7)
    assert r["ok"] and r["nontrivial_classes"] > 0


def test_cofinality_check():
    r = cofinality_check(4)
    assert r["ok"]
    assert r["ranks"] == r["all_ranks"]
    assert r["left_normed_generators"] < r["all_generators"]


def test_kcircle_model_builds():
    assert len(build_model("kcircle", 3).alphabet(3)) == 3
