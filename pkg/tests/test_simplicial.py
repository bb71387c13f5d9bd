import itertools
import json
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homotopy_forge.simplicial import (
    SimplicialFreeGroup,
    build_model,
    k_embed,
    moore_boundary_gens,
    moore_cycle_gens,
    shift_tree,
    surjections,
    wedge_moore_gens,
    y_table,
)
from homotopy_forge.words import (
    IDENTITY,
    Letter,
    ReducedWord,
    commutator,
    eval_bracket,
    gen,
    leaf,
    left_normed,
    parse_word,
)


def xw(j):
    return ReducedWord.of(gen("x", j))


def yw(j, e=1):
    return ReducedWord.of(gen("y", j), e)


def circle_face_oracle(q, i, j):
    # d_i x_j = x_j for j < i, x_(j-1) for j >= i; x_-1 and x_(q-1) are the basepoint
    k = j if j < i else j - 1
    return IDENTITY if k < 0 or k > q - 2 else xw(k)


def circle_degen_oracle(i, j):
    return xw(j) if j < i else xw(j + 1)


@pytest.mark.parametrize("q", [1, 2, 3, 4, 5])
def test_circle_faces_and_degeneracies(q):
    G = build_model("circle", 6)
    assert G.alphabet(q) == tuple(gen("x", j) for j in range(q))
    for j in range(q):
        for i in range(q + 1):
            assert G.face(q, i)(xw(j)) == circle_face_oracle(q, i, j)
            assert G.degen(q, i)(xw(j)) == circle_degen_oracle(i, j)


def test_circle_level_two_faces():
    G = build_model("circle", 3)
    assert G.face(2, 0)(xw(0)) == IDENTITY
    assert G.face(2, 0)(xw(1)) == xw(0)
    assert G.face(2, 2)(xw(1)) == IDENTITY


@pytest.mark.parametrize("model,kw", [("circle", {}), ("sphere", {"n": 2}), ("sphere", {"n": 3}),
                                      ("wedge", {"J": 2}), ("kcircle", {})])
def test_simplicial_identities_hold(model, kw):
    build_model(model, 5, **kw)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 4), (3, 5), (4, 6)])
def test_sphere_alphabet_sizes(n, q):
    G = build_model("sphere", q, n=n, verify=False)
    assert len(G.alphabet(q)) == comb(q, n) == len(surjections(q, n))


def test_sphere_generator_names():
    G = build_model("sphere", 3, n=2)
    assert [str(g) for g in G.alphabet(2)] == ["s[]"]
    assert [str(g) for g in G.alphabet(3)] == ["s[0]", "s[1]", "s[2]"]
    assert G.face(3, 2)(ReducedWord.of(gen("s", 0))) == IDENTITY


@pytest.mark.parametrize("q", [1, 2, 3, 4])
def test_wedge_alphabet_size(q):
    G = build_model("wedge", 5, J=2, verify=False)
    assert len(G.alphabet(q)) == 2 * q


def test_unknown_model():
    with pytest.raises(ValueError):
        SimplicialFreeGroup("torus", 3)


def test_model_dump_is_json():
    data = json.loads(build_model("circle", 2).to_json())
    assert data["levels"][1]["faces"]["x[0]"] == ["1", "x[0]", "x[0]"]


# y-coordinates

letters = st.tuples(st.integers(0, 2), st.sampled_from([1, -1]))


@given(st.lists(letters, max_size=10))
def test_y_round_trip(pairs):
    G = build_model("circle", 4, verify=False)
    w = ReducedWord(Letter(gen("x", j), e) for j, e in pairs)
    assert G.from_y(G.to_y(w, 3), 3) == w
    v = ReducedWord(Letter(gen("y", j), e) for j, e in pairs)
    assert G.to_y(G.from_y(v, 3), 3) == v


def test_y_coordinates_at_level_two():
    G = build_model("circle", 3)
    assert G.from_y(yw(0), 2) == parse_word("x[0]*x[1]^-1")
    assert G.from_y(yw(1), 2) == xw(1)
    assert G.from_y(yw(-1), 2) == xw(0).inverse()
    assert G.from_y(G.y_minus(2), 2) == xw(0).inverse()


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_y_faces_match_table(q):
    G = build_model("circle", q + 1, verify=False)
    for k in range(q):
        for j in range(q + 1):
            assert G.y_face(q, j)(yw(k)) == y_table(q, j, k, "face")
            assert G.y_degen(q, j)(yw(k)) == y_table(q, j, k, "degen")


@pytest.mark.parametrize("q", [2, 3, 4])
def test_d1_kills_y0_and_s1_y0(q):
    G = build_model("circle", q + 1, verify=False)
    assert G.y_face(q, 1)(yw(0)).is_identity()
    assert G.y_degen(q, 1)(yw(0)) == yw(0) * yw(1)


# Moore generators


def test_level_two_cycles_weight_two():
    gens = moore_cycle_gens(2, 2)
    assert [str(g.tree) for g in gens] == ["[y[0], y[1]]", "[y[0], y[1]^-1]",
                                           "[y[0]^-1, y[1]]", "[y[0]^-1, y[1]^-1]"]
    assert len({g.word for g in gens}) == 4


@pytest.mark.parametrize("q,cap", [(2, 4), (3, 4)])
def test_cycles_are_killed_by_positive_faces(q, cap):
    G = build_model("circle", q + 1)
    for g in moore_cycle_gens(q, cap, model=G):
        assert all(G.y_face(q, j)(g.word).is_identity() for j in range(1, q + 1))


def test_cycle_generators_cover_all_indices():
    for g in moore_cycle_gens(3, 4):
        assert {l.gen.indices[0] for l in g.tree.leaves()} == {0, 1, 2}


def naive_weight_three_boundaries():
    G = build_model("circle", 3, verify=False)
    vals = {-1: G.y_minus(2), 0: yw(0), 1: yw(1)}
    seen = set()
    for order in itertools.permutations((-1, 0, 1)):
        for signs in itertools.product((1, -1), repeat=3):
            a, b, c = (vals[i] ** e for i, e in zip(order, signs))
            for w in (commutator(commutator(a, b), c), commutator(a, commutator(b, c))):
                if not w.is_identity() and w.inverse() not in seen:
                    seen.add(w)
    return seen


def test_boundary_minimal_weight_is_three():
    assert moore_boundary_gens(2, 2) == []
    gens = moore_boundary_gens(2, 3)
    assert min(g.tree.weight for g in gens) == 3
    oracle = naive_weight_three_boundaries()
    assert len(gens) == len(oracle) == 42
    assert all(g.word in oracle or g.word.inverse() in oracle for g in gens)


def test_boundaries_are_d0_of_shifted_cycles():
    G = build_model("circle", 4)
    d0 = G.y_face(3, 0)
    for g in moore_boundary_gens(2, 3, model=G):
        up = eval_bracket(shift_tree(g.tree))
        assert all(G.y_face(3, j)(up).is_identity() for j in range(1, 4))
        assert d0(up) == g.word


def test_boundary_d0_of_bracket_at_level_three():
    G = build_model("circle", 4)
    tree = left_normed(leaf(gen("y", 0)), leaf(gen("y", 1)), leaf(gen("y", 2)))
    image = G.y_face(3, 0)(eval_bracket(tree))
    y_minus = G.y_minus(2)
    assert image == commutator(commutator(y_minus, yw(0)), yw(1))


def test_wedge_cycles():
    gens = wedge_moore_gens(2, 2, 2)
    assert len(gens) == 16
    assert len({g.word for g in gens}) == 16


# the square-free K-model


@pytest.mark.parametrize("n", [2, 3, 4])
def test_k_model_lower_central_series_stops(n):
    xs = [xw(j) for j in range(n)]
    top = xs[0]
    for x in xs[1:]:
        top = commutator(top, x)
    assert not k_embed(top, n).is_one()
    # one more bracket must repeat a generator
    for x in xs:
        assert k_embed(commutator(top, x), n).is_one()


def test_k_model_kills_repeated_brackets():
    assert k_embed(commutator(commutator(xw(0), xw(1)), xw(0)), 2).is_one()
    assert not k_embed(commutator(xw(0), xw(1)), 2).is_one()
