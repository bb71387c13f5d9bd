import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homotopy_forge.kernels import (
    CommGenerator,
    ConjugateGenerator,
    GeneratorOutsideAlphabet,
    IteratedSpec,
    ProjectionSpec,
    SubgroupGraph,
    abelianized_matrix,
    count_bt,
    dump_jsonl,
    enumerate_at,
    enumerate_bt,
    evaluate_factors,
    fat_commutator_gens,
    in_subgroup,
    iterated_a,
    project,
    rewrite_a_in_b,
    words_killed_by,
)
from homotopy_forge.lie.linalg import smith_normal_form
from homotopy_forge.words import (
    IDENTITY,
    Letter,
    ReducedWord,
    commutator,
    enumerate_reduced_words,
    gen,
    parse_word,
)

X, Y, Z = gen("x"), gen("y"), gen("z")
x, y = ReducedWord.of(X), ReducedWord.of(Y)
XY = ProjectionSpec([X, Y], [Y])


def test_project_examples():
    assert project(parse_word("x[]*y[]*x[]^-1"), XY) == y
    assert project(parse_word("y[]*y[]"), XY) == parse_word("y[]*y[]")
    assert project(commutator(x, y), XY) == IDENTITY


def test_project_rejects_foreign_generators():
    with pytest.raises(GeneratorOutsideAlphabet):
        project(ReducedWord.of(Z), XY)


def test_projection_spec_requires_subset():
    with pytest.raises(ValueError):
        ProjectionSpec([X], [Y])


def test_b_set_small_case():
    words = {c.word() for c in enumerate_bt(XY, 1)}
    assert words == {x, y.inverse() * x * y, y * x * y.inverse()}


def test_a_set_small_case():
    words = {a.word() for a in enumerate_at(XY, 1)}
    assert words == {x, commutator(x, y), commutator(x, y.inverse())}


def test_horizon_zero_is_the_killed_set():
    spec = ProjectionSpec([X, Y, Z], [Z])
    assert [c.word() for c in enumerate_bt(spec, 0)] == [x, y]
    assert [a.word() for a in enumerate_at(spec, 0)] == [x, y]


def oracle_count(s, t, k):
    return (s - t) * sum(1 if l == 0 else 2 * t * (2 * t - 1) ** (l - 1) for l in range(k + 1))


@pytest.mark.parametrize("s", [1, 2, 3])
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_counts_agree(s, k):
    S = [gen("g", i) for i in range(s)]
    for t in range(s + 1):
        spec = ProjectionSpec(S, S[:t])
        A, B = enumerate_at(spec, k), enumerate_bt(spec, k)
        assert len(A) == len(B) == count_bt(spec, k) == oracle_count(s, t, k)
        assert len({a.word() for a in A}) == len(A)
        assert all(project(g.word(), spec).is_identity() for g in A + B)


def test_rewrite_single_commutator():
    g = CommGenerator(X, (Letter(Y, 1),))
    factors = rewrite_a_in_b(g)
    assert factors == [(ConjugateGenerator(IDENTITY, X), -1), (ConjugateGenerator(y, X), 1)]
    assert evaluate_factors(factors) == commutator(x, y)


def test_rewrite_depth_two():
    g = CommGenerator(X, (Letter(Y, 1), Letter(Y, -1)))
    factors = rewrite_a_in_b(g)
    assert all(len(c.phi) <= 2 for c, _ in factors)
    assert evaluate_factors(factors) == commutator(commutator(x, y), y.inverse())


@pytest.mark.parametrize("s", [2, 3])
def test_rewrite_round_trip_exhaustive(s):
    S = [gen("g", i) for i in range(s)]
    for t in range(1, s):
        spec = ProjectionSpec(S, S[:t])
        for a in enumerate_at(spec, 2):
            assert evaluate_factors(rewrite_a_in_b(a)) == a.word()


@pytest.mark.parametrize("s,t,k", [(2, 1, 3), (3, 1, 3), (3, 2, 3)])
def test_abelianized_lattices_agree(s, t, k):
    S = [gen("g", i) for i in range(s)]
    spec = ProjectionSpec(S, S[:t])
    m = abelianized_matrix(spec, k)
    assert len(m) == len(m[0])
    assert smith_normal_form(m).diagonal == [1] * len(m)


# iterated construction

Y0, Y1, Y2 = gen("y", 0), gen("y", 1), gen("y", 2)


def test_iterated_single_step_is_the_a_set():
    spec = IteratedSpec([Y0, Y1], [[Y1]])
    got = {o.word for o in iterated_a(spec, 3)}
    want = {a.word() for a in enumerate_at(ProjectionSpec([Y0, Y1], [Y1]), 2)}
    assert got == want


def test_iterated_outputs_mention_every_letter():
    out = iterated_a(IteratedSpec([Y0, Y1], [[Y1], [Y0]]), 3)
    assert out
    for o in out:
        assert {l.gen for l in o.tree.leaves()} == {Y0, Y1}


def test_iterated_products_are_killed():
    spec = IteratedSpec([Y0, Y1, Y2], [[Y1, Y2], [Y0, Y2]])
    maps = [ProjectionSpec(spec.S, T).as_map() for T in spec.chain]
    out = [o.word for o in iterated_a(spec, 4)]
    rng = random.Random(11)
    for _ in range(200):
        w = IDENTITY
        for _ in range(rng.randint(1, 4)):
            w = w * (rng.choice(out) ** rng.choice((1, -1)))
        assert all(m(w).is_identity() for m in maps)


def test_iterated_generates_the_intersection():
    S = [Y0, Y1]
    spec = IteratedSpec(S, [[Y1], [Y0]])
    maps = [ProjectionSpec(S, T).as_map() for T in spec.chain]
    graph = SubgroupGraph(o.word for o in iterated_a(spec, 5))
    killed = list(words_killed_by(S, 8, maps))
    assert len(killed) == 361
    assert all(graph.contains(w) for w in killed)


# fat commutators

A, B = gen("a"), gen("b")


def test_fat_two_families():
    fat = fat_commutator_gens([[A], [B]], 2)
    words = fat.words()
    a, b = ReducedWord.of(A), ReducedWord.of(B)
    assert commutator(a, b) in words
    assert all(w != commutator(a, a) for w in words)
    assert len(fat) == 4


def test_fat_single_family():
    fat = fat_commutator_gens([[A]], 1)
    assert fat.words() == [ReducedWord.of(A)]


def test_fat_commutators_equal_the_kernel_intersection():
    maps = [ProjectionSpec([A, B], [B]).as_map(), ProjectionSpec([A, B], [A]).as_map()]
    fat = fat_commutator_gens([[A], [B]], 2, conj_len=2)
    assert all(m(w).is_identity() for w in fat.words() for m in maps)
    graph = SubgroupGraph(fat.words())
    assert all(graph.contains(w) for w in words_killed_by([A, B], 8, maps))


def test_fat_conjugate_table():
    fat = fat_commutator_gens([[A], [B]], 2, conj_len=1)
    assert len(fat.conjugates) == 2 * 5
    for w in fat.conjugates.values():
        assert sorted((w.exponent_sum(A), w.exponent_sum(B))) == [0, 1]


# Stallings foldings

letters = st.tuples(st.sampled_from([A, B]), st.sampled_from([1, -1]))
words = st.lists(letters, min_size=1, max_size=6).map(
    lambda ps: ReducedWord(Letter(g, e) for g, e in ps))


@given(st.lists(words, min_size=1, max_size=3), st.lists(st.integers(0, 2), max_size=5))
def test_products_of_generators_are_members(gens, picks):
    graph = SubgroupGraph(gens)
    w = IDENTITY
    for i in picks:
        w = w * gens[i % len(gens)]
    assert graph.contains(w)
    assert graph.contains(w.inverse())


def test_membership_examples():
    a, b = ReducedWord.of(A), ReducedWord.of(B)
    assert in_subgroup(a ** 4, [a ** 2])
    assert not in_subgroup(a ** 3, [a ** 2])
    assert not in_subgroup(a, [commutator(a, b)])
    assert in_subgroup(commutator(b, a), [commutator(a, b)])


def test_full_rank_subgroup_by_brute_force():
    a, b = ReducedWord.of(A), ReducedWord.of(B)
    graph = SubgroupGraph([a * b, b * a, a * a])
    # index-two subgroup of even-length words
    for w in enumerate_reduced_words([A, B], 5):
        assert graph.contains(w) == (len(w) % 2 == 0)


def test_dump_jsonl():
    text = dump_jsonl(enumerate_at(XY, 1), "at")
    recs = [json.loads(line) for line in text.splitlines()]
    assert recs[1] == {"bracket": "[x[], y[]]", "kind": "at", "word": "x[]^-1*y[]^-1*x[]*y[]"}
    text = dump_jsonl(enumerate_bt(XY, 1), "bt")
    assert json.loads(text.splitlines()[0])["x"] == "x[]"
