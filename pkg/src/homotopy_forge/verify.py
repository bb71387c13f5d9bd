"""Registry of invariant checks, run by ``homotopy-forge verify`` and the tests.

Each check is a module-level function ``check(seed) -> dict`` whose result
carries an ``ok`` flag.  Checks are independent, so they can run in a
process pool; ``HOMOTOPY_FORGE_THREADS`` caps its size (default 1, serial).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .kernels import (
    IteratedSpec,
    ProjectionSpec,
    SubgroupGraph,
    abelianized_matrix,
    count_bt,
    enumerate_at,
    enumerate_bt,
    evaluate_factors,
    iterated_a,
    project,
    rewrite_a_in_b,
    words_killed_by,
)
from .lie.linalg import smith_normal_form
from .pipelines import (
    commutator_boundary_check,
    cofinality_check,
    compute_one_stem_sphere,
    compute_pi2_circle,
    compute_pi_k_circle,
    lie_rank,
    samelson,
    samelson_pairs,
    samelson_property_check,
)
from .presentations import emit_presentation
from .simplicial import build_model, moore_cycle_gens, y_table
from .words import GenSym, ReducedWord, gen


@dataclass(frozen=True)
class Invariant:
    name: str
    check: Callable[[int], dict]
    description: str


def check_simplicial_identities(seed: int) -> dict:
    for model, kw in (("circle", {}), ("sphere", {"n": 2}), ("wedge", {"J": 2}), ("kcircle", {})):
        build_model(model, 5, **kw)
    return {"ok": True, "models": 4}


def check_y_table(seed: int) -> dict:
    G = build_model("circle", 6, verify=False)
    bad = 0
    for q in range(2, 6):
        for k in range(q):
            y = ReducedWord.of(GenSym("y", (k,)))
            for j in range(q + 1):
                if G.y_face(q, j)(y) != y_table(q, j, k, "face"):
                    bad += 1
                if G.y_degen(q, j)(y) != y_table(q, j, k, "degen"):
                    bad += 1
    return {"ok": bad == 0, "mismatches": bad}


def check_cycle_bruteforce(seed: int, max_len: int = 8, weight_cap: int = 4) -> dict:
    G = build_model("circle", 3)
    alph = G.y_alphabet(2)
    maps = [G.y_face(2, 1), G.y_face(2, 2)]
    gens = moore_cycle_gens(2, weight_cap, model=G)
    graph = SubgroupGraph(g.word for g in gens)
    killed = list(words_killed_by(alph, max_len, maps))
    missing = [w for w in killed if not graph.contains(w)]
    stray = [g for g in gens if not all(m(g.word).is_identity() for m in maps)]
    return {"ok": not missing and not stray, "killed_words": len(killed),
            "generators": len(gens), "missing": len(missing), "not_cycles": len(stray)}


def check_pi2_circle(seed: int) -> dict:
    r = compute_pi2_circle(4)
    ok = (r.per_degree[2].factors == (0,) and all(r.per_degree[d].is_trivial() for d in (3, 4))
          and r.stable)
    return {"ok": ok, "answer": r.answer}


def check_one_stem(seed: int) -> dict:
    answers = {}
    for n in (2, 3, 4):
        r = compute_one_stem_sphere(n, 4)
        answers[n] = r.answer
        if r.per_degree[2].nontrivial() != (2,) or not r.stable:
            return {"ok": False, "n": n, "answer": r.answer}
    return {"ok": True, "answers": answers}


def check_lie_ranks(seed: int) -> dict:
    ranks = [lie_rank(n) for n in range(1, 7)]
    return {"ok": ranks == [1, 1, 2, 6, 24, 120], "ranks": ranks}


def check_k_model(seed: int) -> dict:
    ranks = []
    for n in range(1, 6):
        r = compute_pi_k_circle(n)
        ranks.append(r.per_degree[n].free_rank)
    return {"ok": ranks == [1, 1, 2, 6, 24], "ranks": ranks}


def check_samelson(seed: int) -> dict:
    bad = []
    for p, a, q, b in samelson_pairs():
        direct, shuffle = samelson(a, p, b, q)
        if direct != shuffle:
            bad.append((p, str(a), q, str(b)))
    return {"ok": not bad, "mismatches": bad[:3]}


def check_samelson_properties(seed: int) -> dict:
    return samelson_property_check(seed)


def check_kernel_suite(seed: int) -> dict:
    failures = []
    cases = 0
    for s in range(1, 4):
        S = [gen("g", i) for i in range(s)]
        for t in range(s + 1):
            spec = ProjectionSpec(S, S[:t])
            for k in range(4):
                cases += 1
                A, B = enumerate_at(spec, k), enumerate_bt(spec, k)
                if not len(A) == len(B) == count_bt(spec, k):
                    failures.append(("count", s, t, k))
                if any(not project(x.word(), spec).is_identity() for x in A + B):
                    failures.append(("membership", s, t, k))
                if any(evaluate_factors(rewrite_a_in_b(a)) != a.word() for a in A):
                    failures.append(("rewrite", s, t, k))
                m = abelianized_matrix(spec, k)
                if m and smith_normal_form(m).diagonal != [1] * len(B):
                    failures.append(("abelianized", s, t, k))
    return {"ok": not failures, "cases": cases, "failures": failures[:3]}


def check_iterated(seed: int) -> dict:
    results = []
    cases = [
        ((0, 1), [(1,), (0,)], 8, 5),
        ((0, 1, 2), [(1, 2), (0, 2)], 6, 6),
    ]
    for letters, chain, max_len, cap in cases:
        S = [gen("y", i) for i in letters]
        Ts = [[gen("y", i) for i in T] for T in chain]
        maps = [ProjectionSpec(S, T).as_map() for T in Ts]
        out = iterated_a(IteratedSpec(S, Ts), cap)
        graph = SubgroupGraph(o.word for o in out)
        killed = list(words_killed_by(S, max_len, maps))
        ok = (all(graph.contains(w) for w in killed)
              and all(m(o.word).is_identity() for o in out for m in maps))
        results.append(ok)
    return {"ok": all(results), "cases": len(results)}


def check_commutator_boundary(seed: int) -> dict:
    return commutator_boundary_check(seed)


def check_cofinality(seed: int) -> dict:
    return cofinality_check(4)


def check_presentation_determinism(seed: int) -> dict:
    docs = [("s3", 1, {}), ("sigma_kzm", 1, {"m": 2}), ("wedge_s2", 1, {"J": 2})]
    ok = all(emit_presentation(t, n, **kw).to_json() == emit_presentation(t, n, **kw).to_json()
             for t, n, kw in docs)
    powers = emit_presentation("sigma_kzm", 1, m=2).relators[:2]
    ok = ok and [str(r.label) for r in powers] == ["x[0]^2", "x[1]^2"]
    return {"ok": ok}


REGISTRY: list[Invariant] = [
    Invariant("simplicial-identities", check_simplicial_identities,
              "face and degeneracy identities for every model"),
    Invariant("y-table", check_y_table, "y-coordinate faces and degeneracies match the closed form"),
    Invariant("cycles-bruteforce", check_cycle_bruteforce,
              "kernel words of length <= 8 at level 2 lie in the cycle subgroup"),
    Invariant("pi2-circle", check_pi2_circle, "pi_2 F(S^1) = Z"),
    Invariant("one-stem", check_one_stem, "pi_(n+2) S^(n+1) = Z/2 for n = 2, 3, 4"),
    Invariant("lie-ranks", check_lie_ranks, "rank Lie(n) = (n-1)! for n <= 6"),
    Invariant("k-model", check_k_model, "pi_n K(S^1) = Lie(n) for n <= 5"),
    Invariant("samelson", check_samelson, "direct and shuffle Samelson products agree"),
    Invariant("samelson-properties", check_samelson_properties,
              "Samelson products are bilinear and graded antisymmetric"),
    Invariant("kernel-suite", check_kernel_suite, "A-set and B-set agree for |S| <= 3, k <= 3"),
    Invariant("iterated-kernels", check_iterated, "iterated A-sets generate kernel intersections"),
    Invariant("commutator-boundary", check_commutator_boundary,
              "[cycle, g] has a boundary leading class"),
    Invariant("cofinality", check_cofinality, "left-normed cycles give the full graded lattice"),
    Invariant("presentation-determinism", check_presentation_determinism,
              "presentations are byte-stable"),
]


def thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("HOMOTOPY_FORGE_THREADS", "1")))
    except ValueError:
        return 1


def _run_one(args: tuple[str, int]) -> tuple[str, dict]:
    name, seed = args
    inv = next(i for i in REGISTRY if i.name == name)
    try:
        return name, inv.check(seed)
    except Exception as exc:  # a crash is a failed invariant
        return name, {"ok": False, "error": f"{type(exc).__name__}: {exc}"}


def run_invariants(seed: int = 0, names: list[str] | None = None) -> list[tuple[str, dict]]:
    """Run the selected invariants in registry order."""
    known = [i.name for i in REGISTRY]
    selected = known if not names else names
    unknown = [n for n in selected if n not in known]
    if unknown:
        raise KeyError(f"unknown invariant(s): {', '.join(unknown)}")
    jobs = [(n, seed) for n in known if n in selected]
    workers = min(thread_cap(), len(jobs))
    if workers <= 1:
        return [_run_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, jobs))
