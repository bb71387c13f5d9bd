"""Kernels of projection homomorphisms of free groups and their intersections.

For ``T`` a subset of ``S`` the projection ``F(S) -> F(T)`` kills S - T.  Its
kernel is freely generated both by conjugates ``phi^-1 x phi`` (the B-set)
and by left-normed commutators ``[[x, y1^e1], ..., yt^et]`` (the A-set),
with phi and the tail ranging over reduced words in F(T).  This module
enumerates both sets at a length horizon k, rewrites A-elements as
products of B-elements, and builds the iterated construction that
generates an intersection of several such kernels.

Subgroup membership for finitely generated subgroups is decided with
Stallings foldings (:class:`SubgroupGraph`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .words import (
    IDENTITY,
    BracketTree,
    GenMap,
    GenSym,
    Leaf,
    Letter,
    Node,
    ReducedWord,
    dedup_by_word,
    enumerate_brackets,
    enumerate_reduced_words,
    eval_bracket,
    format_word,
    left_normed,
    signed_letters,
)


class GeneratorOutsideAlphabet(ValueError):
    pass


@dataclass(frozen=True)
class ProjectionSpec:
    S: frozenset
    T: frozenset

    def __init__(self, S: Iterable[GenSym], T: Iterable[GenSym]):
        S, T = frozenset(S), frozenset(T)
        if not T <= S:
            raise ValueError("T must be a subset of S")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "T", T)

    @property
    def killed(self) -> tuple[GenSym, ...]:
        return tuple(sorted(self.S - self.T))

    @property
    def kept(self) -> tuple[GenSym, ...]:
        return tuple(sorted(self.T))

    def as_map(self) -> GenMap:
        return GenMap({g: IDENTITY for g in self.S - self.T}, default="identity")


def project(w: ReducedWord, spec: ProjectionSpec) -> ReducedWord:
    outside = w.generators() - spec.S
    if outside:
        raise GeneratorOutsideAlphabet(f"generator {sorted(outside)[0]} is not in S")
    return ReducedWord(l for l in w.letters if l.gen in spec.T)


@dataclass(frozen=True)
class ConjugateGenerator:
    """``phi^-1 x phi``."""

    phi: ReducedWord
    x: GenSym

    def word(self) -> ReducedWord:
        return self.phi.inverse() * ReducedWord.of(self.x) * self.phi

    def __str__(self) -> str:
        if self.phi.is_identity():
            return str(self.x)
        return f"({format_word(self.phi.inverse())})*{self.x}*({format_word(self.phi)})"


@dataclass(frozen=True)
class CommGenerator:
    """``[[x, y1^e1], ..., yt^et]``; the empty tail denotes x itself."""

    x: GenSym
    tail: tuple[Letter, ...] = ()

    def tree(self) -> BracketTree:
        return left_normed(Leaf(Letter(self.x, 1)), *(Leaf(l) for l in self.tail))

    def word(self) -> ReducedWord:
        return eval_bracket(self.tree())

    def __str__(self) -> str:
        return str(self.tree())


def enumerate_bt(spec: ProjectionSpec, k: int) -> list[ConjugateGenerator]:
    phis = list(enumerate_reduced_words(spec.kept, k))
    return [ConjugateGenerator(phi, x) for x in spec.killed for phi in phis]


def enumerate_at(spec: ProjectionSpec, k: int) -> list[CommGenerator]:
    tails = list(enumerate_reduced_words(spec.kept, k))
    return [CommGenerator(x, t.letters) for x in spec.killed for t in tails]


def count_bt(spec: ProjectionSpec, k: int) -> int:
    t = len(spec.T)
    if t == 0:
        return len(spec.killed)
    return len(spec.killed) * (1 + sum(2 * t * (2 * t - 1) ** (l - 1) for l in range(1, k + 1)))


Factor = tuple[ConjugateGenerator, int]


def rewrite_a_in_b(g: CommGenerator) -> list[Factor]:
    """Write an A-generator as a product of B-generators to powers +-1.

    With ``w' = [[x, y1^e1], ..., y(t-1)^e(t-1)] = prod (phi_j^-1 x_j phi_j)^eta_j``
    one has ``[w', y^e] = w'^-1 * y^-e w' y^e``, and conjugating each factor
    by ``y^e`` replaces phi_j by the reduced word ``phi_j y^e``.
    """
    factors: list[Factor] = [(ConjugateGenerator(IDENTITY, g.x), 1)]
    for l in g.tail:
        y = ReducedWord._trusted((l,))
        inv = [(c, -e) for c, e in reversed(factors)]
        shifted = [(ConjugateGenerator(c.phi * y, c.x), e) for c, e in factors]
        factors = inv + shifted
    return factors


def evaluate_factors(factors: Sequence[Factor]) -> ReducedWord:
    w = IDENTITY
    for c, e in factors:
        cw = c.word()
        w = w * (cw if e == 1 else cw.inverse())
    return w


def abelianized_matrix(spec: ProjectionSpec, k: int) -> list[list[int]]:
    """Exponent-sum matrix of the A-set rewritten in the B-set, both at horizon k."""
    bs = enumerate_bt(spec, k)
    col = {b: i for i, b in enumerate(bs)}
    rows = []
    for a in enumerate_at(spec, k):
        r = [0] * len(bs)
        for c, e in rewrite_a_in_b(a):
            r[col[c]] += e
        rows.append(r)
    return rows


# ---------------------------------------------------------------------------
# iterated construction for intersections of kernels


@dataclass(frozen=True)
class IteratedSpec:
    S: tuple[GenSym, ...]
    chain: tuple[frozenset, ...]

    def __init__(self, S: Iterable[GenSym], chain: Iterable[Iterable[GenSym]]):
        S = tuple(sorted(set(S)))
        chain = tuple(frozenset(t) for t in chain)
        for t in chain:
            if not t <= set(S):
                raise ValueError("every chain member must be a subset of S")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "chain", chain)


@dataclass(frozen=True)
class LabeledBracket:
    tree: BracketTree
    word: ReducedWord

    def to_dict(self) -> dict:
        return {"bracket": str(self.tree), "word": format_word(self.word)}


def _tree_gens(t: BracketTree) -> set[GenSym]:
    return {l.gen for l in t.leaves()}


def _power(t: BracketTree, e: int) -> BracketTree:
    return t if e == 1 else t.inverse()


def _kernel_step(current: list[BracketTree], keep: list[BracketTree],
                 weight_cap: int) -> list[BracketTree]:
    """A-set of the projection from F(current) onto F(keep), as trees."""
    keep_set = set(keep)
    killed = [t for t in current if t not in keep_set]
    out = []
    # tails are reduced words over the symbols of ``keep``
    sym = [(i, e) for i in range(len(keep)) for e in (1, -1)]

    def extend(tree: BracketTree, weight: int, last: tuple[int, int] | None):
        out.append(tree)
        for i, e in sym:
            if last is not None and last == (i, -e):
                continue
            w = weight + keep[i].weight
            if w > weight_cap:
                continue
            extend(Node(tree, _power(keep[i], e)), w, (i, e))

    for x in killed:
        if x.weight <= weight_cap:
            extend(x, x.weight, None)
    return out


def iterated_a(spec: IteratedSpec, weight_cap: int) -> list[LabeledBracket]:
    """Members of the iterated A-set of weight at most ``weight_cap``.

    Stage 1 is the A-set of the first projection.  Stage j keeps the
    elements whose leaves all lie in T_j, treats them as free symbols and
    takes the A-set of the projection onto them.
    """
    if not spec.chain:
        raise ValueError("chain must be nonempty")
    current: list[BracketTree] = [Leaf(Letter(g, 1)) for g in spec.S]
    for T in spec.chain:
        keep = [t for t in current if _tree_gens(t) <= T]
        current = _kernel_step(current, keep, weight_cap)
    cache: dict = {}
    return [LabeledBracket(t, eval_bracket(t, None, cache)) for t in current]


@dataclass
class FatCommutatorSet:
    """Brackets over conjugate symbols, with the symbol -> conjugate table.

    With ``conj_len == 0`` the symbols are the generators themselves and
    ``conjugates`` is empty.
    """

    gens: list[LabeledBracket]
    conjugates: dict = field(default_factory=dict)

    def words(self) -> list[ReducedWord]:
        return [g.word for g in self.gens]

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)


def fat_commutator_gens(families: Sequence[Iterable[GenSym]], weight_cap: int,
                        conj_len: int = 0, alphabet: Iterable[GenSym] | None = None,
                        dedup: bool = True) -> FatCommutatorSet:
    """Generators of the fat commutator subgroup of the normal closures of families.

    Leaves are conjugates ``phi^-1 g^e phi`` with g in some family and phi a
    reduced word of length at most ``conj_len`` over ``alphabet`` (default:
    the union of the families).  A leaf sequence is kept when it meets every
    family.
    """
    fams = [frozenset(f) for f in families]
    if not fams:
        raise ValueError("need at least one family")
    k = len(fams)
    if weight_cap < k:
        return FatCommutatorSet([])
    alph = sorted(set(alphabet) if alphabet is not None else set().union(*fams))
    base = sorted(set().union(*fams))
    member = {g: frozenset(i for i, f in enumerate(fams) if g in f) for g in base}
    if conj_len == 0:
        syms, subst, conjugates = base, None, {}
        member_of = member
    else:
        syms, images, member_of = [], {}, {}
        for g in base:
            for phi in enumerate_reduced_words(alph, conj_len):
                s = GenSym("c", (len(syms),))
                syms.append(s)
                images[s] = phi.inverse() * ReducedWord.of(g) * phi
                member_of[s] = member[g]
        subst = GenMap(images, default="identity")
        conjugates = images
    leaves = [Leaf(l) for l in signed_letters(syms)]
    need = frozenset(range(k))

    def accept(seq):
        got: set[int] = set()
        for t in seq:
            got |= member_of[t.letter.gen]
        return need <= got

    cache: dict = {}
    trees = enumerate_brackets(leaves, weight_cap, accept=accept)
    evaluate = lambda t: eval_bracket(t, subst, cache)
    pairs = dedup_by_word(trees, evaluate) if dedup else [(t, evaluate(t)) for t in trees]
    return FatCommutatorSet([LabeledBracket(t, w) for t, w in pairs], conjugates)


# ---------------------------------------------------------------------------
# Stallings foldings


class SubgroupGraph:
    """Folded core graph of a finitely generated subgroup of a free group."""

    def __init__(self, gens: Iterable[ReducedWord] = ()):
        self.parent: list[int] = [0]
        self.adj: list[dict[Letter, int]] = [{}]
        self.ngens = 0
        for w in gens:
            self.add(w)

    def _find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def _new(self) -> int:
        self.parent.append(len(self.parent))
        self.adj.append({})
        return len(self.parent) - 1

    def add(self, w: ReducedWord) -> None:
        """Add a generator as a loop at the base vertex, then fold."""
        if w.is_identity():
            return
        self.ngens += 1
        pending: list[tuple[int, Letter, int]] = []
        v = 0
        letters = w.letters
        for i, l in enumerate(letters):
            u = 0 if i == len(letters) - 1 else self._new()
            pending.append((v, l, u))
            pending.append((u, l.inverse(), v))
            v = u
        self._fold(pending)

    def _fold(self, pending: list) -> None:
        while pending:
            u, l, v = pending.pop()
            u, v = self._find(u), self._find(v)
            e = self.adj[u].get(l)
            if e is None:
                self.adj[u][l] = v
                continue
            e = self._find(e)
            if e == v:
                continue
            # merge v into e (keep the smaller id as root so the base stays 0)
            a, b = (e, v) if e < v else (v, e)
            self.parent[b] = a
            for l2, t in self.adj[b].items():
                pending.append((a, l2, t))
            self.adj[b] = {}

    def contains(self, w: ReducedWord) -> bool:
        v = 0
        for l in w.letters:
            t = self.adj[v].get(l)
            if t is None:
                return False
            v = self._find(t)
        return v == 0

    @property
    def size(self) -> int:
        return sum(1 for i in range(len(self.parent)) if self._find(i) == i)


def in_subgroup(w: ReducedWord, gens: Iterable[ReducedWord]) -> bool:
    return SubgroupGraph(gens).contains(w)


def words_killed_by(alphabet: Sequence[GenSym], max_len: int,
                    maps: Sequence[GenMap]) -> Iterator[ReducedWord]:
    """Reduced words of length <= max_len sent to 1 by every map."""
    for w in enumerate_reduced_words(alphabet, max_len):
        if all(m(w).is_identity() for m in maps):
            yield w


# ---------------------------------------------------------------------------
# dumps


def dump_jsonl(items: Iterable, kind: str) -> str:
    lines = []
    for it in items:
        if isinstance(it, ConjugateGenerator):
            rec = {"kind": kind, "form": str(it), "phi": format_word(it.phi), "x": str(it.x),
                   "word": format_word(it.word())}
        elif isinstance(it, CommGenerator):
            rec = {"kind": kind, "bracket": str(it), "word": format_word(it.word())}
        else:
            rec = {"kind": kind, **it.to_dict()}
        lines.append(json.dumps(rec, sort_keys=True))
    return "\n".join(lines) + ("\n" if lines else "")
