"""Simplicial free groups on circles, spheres and wedges of circles.

A q-simplex of the n-sphere Delta[n]/boundary is an order-preserving
surjection ``[q] -> [n]``, stored as a tuple of q+1 values.  The face d_k
deletes entry k and the degeneracy s_k repeats it; a face that is no
longer surjective is the basepoint, which becomes 1 in Milnor's
construction.  Every nondegenerate-or-degenerate simplex other than the
basepoint is a free generator at its level.

Naming:

* circle (and the K-model):  ``x[j]`` is the simplex whose single jump sits
  between positions j and j+1, so level q has ``x[0] .. x[q-1]``.
* sphere(n): ``s[i1,...,ik]`` with ``i1 > ... > ik`` is ``s_i1 ... s_ik sigma``;
  ``s[]`` is sigma itself.
* wedge of circles: ``x[j,a]`` for circle a.

Circles and wedges also carry y-coordinates
``y_k = x_k x_(k+1)^-1`` (k < q-1), ``y_(q-1) = x_(q-1)``, and
``y_-1 = (y_0 ... y_(q-1))^-1 = x_0^-1``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

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
    eval_bracket,
    format_word,
    signed_letters,
)
from .lie.magnus import TruncatedSeries, embed


class SimplicialIdentityViolation(AssertionError):
    pass


MODELS = ("circle", "sphere", "wedge", "kcircle")

Y_CONVENTION = ("y_k = x_k*x_(k+1)^-1 for k < q-1, y_(q-1) = x_(q-1), "
                "y_-1 = (y_0*...*y_(q-1))^-1 = x_0^-1")


def surjections(q: int, n: int) -> list[tuple[int, ...]]:
    """Order-preserving surjections [q] -> [n], ordered by their jump positions."""
    out = []
    for jumps in itertools.combinations(range(1, q + 1), n):
        f, v = [], 0
        for p in range(q + 1):
            if v < n and p == jumps[v]:
                v += 1
            f.append(v)
        out.append(tuple(f))
    return out


def is_surjective(f: tuple[int, ...], n: int) -> bool:
    return f[0] == 0 and f[-1] == n and all(b - a <= 1 for a, b in zip(f, f[1:]))


def degeneracy_indices(f: tuple[int, ...]) -> tuple[int, ...]:
    """The canonical ``s_i1 ... s_ik`` with i1 > ... > ik producing f from sigma."""
    return tuple(sorted((p for p in range(len(f) - 1) if f[p] == f[p + 1]), reverse=True))


@dataclass(frozen=True)
class MooreGenerator:
    tree: BracketTree
    word: ReducedWord

    def to_dict(self) -> dict:
        return {"bracket": str(self.tree), "word": format_word(self.word)}


class SimplicialFreeGroup:
    """Milnor's construction on a finite simplicial set, levels up to ``max_level``.

    Face and degeneracy maps are materialized lazily as :class:`GenMap` and
    cached; :meth:`verify_identities` checks the simplicial identities on
    every generator.
    """

    def __init__(self, model: str, max_level: int, n: int = 1, J: int = 1):
        if model not in MODELS:
            raise ValueError(f"unknown model {model!r}")
        if max_level < 1:
            raise ValueError("max_level must be >= 1")
        self.model = model
        self.n = n if model == "sphere" else 1
        self.J = J if model == "wedge" else 1
        self.max_level = max_level
        self._faces: dict = {}
        self._degens: dict = {}

    # simplices and names

    @property
    def min_level(self) -> int:
        return self.n

    def simplices(self, q: int) -> list[tuple[int, tuple[int, ...]]]:
        fs = surjections(q, self.n)
        return [(a, f) for a in range(self.J) for f in fs]

    def name(self, alpha: int, f: tuple[int, ...]) -> GenSym:
        if self.model == "sphere":
            return GenSym("s", degeneracy_indices(f))
        jump = f.index(1) - 1
        if self.model == "wedge":
            return GenSym("x", (jump, alpha))
        return GenSym("x", (jump,))

    @lru_cache(maxsize=None)
    def alphabet(self, q: int) -> tuple[GenSym, ...]:
        if q < self.n:
            return ()
        return tuple(sorted(self.name(a, f) for a, f in self.simplices(q)))

    def _image(self, alpha: int, f: tuple[int, ...]) -> ReducedWord:
        if not is_surjective(f, self.n):
            return IDENTITY
        return ReducedWord.of(self.name(alpha, f))

    def face(self, q: int, k: int) -> GenMap:
        """d_k from level q to level q-1, for 0 <= k <= q."""
        if not 0 <= k <= q:
            raise ValueError(f"face index {k} out of range at level {q}")
        key = (q, k)
        m = self._faces.get(key)
        if m is None:
            images = {self.name(a, f): self._image(a, f[:k] + f[k + 1:]) for a, f in self.simplices(q)}
            m = self._faces[key] = GenMap(images, default="kill")
        return m

    def degen(self, q: int, k: int) -> GenMap:
        """s_k from level q to level q+1, for 0 <= k <= q."""
        if not 0 <= k <= q:
            raise ValueError(f"degeneracy index {k} out of range at level {q}")
        key = (q, k)
        m = self._degens.get(key)
        if m is None:
            images = {self.name(a, f): self._image(a, f[:k + 1] + f[k:]) for a, f in self.simplices(q)}
            m = self._degens[key] = GenMap(images, default="kill")
        return m

    def verify_identities(self) -> None:
        """Check all simplicial identities on generators up to ``max_level``."""
        for q in range(max(self.n, 1), self.max_level + 1):
            for g in self.alphabet(q):
                w = ReducedWord.of(g)
                for j in range(q + 1):
                    for i in range(j):
                        if q >= 2 and q - 1 >= self.n:
                            a = self.face(q - 1, i)(self.face(q, j)(w))
                            b = self.face(q - 1, j - 1)(self.face(q, i)(w))
                            self._expect(a == b, f"d{i} d{j} = d{j - 1} d{i} on {g} at level {q}")
                for i in range(q + 2):
                    for j in range(q + 1):
                        sw = self.degen(q, j)(w)
                        lhs = self.face(q + 1, i)(sw)
                        if i < j:
                            rhs = self.degen(q - 1, j - 1)(self.face(q, i)(w)) if q - 1 >= self.n else IDENTITY
                        elif i in (j, j + 1):
                            rhs = w
                        else:
                            rhs = self.degen(q - 1, j)(self.face(q, i - 1)(w)) if q - 1 >= self.n else IDENTITY
                        self._expect(lhs == rhs, f"d{i} s{j} on {g} at level {q}")
                if q + 1 <= self.max_level:
                    for j in range(q + 1):
                        for i in range(j + 1):
                            a = self.degen(q + 1, i)(self.degen(q, j)(w))
                            b = self.degen(q + 1, j + 1)(self.degen(q, i)(w))
                            self._expect(a == b, f"s{i} s{j} = s{j + 1} s{i} on {g} at level {q}")

    @staticmethod
    def _expect(ok: bool, what: str) -> None:
        if not ok:
            raise SimplicialIdentityViolation(what)

    def to_dict(self) -> dict:
        levels = []
        for q in range(self.n, self.max_level + 1):
            gens = self.alphabet(q)
            levels.append({
                "level": q,
                "alphabet": [str(g) for g in gens],
                "faces": {str(g): [format_word(self.face(q, k)(ReducedWord.of(g))) for k in range(q + 1)]
                          for g in gens} if q >= 1 else {},
                "degeneracies": {str(g): [format_word(self.degen(q, k)(ReducedWord.of(g)))
                                          for k in range(q + 1)] for g in gens},
            })
        return {"model": self.model, "n": self.n, "J": self.J, "max_level": self.max_level,
                "levels": levels}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    # y-coordinates (circle, wedge and K-model)

    def _check_y(self) -> None:
        if self.model == "sphere":
            raise ValueError("y-coordinates are defined for circle-type models only")

    def _xg(self, k: int, a: int) -> GenSym:
        return GenSym("x", (k, a)) if self.model == "wedge" else GenSym("x", (k,))

    def _yg(self, k: int, a: int) -> GenSym:
        return GenSym("y", (k, a)) if self.model == "wedge" else GenSym("y", (k,))

    def y_alphabet(self, q: int) -> tuple[GenSym, ...]:
        self._check_y()
        return tuple(sorted(self._yg(k, a) for a in range(self.J) for k in range(q)))

    def y_minus(self, q: int, a: int = 0) -> ReducedWord:
        """y_-1 at level q, in y-coordinates."""
        w = IDENTITY
        for k in range(q):
            w = w * ReducedWord.of(self._yg(k, a))
        return w.inverse()

    @lru_cache(maxsize=None)
    def _from_y_map(self, q: int) -> GenMap:
        images = {}
        for a in range(self.J):
            for k in range(q):
                x = ReducedWord.of(self._xg(k, a))
                images[self._yg(k, a)] = x * ReducedWord.of(self._xg(k + 1, a), -1) if k < q - 1 else x
            images[self._yg(-1, a)] = ReducedWord.of(self._xg(0, a), -1)
        return GenMap(images, default="identity")

    @lru_cache(maxsize=None)
    def _to_y_map(self, q: int) -> GenMap:
        images = {}
        for a in range(self.J):
            for k in range(q):
                w = IDENTITY
                for i in range(k, q):
                    w = w * ReducedWord.of(self._yg(i, a))
                images[self._xg(k, a)] = w
        return GenMap(images, default="identity")

    def from_y(self, w: ReducedWord, q: int) -> ReducedWord:
        """Rewrite a y-word at level q (y_-1 allowed) in x-letters."""
        self._check_y()
        return self._from_y_map(q)(w)

    def to_y(self, w: ReducedWord, q: int) -> ReducedWord:
        """Rewrite an x-word at level q in y-letters."""
        self._check_y()
        return self._to_y_map(q)(w)

    @lru_cache(maxsize=None)
    def expand_y_minus(self, q: int) -> GenMap:
        return GenMap({self._yg(-1, a): self.y_minus(q, a) for a in range(self.J)}, default="identity")

    @lru_cache(maxsize=None)
    def y_face(self, q: int, k: int) -> GenMap:
        """d_k at level q in y-coordinates on both sides."""
        self._check_y()
        d = self.face(q, k)
        images = {y: self.to_y(d(self.from_y(ReducedWord.of(y), q)), q - 1) for y in self.y_alphabet(q)}
        return GenMap(images, default="kill")

    @lru_cache(maxsize=None)
    def y_degen(self, q: int, k: int) -> GenMap:
        self._check_y()
        s = self.degen(q, k)
        images = {y: self.to_y(s(self.from_y(ReducedWord.of(y), q)), q + 1) for y in self.y_alphabet(q)}
        return GenMap(images, default="kill")

    __hash__ = object.__hash__


def build_model(model: str, max_level: int, n: int = 1, J: int = 1,
                verify: bool = True) -> SimplicialFreeGroup:
    G = SimplicialFreeGroup(model, max_level, n=n, J=J)
    if verify:
        G.verify_identities()
    return G


def y_table(q: int, j: int, k: int, kind: str) -> ReducedWord:
    """The closed-form face/degeneracy table for circles in y-coordinates.

    Faces (level q to q-1): ``d_j y_k`` is y_(k-1) for j <= k, 1 for j = k+1
    and y_k for j > k+1, where y_-1 means ``(y_0 ... y_(q-2))^-1``.
    Degeneracies: ``s_j y_k`` is y_(k+1) for j <= k, y_k y_(k+1) for j = k+1
    and y_k for j > k+1.
    """
    y = lambda i: ReducedWord.of(GenSym("y", (i,)))
    if kind == "face":
        if j <= k:
            if k == 0:
                w = IDENTITY
                for i in range(q - 1):
                    w = w * y(i)
                return w.inverse()
            return y(k - 1)
        return IDENTITY if j == k + 1 else y(k)
    if j <= k:
        return y(k + 1)
    return y(k) * y(k + 1) if j == k + 1 else y(k)


# ---------------------------------------------------------------------------
# Moore generators


def _index(l: Letter) -> int:
    return l.gen.indices[0]


def covered_brackets(letters: Sequence[GenSym], required: Iterable[int], weight_cap: int,
                     subst: GenMap | None = None, left_normed_only: bool = False,
                     min_weight: int | None = None, positive_only: bool = False
                     ) -> list[MooreGenerator]:
    """Bracket arrangements on signed letters whose first indices cover ``required``.

    Deduplicated by evaluated word up to inversion, first tree kept.
    """
    req = frozenset(required)
    if positive_only:
        leaves = [Leaf(Letter(g, 1)) for g in letters]
    else:
        leaves = [Leaf(l) for l in signed_letters(letters)]

    def accept(seq):
        return req <= {_index(t.letter) for t in seq}

    cache: dict = {}
    trees = enumerate_brackets(leaves, weight_cap, min_weight=min_weight or max(len(req), 1),
                               accept=accept, left_normed_only=left_normed_only)
    pairs = dedup_by_word(trees, lambda t: eval_bracket(t, subst, cache))
    return [MooreGenerator(t, w) for t, w in pairs]


def moore_cycle_gens(q: int, weight_cap: int, *, left_normed_only: bool = False,
                     model: SimplicialFreeGroup | None = None, verify: bool = True
                     ) -> list[MooreGenerator]:
    """Generators of the level-q Moore cycles of F(S^1), in y-coordinates."""
    if q < 1:
        raise ValueError("q must be >= 1")
    G = model or build_model("circle", q + 1, verify=False)
    gens = covered_brackets(G.y_alphabet(q), range(q), weight_cap, left_normed_only=left_normed_only)
    if verify:
        _verify_cycles(G, q, gens)
    return gens


def _verify_cycles(G: SimplicialFreeGroup, q: int, gens: Sequence[MooreGenerator]) -> None:
    faces = [G.y_face(q, j) for j in range(1, q + 1)]
    for g in gens:
        for j, d in enumerate(faces, start=1):
            if not d(g.word).is_identity():
                raise AssertionError(f"d{j} does not kill {g.tree}")


def shift_tree(t: BracketTree, by: int = 1) -> BracketTree:
    """Shift the first index of every leaf generator."""
    if isinstance(t, Leaf):
        g = t.letter.gen
        return Leaf(Letter(GenSym(g.family, (g.indices[0] + by,) + tuple(g.indices[1:])), t.letter.exp))
    return Node(shift_tree(t.left, by), shift_tree(t.right, by))


def moore_boundary_gens(q: int, weight_cap: int, *, model: SimplicialFreeGroup | None = None,
                        verify: bool = True, left_normed_only: bool = False
                        ) -> list[MooreGenerator]:
    """Brackets over y_-1, ..., y_(q-1) covering every index, y_-1 expanded.

    Each one is d_0 of the level-(q+1) cycle obtained by shifting indices up
    by one; ``verify`` checks that word by word.
    """
    G = model or build_model("circle", q + 1, verify=False)
    letters = (G._yg(-1, 0),) + G.y_alphabet(q) if G.model != "wedge" else \
        tuple(sorted(set(G.y_alphabet(q)) | {G._yg(-1, a) for a in range(G.J)}))
    gens = covered_brackets(letters, range(-1, q), weight_cap, subst=G.expand_y_minus(q),
                            left_normed_only=left_normed_only)
    if verify:
        d0 = G.y_face(q + 1, 0)
        cache: dict = {}
        for g in gens:
            up = eval_bracket(shift_tree(g.tree), None, cache)
            if d0(up) != g.word:
                raise AssertionError(f"{g.tree} is not d0 of its shifted cycle")
    return gens


def wedge_moore_gens(J: int, q: int, weight_cap: int, *, left_normed_only: bool = False,
                     verify: bool = True) -> list[MooreGenerator]:
    """Level-q Moore cycle generators of F(wedge of J circles), y-coordinates."""
    G = build_model("wedge", q + 1, J=J, verify=False)
    gens = covered_brackets(G.y_alphabet(q), range(q), weight_cap, left_normed_only=left_normed_only)
    if verify:
        _verify_cycles(G, q, gens)
    return gens


# ---------------------------------------------------------------------------
# the K-model: square-free truncation


def k_alphabet(q: int) -> tuple[GenSym, ...]:
    return tuple(GenSym("x", (j,)) for j in range(q))


def k_embed(w: ReducedWord, q: int | None = None,
            alphabet: Sequence[GenSym] | None = None) -> TruncatedSeries:
    """Image of an x-word in the square-free model of K(x_0, ..., x_(q-1))."""
    if alphabet is None:
        if q is None:
            q = 1 + max((g.indices[0] for g in w.generators()), default=-1)
        alphabet = k_alphabet(q)
    return embed(w, alphabet, max(len(alphabet), 1), square_free=True)


def k_multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    if not (a.square_free and b.square_free):
        raise ValueError("both factors must be square-free series")
    return a * b
