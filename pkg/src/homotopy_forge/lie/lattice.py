"""Graded sublattices of the free Lie ring, degree by degree.

A :class:`GradedLattice` stores, for each degree s up to a cap c, a
Hermite-normal-form basis of a sublattice of the degree-s free Lie ring
on an ordered alphabet, in Lyndon coordinates.  It is the graded shadow
of a subgroup of a free group along the lower central series.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..words import GenSym, ReducedWord, parse_letter
from .linalg import AbelianInvariants, Echelon, intersect_lattices, smith_normal_form
from .lyndon import bracket_coordinates, lyndon_index, lyndon_words, witt_number
from .magnus import LieVector, embed, gamma_degree, lie_component


class NotASublattice(ValueError):
    def __init__(self, degree: int, detail: str = ""):
        super().__init__(f"degree {degree}: sub is not contained in amb {detail}".rstrip())
        self.degree = degree


class ClosureDidNotStabilize(RuntimeError):
    pass


def _to_row(coords: dict, k: int, s: int) -> dict[int, int]:
    idx = lyndon_index(k, s)
    return {idx[w]: c for w, c in coords.items() if c}


def _from_row(row: dict[int, int], k: int, s: int) -> dict:
    words = lyndon_words(k, s)
    return {words[j]: c for j, c in row.items() if c}


@dataclass
class GradedLattice:
    alphabet: tuple[GenSym, ...]
    max_degree: int
    per_degree: dict[int, Echelon] = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.alphabet)

    def _ech(self, s: int) -> Echelon:
        e = self.per_degree.get(s)
        if e is None:
            e = self.per_degree[s] = Echelon()
        return e

    def add(self, v: LieVector) -> bool:
        if v.alphabet != self.alphabet:
            raise ValueError("alphabet mismatch")
        if v.degree > self.max_degree or not v.coords:
            return False
        return self._ech(v.degree).insert(_to_row(v.coords, self.k, v.degree))

    def add_coords(self, s: int, coords: dict) -> bool:
        if s > self.max_degree or not coords:
            return False
        return self._ech(s).insert(_to_row(coords, self.k, s))

    def rank(self, s: int) -> int:
        e = self.per_degree.get(s)
        return e.rank if e else 0

    def rows(self, s: int) -> list[dict[int, int]]:
        e = self.per_degree.get(s)
        return e.hermite() if e else []

    def basis(self, s: int) -> list[LieVector]:
        return [LieVector(self.alphabet, s, _from_row(r, self.k, s)) for r in self.rows(s)]

    def dense_rows(self, s: int) -> list[tuple[int, ...]]:
        width = witt_number(self.k, s)
        out = []
        for r in self.rows(s):
            d = [0] * width
            for j, x in r.items():
                d[j] = x
            out.append(tuple(d))
        return out

    def contains(self, v: LieVector) -> bool:
        if not v.coords:
            return True
        e = self.per_degree.get(v.degree)
        return e is not None and e.contains(_to_row(v.coords, self.k, v.degree))

    def degrees(self) -> list[int]:
        return list(range(1, self.max_degree + 1))

    def ranks(self) -> dict[int, int]:
        return {s: self.rank(s) for s in self.degrees()}

    def copy(self) -> "GradedLattice":
        out = GradedLattice(self.alphabet, self.max_degree)
        for s in self.per_degree:
            for r in self.rows(s):
                out._ech(s).insert(r)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedLattice):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.max_degree == other.max_degree
                and all(self.rows(s) == other.rows(s) for s in self.degrees()))

    # serialization

    def to_dict(self) -> dict:
        degs = []
        for s in self.degrees():
            degs.append({
                "degree": s,
                "labels": [" ".join(str(self.alphabet[i]) for i in w) for w in lyndon_words(self.k, s)],
                "rows": [list(r) for r in self.dense_rows(s)],
            })
        return {"alphabet": [str(g) for g in self.alphabet], "max_degree": self.max_degree,
                "degrees": degs}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "GradedLattice":
        alphabet = tuple(parse_letter(a).gen for a in data["alphabet"])
        out = cls(alphabet, data["max_degree"])
        for d in data["degrees"]:
            for r in d["rows"]:
                out._ech(d["degree"]).insert({j: x for j, x in enumerate(r) if x})
        return out


def full_lattice(alphabet: Sequence[GenSym], c: int) -> GradedLattice:
    """The whole free Lie ring truncated at degree c."""
    out = GradedLattice(tuple(alphabet), c)
    k = len(alphabet)
    for s in range(1, c + 1):
        for j in range(witt_number(k, s)):
            out._ech(s).insert({j: 1})
    return out


def leading_vectors(gens: Iterable[ReducedWord], alphabet: Sequence[GenSym], c: int,
                    square_free: bool = False) -> list[LieVector]:
    """Leading Lie terms of the gens whose gamma-degree is at most c."""
    out = []
    for w in gens:
        ser = embed(w, alphabet, c, square_free)
        d = gamma_degree(ser)
        if d != math.inf:
            out.append(lie_component(ser, int(d)))
    return out


def close(lat: GradedLattice, normal: bool = True, products: bool | None = None) -> GradedLattice:
    """Close a graded lattice in place under Lie brackets.

    ``normal`` adds brackets with every degree-1 generator (the graded image
    of a normal closure; the result is an ideal).  ``products`` adds
    brackets between stored elements (the graded image of a subgroup).  For
    an ideal the latter adds nothing, so it defaults to ``not normal``.
    Degrees are processed in increasing order, so one pass reaches the
    fixed point; a verification pass confirms it.
    """
    if products is None:
        products = not normal
    c, k = lat.max_degree, lat.k
    letters = [{(i,): 1} for i in range(k)]
    for rounds in range(1, c + 1):
        grew = False
        for s in range(2, c + 1):
            if normal:
                for row in lat.rows(s - 1):
                    coords = _from_row(row, k, s - 1)
                    for x in letters:
                        if lat.add_coords(s, bracket_coordinates(coords, x)):
                            grew = True
            if products:
                for p in range(1, s // 2 + 1):
                    q = s - p
                    left = [_from_row(r, k, p) for r in lat.rows(p)]
                    right = left if p == q else [_from_row(r, k, q) for r in lat.rows(q)]
                    for i, a in enumerate(left):
                        for j, b in enumerate(right):
                            if p == q and j <= i:
                                continue
                            if lat.add_coords(s, bracket_coordinates(a, b)):
                                grew = True
        if not grew:
            return lat
    raise ClosureDidNotStabilize(f"closure did not stabilize within {c} rounds")


def graded_lattice(gens: Iterable[ReducedWord], alphabet: Sequence[GenSym], c: int, *,
                   normal: bool = True, seeds: Iterable[LieVector] = (),
                   square_free: bool = False) -> GradedLattice:
    """Graded lattice spanned by leading terms of ``gens`` plus ``seeds``, closed."""
    lat = GradedLattice(tuple(alphabet), c)
    for v in leading_vectors(gens, alphabet, c, square_free):
        lat.add(v)
    for v in seeds:
        lat.add(v)
    return close(lat, normal=normal)


def normal_graded_lattice(gens: Iterable[ReducedWord], alphabet: Sequence[GenSym],
                          c: int) -> GradedLattice:
    return graded_lattice(gens, alphabet, c, normal=True)


def express_in(amb_rows: list[dict[int, int]], target: dict[int, int]) -> list[int] | None:
    """Integer coefficients x with sum x_j amb_rows[j] == target, or None.

    ``amb_rows`` must be in echelon form with distinct leading columns.
    """
    order = sorted(range(len(amb_rows)), key=lambda j: min(amb_rows[j]))
    rem = dict(target)
    x = [0] * len(amb_rows)
    for j in order:
        r = amb_rows[j]
        p = min(r)
        e = rem.get(p, 0)
        if not e:
            continue
        if e % r[p]:
            return None
        q = e // r[p]
        x[j] = q
        for col, v in r.items():
            t = rem.get(col, 0) - q * v
            if t:
                rem[col] = t
            else:
                rem.pop(col, None)
        if rem and min(rem) < p:
            return None
    return None if rem else x


def graded_quotient(amb: GradedLattice, sub: GradedLattice) -> dict[int, AbelianInvariants]:
    """Per degree, the invariants of amb/sub; sub must lie inside amb."""
    if amb.alphabet != sub.alphabet:
        raise ValueError("alphabet mismatch")
    out = {}
    for s in range(1, min(amb.max_degree, sub.max_degree) + 1):
        A = amb.rows(s)
        X = []
        for r in sub.rows(s):
            x = express_in(A, r)
            if x is None:
                raise NotASublattice(s)
            X.append(x)
        res = smith_normal_form(X, ncols=len(A))
        out[s] = res.invariants()
    return out


def intersect(a: GradedLattice, b: GradedLattice) -> GradedLattice:
    if a.alphabet != b.alphabet:
        raise ValueError("alphabet mismatch")
    c = min(a.max_degree, b.max_degree)
    out = GradedLattice(a.alphabet, c)
    for s in range(1, c + 1):
        for r in intersect_lattices(a.rows(s), b.rows(s)):
            out._ech(s).insert(r)
    return out


def join(a: GradedLattice, b: GradedLattice) -> GradedLattice:
    out = a.copy()
    for s in b.per_degree:
        if s <= out.max_degree:
            for r in b.rows(s):
                out._ech(s).insert(r)
    return out


def is_sublattice(sub: GradedLattice, amb: GradedLattice) -> bool:
    for s in sub.per_degree:
        e = amb.per_degree.get(s)
        for r in sub.rows(s):
            if e is None or not e.contains(r):
                return False
    return True
