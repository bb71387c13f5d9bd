"""Magnus embedding of free groups into truncated noncommutative series.

``g -> 1 + X_g`` and ``g^-1 -> 1 - X_g + X_g^2 - ...``, truncated above a
fixed degree.  The gamma-degree of a word (the least degree of a nonzero
non-constant coefficient) detects membership in the lower central series,
and the homogeneous component in that degree is a Lie element.

With ``square_free=True`` every monomial containing a repeated letter is
dropped; that quotient kills exactly the brackets with a repeated
generator and is the model used for the K-construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from ..words import GenSym, ReducedWord
from .lyndon import NotALieElement, lie_coordinates, witt_number, lyndon_words


class UnknownGenerator(KeyError):
    pass


class TruncatedSeries:
    """An integer noncommutative series truncated above ``max_degree``."""

    __slots__ = ("alphabet", "max_degree", "coeffs", "square_free", "_index")

    def __init__(self, alphabet: Sequence[GenSym], max_degree: int,
                 coeffs: dict | None = None, square_free: bool = False):
        self.alphabet = tuple(alphabet)
        self.max_degree = max_degree
        self.square_free = square_free
        self.coeffs: dict[tuple[int, ...], int] = {} if coeffs is None else coeffs
        self._index: dict[GenSym, int] | None = None

    def _like(self, coeffs: dict) -> "TruncatedSeries":
        s = TruncatedSeries(self.alphabet, self.max_degree, coeffs, self.square_free)
        s._index = self._index
        return s

    @property
    def index(self) -> dict[GenSym, int]:
        if self._index is None:
            self._index = {g: i for i, g in enumerate(self.alphabet)}
        return self._index

    @classmethod
    def one(cls, alphabet, max_degree, square_free=False) -> "TruncatedSeries":
        return cls(alphabet, max_degree, {(): 1}, square_free)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        c = self.max_degree
        by_deg: dict[int, list] = {}
        for m, v in other.coeffs.items():
            by_deg.setdefault(len(m), []).append((m, v))
        out: dict = {}
        for a, x in self.coeffs.items():
            room = c - len(a)
            for d, items in by_deg.items():
                if d > room:
                    continue
                for b, y in items:
                    m = a + b
                    if self.square_free and len(set(m)) != len(m):
                        continue
                    v = out.get(m, 0) + x * y
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        return self._like(out)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        out = dict(self.coeffs)
        for m, v in other.coeffs.items():
            t = out.get(m, 0) + v
            if t:
                out[m] = t
            else:
                out.pop(m, None)
        return self._like(out)

    def __neg__(self) -> "TruncatedSeries":
        return self._like({m: -v for m, v in self.coeffs.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def inverse(self) -> "TruncatedSeries":
        """Inverse of a series with constant term 1."""
        if self.coeffs.get((), 0) != 1:
            raise ValueError("only series with constant term 1 are inverted here")
        u = self._like({m: v for m, v in self.coeffs.items() if m})
        minus_u = -u
        out = self._like({(): 1})
        term = self._like({(): 1})
        for _ in range(self.max_degree):
            term = term * minus_u
            if not term.coeffs:
                break
            out = out + term
        return out

    def commutator(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.inverse() * other.inverse() * self * other

    def times_letter(self, i: int, exp: int) -> "TruncatedSeries":
        """Right-multiply by the image of generator i to the power +-1."""
        c = self.max_degree
        out = dict(self.coeffs)
        if exp == 1 or self.square_free:
            sign = 1 if exp == 1 else -1
            for m, v in self.coeffs.items():
                if len(m) < c and not (self.square_free and i in m):
                    n = m + (i,)
                    t = out.get(n, 0) + sign * v
                    if t:
                        out[n] = t
                    else:
                        del out[n]
            return self._like(out)
        # (1 + X)^-1 = sum (-X)^k
        for m, v in self.coeffs.items():
            n = m
            sign = 1
            for _ in range(c - len(m)):
                n = n + (i,)
                sign = -sign
                t = out.get(n, 0) + sign * v
                if t:
                    out[n] = t
                else:
                    del out[n]
        return self._like(out)

    def is_one(self) -> bool:
        return self.coeffs == {(): 1}

    def homogeneous(self, d: int) -> dict[tuple[int, ...], int]:
        return {m: v for m, v in self.coeffs.items() if len(m) == d}

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TruncatedSeries) and self.alphabet == other.alphabet
                and self.max_degree == other.max_degree and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.alphabet, self.max_degree, tuple(sorted(self.coeffs.items()))))

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs, key=lambda m: (len(m), m)):
            mono = "".join(f"*X{self.alphabet[i]}" for i in m)
            parts.append(f"{self.coeffs[m]:+d}{mono}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.format()})"


def embed(w: ReducedWord, alphabet: Sequence[GenSym], c: int,
          square_free: bool = False) -> TruncatedSeries:
    """Magnus image of a word, truncated above degree c."""
    if c < 1:
        raise ValueError("truncation degree must be >= 1")
    s = TruncatedSeries.one(alphabet, c, square_free)
    idx = s.index
    for l in w.letters:
        i = idx.get(l.gen)
        if i is None:
            raise UnknownGenerator(f"generator {l.gen} is not in the alphabet")
        s = s.times_letter(i, l.exp)
    return s


def gamma_degree(s: TruncatedSeries) -> float:
    """Least degree >= 1 with a nonzero coefficient; ``math.inf`` if s == 1."""
    degs = [len(m) for m in s.coeffs if m]
    return min(degs) if degs else math.inf


@dataclass(frozen=True)
class LieVector:
    """An element of the degree-s free Lie ring, in Lyndon coordinates."""

    alphabet: tuple[GenSym, ...]
    degree: int
    coords: dict = field(hash=False)  # Lyndon word (tuple of ints) -> int

    def dense(self) -> tuple[int, ...]:
        return tuple(self.coords.get(w, 0) for w in lyndon_words(len(self.alphabet), self.degree))

    @property
    def dimension(self) -> int:
        return witt_number(len(self.alphabet), self.degree)

    def is_zero(self) -> bool:
        return not self.coords

    def label(self, w: tuple[int, ...]) -> str:
        return "".join(str(self.alphabet[i]) for i in w)


def lie_component(s: TruncatedSeries, d: int) -> LieVector:
    """The degree-d component of s in Lyndon coordinates.

    Meaningful when all lower non-constant components vanish.
    """
    comp = s.homogeneous(d)
    try:
        coords = lie_coordinates(comp)
    except NotALieElement as exc:
        raise NotALieElement(f"degree-{d} component is not a Lie element: {exc}") from None
    return LieVector(s.alphabet, d, coords)


def leading_lie(s: TruncatedSeries) -> LieVector:
    d = gamma_degree(s)
    if d == math.inf:
        raise ValueError("the identity has no leading Lie term")
    return lie_component(s, int(d))
