"""Lyndon words, their standard bracketings, and Lie coordinates.

Words over an alphabet of size k are tuples of ints in ``range(k)``.
Noncommutative polynomials are dicts ``word -> int`` with zero
coefficients never stored.  The Lie bracket is ``[u, v] = uv - vu``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

Poly = dict  # tuple[int, ...] -> int


class NotALieElement(ValueError):
    """A homogeneous polynomial has no expansion in the Lyndon basis."""


def mobius(n: int) -> int:
    if n == 1:
        return 1
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def witt_number(k: int, s: int) -> int:
    """Rank of the degree-s part of the free Lie ring on k generators."""
    total = sum(mobius(d) * k ** (s // d) for d in range(1, s + 1) if s % d == 0)
    return total // s


def generate_lyndon(k: int, max_len: int) -> Iterator[tuple[int, ...]]:
    """Duval's algorithm: all Lyndon words of length <= max_len, lex order."""
    if k <= 0 or max_len <= 0:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()


@lru_cache(maxsize=None)
def lyndon_words(k: int, s: int) -> tuple[tuple[int, ...], ...]:
    """All Lyndon words of exactly length s over ``range(k)``, lexicographic."""
    return tuple(sorted(w for w in generate_lyndon(k, s) if len(w) == s))


@lru_cache(maxsize=None)
def lyndon_index(k: int, s: int) -> dict[tuple[int, ...], int]:
    return {w: i for i, w in enumerate(lyndon_words(k, s))}


def is_lyndon(w: tuple[int, ...]) -> bool:
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def standard_factorization(w: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split a Lyndon word of length >= 2 as uv with v its least proper suffix."""
    v = min(w[i:] for i in range(1, len(w)))
    return w[: len(w) - len(v)], v


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for a, x in p.items():
        for b, y in q.items():
            m = a + b
            c = out.get(m, 0) + x * y
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def poly_add(p: Poly, q: Poly, scale: int = 1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_bracket(p: Poly, q: Poly) -> Poly:
    return poly_add(poly_mul(p, q), poly_mul(q, p), -1)


@lru_cache(maxsize=None)
def _lyndon_poly(w: tuple[int, ...]) -> tuple:
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    return tuple(sorted(poly_bracket(dict(_lyndon_poly(u)), dict(_lyndon_poly(v))).items()))


def lyndon_poly(w: tuple[int, ...]) -> Poly:
    """Expansion of the standard bracketing of a Lyndon word."""
    return dict(_lyndon_poly(w))


def lie_coordinates(p: Poly) -> dict[tuple[int, ...], int]:
    """Coordinates of a homogeneous Lie polynomial in the Lyndon basis.

    Uses triangularity: the standard bracketing of a Lyndon word l is l plus
    lexicographically larger words, so the least monomial of a Lie
    polynomial is Lyndon and carries its coordinate.
    """
    rem = dict(p)
    coords: dict[tuple[int, ...], int] = {}
    while rem:
        m = min(rem)
        if not is_lyndon(m):
            raise NotALieElement(f"least monomial {m} is not a Lyndon word")
        c = rem[m]
        coords[m] = c
        rem = poly_add(rem, lyndon_poly(m), -c)
    return coords


def poly_from_coordinates(coords: dict[tuple[int, ...], int]) -> Poly:
    out: Poly = {}
    for w, c in coords.items():
        out = poly_add(out, lyndon_poly(w), c)
    return out


@lru_cache(maxsize=None)
def _bracket_basis(l: tuple[int, ...], m: tuple[int, ...]) -> tuple:
    return tuple(sorted(lie_coordinates(poly_bracket(lyndon_poly(l), lyndon_poly(m))).items()))


def bracket_coordinates(a: dict, b: dict) -> dict[tuple[int, ...], int]:
    """Lyndon coordinates of ``[a, b]`` for a, b given in Lyndon coordinates."""
    out: dict[tuple[int, ...], int] = {}
    for l, x in a.items():
        for m, y in b.items():
            for w, c in _bracket_basis(l, m):
                v = out.get(w, 0) + x * y * c
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
    return out
