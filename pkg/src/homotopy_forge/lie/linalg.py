"""Exact integer linear algebra: Hermite and Smith normal forms, left kernels.

Sparse rows are ``dict[int, int]`` (column -> nonzero entry).  Dense
matrices are lists of lists.  Everything is over Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

SparseRow = dict  # int -> int


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _axpy(y: SparseRow, a: int, x: SparseRow) -> None:
    """y += a*x in place."""
    if not a:
        return
    for k, v in x.items():
        t = y.get(k, 0) + a * v
        if t:
            y[k] = t
        else:
            y.pop(k, None)


def _combine(a: int, r: SparseRow, b: int, s: SparseRow) -> SparseRow:
    out: SparseRow = {}
    for k, v in r.items():
        out[k] = a * v
    for k, v in s.items():
        t = out.get(k, 0) + b * v
        if t:
            out[k] = t
        else:
            out.pop(k, None)
    return {k: v for k, v in out.items() if v}


class Echelon:
    """Incremental row echelon form of an integer lattice.

    Rows are inserted one at a time and reduced with unimodular 2x2 steps,
    so the stored rows always span exactly the lattice generated by
    everything inserted.  ``hermite()`` returns the canonical basis.
    """

    def __init__(self) -> None:
        self.pivots: dict[int, SparseRow] = {}

    def insert(self, row: SparseRow) -> bool:
        """Add a row; return True if the lattice grew."""
        v = {k: x for k, x in row.items() if x}
        while v:
            col = min(v)
            r = self.pivots.get(col)
            if r is None:
                if v[col] < 0:
                    v = {k: -x for k, x in v.items()}
                self.pivots[col] = v
                return True
            a, b = r[col], v[col]
            if b % a == 0:
                _axpy(v, -(b // a), r)
                continue
            g, x, y = xgcd(a, b)
            self.pivots[col] = _combine(x, r, y, v)
            v = _combine(a // g, v, -(b // g), r)
        return False

    def contains(self, row: SparseRow) -> bool:
        v = {k: x for k, x in row.items() if x}
        while v:
            col = min(v)
            r = self.pivots.get(col)
            if r is None or v[col] % r[col]:
                return False
            _axpy(v, -(v[col] // r[col]), r)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def hermite(self) -> list[SparseRow]:
        """Canonical HNF basis: positive pivots, entries above pivots reduced."""
        cols = sorted(self.pivots)
        rows = [dict(self.pivots[c]) for c in cols]
        for j, c in enumerate(cols):
            p = rows[j][c]
            for i in range(j):
                e = rows[i].get(c, 0)
                q = e // p
                if q:
                    _axpy(rows[i], -q, rows[j])
        for j, c in enumerate(cols):
            self.pivots[c] = rows[j]
        return [dict(r) for r in rows]


def hermite_normal_form(rows: Iterable[SparseRow]) -> list[SparseRow]:
    e = Echelon()
    for r in rows:
        e.insert(r)
    return e.hermite()


def left_kernel(rows: Sequence[SparseRow]) -> list[dict[int, int]]:
    """A basis of ``{u : sum_i u_i rows[i] = 0}`` as sparse vectors over row indices."""
    if not rows:
        return []
    shift = 1 + max((max(r) for r in rows if r), default=-1)
    e = Echelon()
    for i, r in enumerate(rows):
        aug = dict(r)
        aug[shift + i] = 1
        e.insert(aug)
    out = []
    for c, r in sorted(e.pivots.items()):
        if c >= shift:
            out.append({k - shift: v for k, v in r.items()})
    return out


def intersect_lattices(a: Sequence[SparseRow], b: Sequence[SparseRow]) -> list[SparseRow]:
    """HNF basis of the intersection of two row lattices in the same space."""
    if not a or not b:
        return []
    # u*A = v*B  <=>  (u, -v) in the left kernel of [A; B]
    ker = left_kernel(list(a) + list(b))
    out = []
    for u in ker:
        row: SparseRow = {}
        for i, c in u.items():
            if i < len(a):
                _axpy(row, c, a[i])
        out.append(row)
    return hermite_normal_form(out)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors of a finitely generated abelian group.

    Nonzero factors form a divisibility chain and come first; each 0 is
    an infinite cyclic summand.  Factors equal to 1 are kept so the length
    records the number of generators.
    """

    factors: tuple[int, ...]

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(f for f in self.factors if f > 1)

    @property
    def free_rank(self) -> int:
        return sum(1 for f in self.factors if f == 0)

    def is_trivial(self) -> bool:
        return all(f == 1 for f in self.factors)

    def nontrivial(self) -> tuple[int, ...]:
        return tuple(f for f in self.factors if f != 1)

    def __str__(self) -> str:
        parts = [f"Z/{f}" for f in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


@dataclass
class SmithResult:
    """``U * m * V = D`` with U, V unimodular; inverses kept when requested."""

    diagonal: list[int]
    shape: tuple[int, int]
    U: list[list[int]] | None = None
    V: list[list[int]] | None = None
    U_inv: list[list[int]] | None = None
    V_inv: list[list[int]] | None = None

    def invariants(self) -> AbelianInvariants:
        """Invariants of the cokernel Z^cols / rowspace."""
        rows, cols = self.shape
        diag = list(self.diagonal) + [0] * (cols - len(self.diagonal))
        return AbelianInvariants(tuple(diag))

    def matrix_D(self) -> list[list[int]]:
        rows, cols = self.shape
        D = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(self.diagonal):
            D[i][i] = d
        return D


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: Sequence[Sequence[int]], transforms: bool = False,
                      ncols: int | None = None) -> SmithResult:
    """Smith normal form by elementary row and column operations.

    ``diagonal`` lists the nonzero entries ``d_1 | d_2 | ...`` (all positive);
    the remaining diagonal entries of D are zero.
    """
    A = [list(r) for r in m]
    rows = len(A)
    cols = len(A[0]) if A else (ncols or 0)
    if ncols is not None and A and len(A[0]) != ncols:
        raise ValueError("row length does not match ncols")
    U = _identity(rows) if transforms else None
    Ui = _identity(rows) if transforms else None
    V = _identity(cols) if transforms else None
    Vi = _identity(cols) if transforms else None

    def row_op(i, j, c):  # row_i += c * row_j
        Ai, Aj = A[i], A[j]
        for k in range(cols):
            if Aj[k]:
                Ai[k] += c * Aj[k]
        if transforms:
            for k in range(rows):
                U[i][k] += c * U[j][k]
            # inverse: col_j -= c * col_i
            for k in range(rows):
                Ui[k][j] -= c * Ui[k][i]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        if transforms:
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        if transforms:
            U[i] = [-x for x in U[i]]
            for r in Ui:
                r[i] = -r[i]

    def col_op(i, j, c):  # col_i += c * col_j
        for r in A:
            if r[j]:
                r[i] += c * r[j]
        if transforms:
            for r in V:
                r[i] += c * r[j]
            Vi[j] = [a - c * b for a, b in zip(Vi[j], Vi[i])]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        if transforms:
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    diag = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            Ai = A[i]
            for j in range(t, cols):
                x = Ai[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        while True:
            changed = False
            p = A[t][t]
            for i in range(t + 1, rows):
                if A[i][t]:
                    row_op(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        row_swap(i, t)
                        changed = True
                        p = A[t][t]
            for j in range(t + 1, cols):
                if A[t][j]:
                    col_op(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        col_swap(j, t)
                        changed = True
                        p = A[t][t]
            if changed:
                continue
            bad = None
            for i in range(t + 1, rows):
                if any(x % p for x in A[i][t + 1:]):
                    bad = i
                    break
            if bad is None:
                break
            row_op(t, bad, 1)
        if A[t][t] < 0:
            row_neg(t)
        diag.append(A[t][t])
        t += 1
    return SmithResult(diag, (rows, cols), U, V, Ui, Vi)


def snf(m: Sequence[Sequence[int]], transforms: bool = True,
        ncols: int | None = None) -> tuple[AbelianInvariants, SmithResult]:
    """Cokernel invariants of the row lattice of m, plus the decomposition."""
    res = smith_normal_form(m, transforms=transforms, ncols=ncols)
    return res.invariants(), res


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    A = [list(r) for r in m]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def dense_to_sparse(rows: Iterable[Sequence[int]]) -> list[SparseRow]:
    return [{j: x for j, x in enumerate(r) if x} for r in rows]


def sparse_to_dense(rows: Iterable[SparseRow], ncols: int) -> list[list[int]]:
    out = []
    for r in rows:
        d = [0] * ncols
        for j, x in r.items():
            d[j] = x
        out.append(d)
    return out
