"""Smith normal form over Z and k[t]."""

from __future__ import annotations

from dataclasses import dataclass

from .field import Field
from .poly import Poly


class IntegerRing:
    """Z as a Euclidean domain."""

    name = "ZZ"

    def zero(self):
        return 0

    def one(self):
        return 1

    def is_zero(self, a):
        return a == 0

    def size(self, a):
        return abs(a)

    def divmod(self, a, b):
        q, r = divmod(a, b)
        return q, r

    def normal(self, a):
        return abs(a)

    def coerce(self, a):
        if not isinstance(a, int):
            raise TypeError(f"expected an integer entry, got {a!r}")
        return a

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")


class PolyRing:
    """k[t] as a Euclidean domain."""

    def __init__(self, field: Field):
        self.field = field
        self.name = f"{field}[t]"

    def zero(self):
        return Poly.zero(self.field)

    def one(self):
        return Poly.const(1, self.field)

    def is_zero(self, a):
        return a.is_zero()

    def size(self, a):
        return a.degree

    def divmod(self, a, b):
        return divmod(a, b)

    def normal(self, a):
        return a.monic()

    def coerce(self, a):
        if isinstance(a, Poly):
            return a
        return Poly.const(a, self.field)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.field == self.field

    def __hash__(self):
        return hash(("poly", self.field))


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple  # d_1 | d_2 | ... ; zeros (if any) at the end
    zero_count: int
    rows: int
    cols: int

    @property
    def rank(self):
        return len(self.diagonal) - self.zero_count


def smith_normal_form(matrix, ring=None) -> SmithForm:
    """Invariant factors of a rectangular matrix over Z or k[t].

    ``matrix`` is a list of rows.  Entries are normalised (non-negative
    integers, monic polynomials).  The pivot is the entry of smallest
    absolute value / degree, first in row-major order on ties.
    """
    rows = [list(r) for r in matrix]
    m = len(rows)
    n = len(rows[0]) if m else 0
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not rectangular")
    if ring is None:
        ring = _guess_ring(rows)
    A = [[ring.coerce(x) for x in r] for r in rows]
    diag = []
    for s in range(min(m, n)):
        if not _reduce_block(A, s, m, n, ring):
            break
        diag.append(ring.normal(A[s][s]))
    diag.extend(ring.zero() for _ in range(min(m, n) - len(diag)))
    zeros = sum(1 for d in diag if ring.is_zero(d))
    return SmithForm(tuple(diag), zeros, m, n)


def _guess_ring(rows):
    for r in rows:
        for x in r:
            if isinstance(x, Poly):
                return PolyRing(x.field)
    return IntegerRing()


def _pivot(A, s, m, n, ring):
    best = None
    for i in range(s, m):
        for j in range(s, n):
            if not ring.is_zero(A[i][j]):
                key = ring.size(A[i][j])
                if best is None or key < best[0]:
                    best = (key, i, j)
    return best


def _reduce_block(A, s, m, n, ring) -> bool:
    """Bring a gcd of the lower-right block to ``A[s][s]`` and clear its row/column."""
    while True:
        best = _pivot(A, s, m, n, ring)
        if best is None:
            return False
        _, i, j = best
        A[s], A[i] = A[i], A[s]
        for row in A:
            row[s], row[j] = row[j], row[s]
        p = A[s][s]
        dirty = False
        for i in range(s + 1, m):
            if not ring.is_zero(A[i][s]):
                q, r = ring.divmod(A[i][s], p)
                A[i] = [a - q * b for a, b in zip(A[i], A[s])]
                dirty |= not ring.is_zero(r)
        for j in range(s + 1, n):
            if not ring.is_zero(A[s][j]):
                q, r = ring.divmod(A[s][j], p)
                for row in A:
                    row[j] = row[j] - q * row[s]
                dirty |= not ring.is_zero(r)
        if dirty:
            continue
        # pivot must divide the whole remaining block
        bad = None
        for i in range(s + 1, m):
            for j in range(s + 1, n):
                if not ring.is_zero(ring.divmod(A[i][j], p)[1]):
                    bad = i
                    break
            if bad is not None:
                break
        if bad is None:
            return True
        A[s] = [a + b for a, b in zip(A[s], A[bad])]


def cokernel_invariants(matrix, ring=None):
    """(free rank, nonunit invariant factors) of R^rows / column span."""
    snf = smith_normal_form(matrix, ring)
    ring = ring or (_guess_ring(matrix) if matrix else IntegerRing())
    units = []
    for d in snf.diagonal:
        if ring.is_zero(d):
            continue
        if ring.size(d) == 0 or d == 1:
            continue
        units.append(d)
    return snf.rows - snf.rank, units
