"""Partitions and the Littlewood-Richardson rule.

A finite module over a discrete valuation ring is determined by a partition
(the exponents of its cyclic summands).  Hall/Green: there is a short exact
sequence ``0 -> A -> E -> B -> 0`` of such modules with types
``alpha, eps, beta`` iff the LR coefficient ``c^eps_{alpha, beta}`` is
nonzero.  Everything in this module is pure combinatorics on tuples sorted
in decreasing order.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

Partition = tuple  # weakly decreasing tuple of positive ints


def normalize(parts) -> Partition:
    return tuple(sorted((p for p in parts if p > 0), reverse=True))


def size(lam: Partition) -> int:
    return sum(lam)


def contained(mu: Partition, lam: Partition) -> bool:
    """``mu`` fits inside the Young diagram of ``lam``."""
    if len(mu) > len(lam):
        return False
    return all(a <= b for a, b in zip(mu, lam))


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None, max_len: int | None = None):
    """All partitions of ``n`` (optionally bounded), in reverse lex order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    if max_len == 0:
        return ()
    out = []
    for first in range(min(n, max_part), 0, -1):
        rest_len = None if max_len is None else max_len - 1
        for rest in partitions_of(n - first, first, rest_len):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def subpartitions(lam: Partition):
    """All ``mu`` contained in ``lam``."""
    if not lam:
        return ((),)
    ranges = [range(p + 1) for p in lam]
    out = set()
    for choice in product(*ranges):
        mu = normalize(choice)
        if contained(mu, lam):
            out.add(mu)
    return tuple(sorted(out, key=lambda m: (sum(m), len(m), m)))


@lru_cache(maxsize=None)
def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """Number of LR tableaux of skew shape ``nu/lam`` and content ``mu``."""
    if size(nu) != size(lam) + size(mu) or not contained(lam, nu) or not contained(mu, nu):
        return 0
    if not mu:
        return 1 if lam == nu else 0
    rows = len(nu)
    lam_ext = tuple(lam) + (0,) * (rows - len(lam))
    # cells of the skew shape in reading order: rows top to bottom, right to left
    cells = [(r, c) for r in range(rows) for c in range(nu[r] - 1, lam_ext[r] - 1, -1)]
    filling = {}
    counts = [0] * (len(mu) + 1)

    def fits(r, c, v):
        right = filling.get((r, c + 1))
        if right is not None and right < v:
            return False
        above = filling.get((r - 1, c))
        if above is not None and above >= v:
            return False
        return True

    def rec(k):
        if k == len(cells):
            return 1
        r, c = cells[k]
        total = 0
        for v in range(1, len(mu) + 1):
            if counts[v] >= mu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue  # lattice word condition
            if not fits(r, c, v):
                continue
            filling[(r, c)] = v
            counts[v] += 1
            total += rec(k + 1)
            counts[v] -= 1
            del filling[(r, c)]
        return total

    return rec(0)


@lru_cache(maxsize=None)
def extension_types(alpha: Partition, beta: Partition, max_part: int | None = None):
    """Types ``eps`` of middle terms of ``0 -> alpha -> eps -> beta -> 0``."""
    n = size(alpha) + size(beta)
    bound = (alpha[0] if alpha else 0) + (beta[0] if beta else 0)
    if max_part is not None:
        bound = min(bound, max_part)
    out = []
    for nu in partitions_of(n, bound, len(alpha) + len(beta)):
        if lr_coefficient(alpha, beta, nu):
            out.append(nu)
    return tuple(out)


def is_extension(alpha: Partition, eps: Partition, beta: Partition) -> bool:
    return lr_coefficient(alpha, beta, eps) > 0


@lru_cache(maxsize=None)
def sub_quotient_pairs(lam: Partition):
    """Pairs ``(sub, quot)`` realised as ``0 -> sub -> lam -> quot -> 0``."""
    out = []
    for mu in subpartitions(lam):
        for nu in partitions_of(size(lam) - size(mu)):
            if lr_coefficient(mu, nu, lam):
                out.append((mu, nu))
    return tuple(out)


def quotient_with_free(nu: Partition, lam: Partition, free: int) -> bool:
    """Is torsion type ``nu`` a quotient of ``R^free (+) T_lam`` over a DVR?"""
    if len(nu) > free + len(lam):
        return False
    return all(nu[free + i] <= lam[i] for i in range(len(nu) - free)) if len(nu) > free else True


@lru_cache(maxsize=None)
def local_extension(a_free: int, alpha: Partition, b_free: int, beta: Partition,
                    e_free: int, eps: Partition) -> bool:
    """Is there ``0 -> A -> E -> B -> 0`` over a DVR with these types?

    ``X = R^x_free (+) T_x``.  The free part of ``B`` splits off; the torsion
    of ``E`` extends ``T_A`` by a submodule ``B'`` of ``T_B`` whose
    cokernel ``C`` needs at most ``a_free`` generators.
    """
    if e_free != a_free + b_free:
        return False
    if size(eps) > size(alpha) + size(beta):
        return False
    for mu, gamma in sub_quotient_pairs(beta):
        if len(gamma) > a_free:
            continue
        if size(eps) != size(alpha) + size(mu):
            continue
        if lr_coefficient(alpha, mu, eps):
            return True
    return False
