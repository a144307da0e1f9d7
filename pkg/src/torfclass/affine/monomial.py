"""Monomial ideals as sets of exponent vectors.

Only the operations needed by the cyclic-module calculus are provided:
membership, colon by a monomial, sums, intersections and the splitting
algorithm for irreducible decompositions.  No Groebner machinery is needed
because every ideal in sight is monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

Monomial = tuple  # exponent vector


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def minimalize(gens) -> tuple:
    gens = sorted(set(gens), key=lambda m: (sum(m), m))
    out = []
    for g in gens:
        if not any(divides(h, g) for h in out):
            out.append(g)
    return tuple(sorted(out, reverse=True))


@dataclass(frozen=True, order=True)
class MonomialIdeal:
    """Ideal of k[x_1..x_n] given by its minimal monomial generators."""

    nvars: int
    gens: tuple

    def __post_init__(self):
        for g in self.gens:
            if len(g) != self.nvars:
                raise ValueError(f"exponent vector {g} has wrong length")
        object.__setattr__(self, "gens", minimalize(tuple(tuple(g) for g in self.gens)))

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @classmethod
    def unit(cls, n):
        return cls(n, ((0,) * n,))

    def is_unit(self):
        return any(sum(g) == 0 for g in self.gens)

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.gens)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __add__(self, other):
        if isinstance(other, MonomialIdeal):
            return MonomialIdeal(self.nvars, self.gens + other.gens)
        return MonomialIdeal(self.nvars, self.gens + (tuple(other),))

    def colon(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal(self.nvars, tuple(tuple(max(a - b, 0) for a, b in zip(g, m))
                                               for g in self.gens))

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.nvars, tuple(lcm(a, b) for a in self.gens for b in other.gens))

    def is_irreducible(self) -> bool:
        """Generated by pure powers of variables (the unit ideal excluded)."""
        return not self.is_unit() and all(sum(1 for x in g if x) == 1 for g in self.gens)

    def support(self) -> frozenset:
        """Variables occurring in some generator; for an irreducible ideal, its radical."""
        return frozenset(i for g in self.gens for i, x in enumerate(g) if x)

    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    def format(self, names) -> str:
        if not self.gens:
            return "(0)"
        return "(" + ",".join(format_monomial(g, names) for g in self.gens) + ")"


def format_monomial(m: Monomial, names) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


@lru_cache(maxsize=None)
def irreducible_decomposition(J: MonomialIdeal) -> tuple:
    """Irredundant irreducible components of a proper monomial ideal.

    Splitting rule: if a minimal generator factors as ``m = x_i^a * m'`` with
    ``m' != 1`` then ``J = (J - m, x_i^a) cap (J - m, m')``.
    """
    if J.is_unit():
        return ()
    comps = _split(J)
    comps = set(comps)
    irredundant = [Q for Q in comps if not any(P != Q and Q.contains_ideal(P) for P in comps)]
    return tuple(sorted(irredundant))


def _split(J: MonomialIdeal):
    if J.is_unit():
        return []
    for g in J.gens:
        nz = [i for i, x in enumerate(g) if x]
        if len(nz) > 1:
            i = nz[0]
            pure = tuple(g[i] if k == i else 0 for k in range(J.nvars))
            rest = tuple(0 if k == i else g[k] for k in range(J.nvars))
            others = tuple(h for h in J.gens if h != g)
            return (_split(MonomialIdeal(J.nvars, others + (pure,)))
                    + _split(MonomialIdeal(J.nvars, others + (rest,))))
    return [J]


def associated_supports(J: MonomialIdeal) -> frozenset:
    """Variable sets ``sigma`` with ``(x_sigma)`` associated to ``S/J``."""
    return frozenset(Q.support() for Q in irreducible_decomposition(J))


def primary_components(J: MonomialIdeal) -> dict:
    """Map each associated variable set to the primary component of ``J``."""
    out = {}
    for Q in irreducible_decomposition(J):
        sigma = Q.support()
        out[sigma] = out[sigma].intersect(Q) if sigma in out else Q
    return out


def monomials_up_to(nvars: int, degree: int):
    """All exponent vectors of total degree 1..degree (graded, then reverse lex)."""
    out = [m for m in product(range(degree + 1), repeat=nvars) if 0 < sum(m) <= degree]
    return sorted(out, key=lambda m: (sum(m), tuple(-x for x in m)))


def ideals_containing(base: MonomialIdeal, degree: int):
    """All proper monomial ideals ``J ⊇ base`` generated in degree <= ``degree``.

    ``base`` itself must be generated in degree <= ``degree``.
    """
    mons = [m for m in monomials_up_to(base.nvars, degree) if not base.contains(m)]
    seen = {base}
    frontier = [base]
    while frontier:
        nxt = []
        for J in frontier:
            for m in mons:
                if J.contains(m):
                    continue
                K = J + m
                if K not in seen:
                    seen.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted((J for J in seen if not J.is_unit()), key=lambda J: (len(J.gens), J.gens))
