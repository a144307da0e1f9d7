"""Associated primes, supports and the predicates built on them.

Zero-module conventions: ``Ass = Supp = Min = Assh = ∅``, every predicate
holds, and the dimension is ``-inf``.
"""

from __future__ import annotations

from ..errors import DimensionTooLarge, ZeroModule
from ..exact.poly import NEG_INF
from .modules import FiniteModule, MonomialModule, PIDModule
from .monomial import associated_supports, primary_components


def ass(M) -> frozenset:
    """Associated primes of a module in normal form."""
    R = M.ring
    if isinstance(M, PIDModule):
        out = {p for p, _ in M.torsion}
        if M.free:
            out.add(R.zero_prime)
        return frozenset(out)
    if isinstance(M, MonomialModule):
        return frozenset(R.prime(s) for J in M.summands for s in associated_supports(J))
    if isinstance(M, FiniteModule):
        return frozenset(R.prime(i) for i, lam in enumerate(M.parts) if lam)
    raise TypeError(f"not a module normal form: {M!r}")


def default_poset(M):
    R = M.ring
    return R.spectral_poset(ass(M))


def supp(M, poset=None) -> frozenset:
    """Support, as the specialization closure of ``Ass M`` inside ``poset``."""
    a = ass(M)
    if poset is None:
        poset = M.ring.spectral_poset(a)
    return poset.down(a)


def min_ass(M) -> frozenset:
    a = ass(M)
    return frozenset(p for p in a if not any(q != p and q.key != p.key and _contains(p, q)
                                             for q in a))


def _contains(p, q):
    """``p ⊋ q`` for primes of the same ring (q strictly more generic)."""
    if p.kind == "pid":
        return q.key == 0 and p.key != 0
    if p.kind == "monomial":
        return q.key < p.key
    return False


def dim(M):
    a = ass(M)
    return max((p.dim for p in a), default=NEG_INF)


def assh(M) -> frozenset:
    d = dim(M)
    return frozenset(p for p in ass(M) if p.dim == d)


def ring_ass(R) -> frozenset:
    return R.ass_ring()


def ring_min(R) -> frozenset:
    a = R.ass_ring()
    return frozenset(p for p in a if not any(_contains(p, q) for q in a))


def ring_assh(R) -> frozenset:
    a = R.ass_ring()
    top = max(p.dim for p in a)
    return frozenset(p for p in a if p.dim == top)


def is_torsionfree(M) -> bool:
    """Every associated prime of ``M`` lies inside some associated prime of ``R``."""
    ar = ring_ass(M.ring)
    return all(any(p == q or _contains(q, p) for q in ar) for p in ass(M))


def is_pure(M) -> bool:
    return assh(M) == min_ass(M) == ass(M)


def is_maximal_pure(M) -> bool:
    return ass(M) <= ring_assh(M.ring)


def _check_dim(R):
    if R.dim > 1:
        raise DimensionTooLarge(f"{R} has Krull dimension {R.dim}; depth is only computed in dim <= 1")


def is_cm_dim_le1(M) -> bool:
    """Cohen-Macaulay over a ring of dimension <= 1: no embedded primes."""
    _check_dim(M.ring)
    return min_ass(M) == ass(M)


def is_maximal_cm_dim_le1(M) -> bool:
    """Maximal Cohen-Macaulay over a ring of dimension <= 1.

    Localising at a height-one prime ``q`` the depth of ``M_q`` is 1 unless
    ``q ∈ Ass M``; at minimal primes there is nothing to check.  Hence
    ``M`` is maximal CM iff ``Ass M ⊆ Min R``.
    """
    _check_dim(M.ring)
    return ass(M) <= ring_min(M.ring)


def primary_filtration(M):
    """``[(x_i, M_i)]`` with ``Ass M_i = {x_i}`` and ``M -> ⊕ M_i`` injective."""
    if M.is_zero():
        raise ZeroModule("the zero module has no associated primes")
    R = M.ring
    out = []
    if isinstance(M, PIDModule):
        if M.free:
            out.append((R.zero_prime, PIDModule(R, M.free, ())))
        for p in M.primes():
            out.append((p, PIDModule(R, 0, tuple(pe for pe in M.torsion if pe[0] == p))))
    elif isinstance(M, MonomialModule):
        comps = {}
        for J in M.summands:
            for sigma, Q in primary_components(J).items():
                comps.setdefault(sigma, []).append(Q)
        for sigma in sorted(comps, key=lambda s: (len(s), sorted(s))):
            out.append((R.prime(sigma), MonomialModule(R, tuple(comps[sigma]))))
    else:
        empty = [()] * len(M.parts)
        for i, lam in enumerate(M.parts):
            if lam:
                d = list(empty)
                d[i] = lam
                out.append((R.prime(i), FiniteModule(R, tuple(d))))
    return out
