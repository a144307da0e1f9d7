"""Finite windows of modules and the sub/quotient/extension relations on them.

Over a PID every question localises to a discrete valuation ring, where a
module is a free rank plus a partition and the Hall-Green/LR rule decides
which extensions exist.  A finite ring is a product of chain rings, which
are truncated DVRs, so the same rule applies factor by factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..errors import UnsupportedBackend, WindowTooSmall
from ..partitions import contained, local_extension, partitions_of, quotient_with_free
from .modules import FiniteModule, MonomialModule, PIDModule, direct_sum, zero_module
from .monomial import MonomialIdeal, ideals_containing, monomials_up_to
from .rings import FiniteRing, MonomialRing, PIDRing, sort_primes


@dataclass(frozen=True)
class PIDWindow:
    """Modules ``R^r (+) T`` with ``r <= max_rank``, torsion supported on
    ``primes`` and at most ``max_exp`` total exponent at each prime."""

    primes: tuple
    max_exp: int
    max_rank: int

    def __post_init__(self):
        if self.max_exp < 0 or self.max_rank < 0:
            raise ValueError("window caps must be nonnegative")
        object.__setattr__(self, "primes", tuple(sort_primes(set(self.primes))))

    def contains(self, M) -> bool:
        if M.free > self.max_rank:
            return False
        return all(p in self.primes and sum(M.partition(p)) <= self.max_exp for p in M.primes())

    def describe(self):
        return {"primes": [p.label for p in self.primes], "max_exp": self.max_exp,
                "max_rank": self.max_rank}

    def grow(self):
        return PIDWindow(self.primes, self.max_exp + 1, self.max_rank + 1)


@dataclass(frozen=True)
class FiniteWindow:
    """Modules of total composition length at most ``max_length``."""

    max_length: int

    def __post_init__(self):
        if self.max_length < 0:
            raise ValueError("window caps must be nonnegative")

    def contains(self, M) -> bool:
        return M.length <= self.max_length

    def describe(self):
        return {"max_length": self.max_length}

    def grow(self):
        return FiniteWindow(self.max_length + 1)


@dataclass(frozen=True)
class MonomialWindow:
    """Direct sums of at most ``max_summands`` cyclic modules ``R/J`` with ``J``
    taken from an explicit list of monomial ideals."""

    ideals: tuple
    max_summands: int
    degree: int | None = None

    def __post_init__(self):
        if self.max_summands < 0:
            raise ValueError("window caps must be nonnegative")
        object.__setattr__(self, "ideals", tuple(sorted(set(self.ideals))))

    @classmethod
    def by_degree(cls, ring: MonomialRing, degree: int, max_summands: int):
        if ring.relations.max_degree() > degree:
            raise WindowTooSmall(
                f"the relations of {ring} need degree {ring.relations.max_degree()} > {degree}")
        return cls(tuple(ideals_containing(ring.relations, degree)), max_summands, degree)

    def contains(self, M) -> bool:
        return len(M.summands) <= self.max_summands and all(J in self.ideals for J in M.summands)

    def describe(self):
        out = {"max_summands": self.max_summands}
        if self.degree is not None:
            out["max_degree"] = self.degree
        out["ideals"] = len(self.ideals)
        return out

    def grow(self):
        return MonomialWindow(self.ideals, self.max_summands + 1, self.degree)


# ---------------------------------------------------------------------------
# enumeration


def enumerate_window(R, w) -> list:
    """Every isomorphism class inside the window, canonically sorted."""
    if isinstance(R, PIDRing):
        per_prime = [
            [lam for n in range(w.max_exp + 1) for lam in partitions_of(n)] for _ in w.primes
        ]
        out = []
        for r in range(w.max_rank + 1):
            for choice in product(*per_prime):
                tors = tuple((p, e) for p, lam in zip(w.primes, choice) for e in lam)
                out.append(PIDModule(R, r, tors))
    elif isinstance(R, FiniteRing):
        out = []
        ks = [f.k for f in R.factors]
        for n in range(w.max_length + 1):
            for split in _compositions(n, len(ks)):
                options = [partitions_of(m, k) for m, k in zip(split, ks)]
                for parts in product(*options):
                    out.append(FiniteModule(R, parts))
    elif isinstance(R, MonomialRing):
        cyc = [J for J in w.ideals if not J.is_unit()]
        out = []
        for s in range(w.max_summands + 1):
            for combo in _multisets(len(cyc), s):
                out.append(MonomialModule(R, tuple(cyc[i] for i in combo)))
    else:
        raise TypeError(f"unknown ring {R!r}")
    return sorted(set(out), key=lambda m: m.sort_key())


def _compositions(n, k):
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def _multisets(n, k, start=0):
    if k == 0:
        yield ()
        return
    for i in range(start, n):
        for rest in _multisets(n, k - 1, i):
            yield (i,) + rest


# ---------------------------------------------------------------------------
# relations


def _no_homs(M):
    if isinstance(M, MonomialModule):
        raise UnsupportedBackend("homomorphisms between monomial modules are not enumerated")


def is_submodule(N, M) -> bool:
    """Is ``N`` isomorphic to a submodule of ``M``?"""
    _no_homs(M)
    if isinstance(M, PIDModule):
        if N.free > M.free:
            return False
        return all(contained(N.partition(p), M.partition(p)) for p in N.primes())
    return all(contained(a, b) for a, b in zip(N.parts, M.parts))


def is_quotient(Q, M) -> bool:
    """Is ``Q`` isomorphic to a quotient of ``M``?"""
    _no_homs(M)
    if isinstance(M, PIDModule):
        if Q.free > M.free:
            return False
        k = M.free - Q.free
        return all(quotient_with_free(Q.partition(p), M.partition(p), k) for p in Q.primes())
    return all(contained(a, b) for a, b in zip(Q.parts, M.parts))


def is_extension(A, E, B) -> bool:
    """Is there a short exact sequence ``0 -> A -> E -> B -> 0``?"""
    _no_homs(E)
    if isinstance(E, PIDModule):
        if E.free != A.free + B.free:
            return False
        primes = set(A.primes()) | set(B.primes()) | set(E.primes())
        return all(local_extension(A.free, A.partition(p), B.free, B.partition(p),
                                   E.free, E.partition(p)) for p in primes)
    return all(local_extension(0, a, 0, b, 0, e) for a, e, b in zip(A.parts, E.parts, B.parts))


def submodules_window(M, w) -> list:
    _check_in(M, w)
    return [N for N in enumerate_window(M.ring, w) if is_submodule(N, M)]


def quotients_window(M, w) -> list:
    _check_in(M, w)
    return [Q for Q in enumerate_window(M.ring, w) if is_quotient(Q, M)]


def extensions_window(A, B, w) -> list:
    _check_in(A, w)
    _check_in(B, w)
    _no_homs(A)
    return [E for E in enumerate_window(A.ring, w) if is_extension(A, E, B)]


def images_window(M, N, w) -> list:
    """Images of all maps ``M -> N``: common quotients of ``M`` and submodules of ``N``."""
    _check_in(M, w)
    _check_in(N, w)
    return [I for I in enumerate_window(M.ring, w) if is_quotient(I, M) and is_submodule(I, N)]


def _check_in(M, w):
    if not w.contains(M):
        raise WindowTooSmall(f"{M} lies outside the window {w.describe()}")


# ---------------------------------------------------------------------------
# conflations over monomial quotients


def monomial_conflations(universe, w: MonomialWindow):
    """Short exact sequences among window modules built from multiplication maps.

    For a cyclic ``R/J`` and a monomial ``m`` not in ``J`` multiplication by
    ``m`` gives ``0 -> R/(J:m) -> R/J -> R/(J+(m)) -> 0``.  Together with
    the trivial sequences these are summed termwise; the result is a set of
    triples ``(A, E, B)`` of window modules.
    """
    if not universe:
        return set()
    R = universe[0].ring
    ideals = set(w.ideals)
    unit = MonomialIdeal.unit(R.n)
    zero = zero_module(R)
    deg = w.degree if w.degree is not None else max(J.max_degree() for J in ideals)
    basics = set()
    for J in ideals:
        E = MonomialModule(R, (J,))
        basics.add((E, E, zero))
        basics.add((zero, E, E))
        for m in monomials_up_to(R.n, deg):
            if J.contains(m):
                continue
            JA, JB = J.colon(m), J + m
            if JA in ideals and (JB in ideals or JB == unit):
                basics.add((MonomialModule(R, (JA,)), E, MonomialModule(R, (JB,))))
    basics = sorted(basics, key=lambda t: tuple(x.sort_key() for x in t))
    inside = set(universe)
    out = set()
    for s in range(w.max_summands + 1):
        for combo in _multisets(len(basics), s):
            parts = [basics[i] for i in combo]
            triple = tuple(direct_sum([p[k] for p in parts], R) for k in range(3))
            if all(x in inside for x in triple):
                out.add(triple)
    return out
