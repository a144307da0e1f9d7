"""Ring descriptors, prime ideals and spectral posets for the affine backends."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from ..exact.factor import factor_poly, is_irreducible
from ..exact.field import Field
from ..exact.poly import Poly, format_poly
from .monomial import MonomialIdeal, format_monomial


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime of an affine backend.

    ``key`` is the structural identity (an int or monic ``Poly`` for a PID,
    a frozenset of variable indices for a monomial quotient, a factor index
    for a finite ring); ``dim`` is the Krull dimension of ``R/p``.
    """

    kind: str
    key: object = field(compare=True)
    label: str = field(compare=False)
    dim: int = field(compare=False)
    order: tuple = field(compare=False, repr=False)

    def __str__(self):
        return self.label

    def __lt__(self, other):
        return self.order < other.order


def sort_primes(primes):
    return sorted(primes, key=lambda p: p.order)


def format_prime_set(primes) -> str:
    return "{" + ", ".join(p.label for p in sort_primes(primes)) + "}"


class SpectralPoset:
    """Finitely many primes under the specialization order.

    ``leq(p, q)`` means ``p`` is a specialization of ``q`` (``p ⊇ q``), so the
    generic points are the maximal elements.
    """

    def __init__(self, elements, leq):
        self.elements = tuple(sort_primes(set(elements)))
        self._leq = leq
        self.matrix = tuple(tuple(bool(leq(p, q)) for q in self.elements) for p in self.elements)

    def leq(self, p, q) -> bool:
        return p == q or self._leq(p, q)

    def down(self, subset) -> frozenset:
        """Specialization closure inside the poset."""
        subset = set(subset)
        return frozenset(p for p in self.elements if any(self.leq(p, q) for q in subset))

    def maximal(self, subset) -> frozenset:
        subset = set(subset)
        return frozenset(p for p in subset if not any(q != p and self.leq(p, q) for q in subset))

    def __contains__(self, p):
        return p in self.elements

    def __len__(self):
        return len(self.elements)


# ---------------------------------------------------------------------------
# PID backend


class PIDRing:
    """Z or k[t]."""

    kind = "pid"
    dim = 1

    def __init__(self, base: Field | None = None):
        self.base = base  # None means the integers

    @property
    def is_integers(self):
        return self.base is None

    def __eq__(self, other):
        return isinstance(other, PIDRing) and other.base == self.base

    def __hash__(self):
        return hash(("pid", self.base))

    def __str__(self):
        return "ZZ" if self.base is None else f"{self.base}[t]"

    @cached_property
    def zero_prime(self) -> PrimeIdeal:
        return PrimeIdeal("pid", 0, "(0)", 1, (0,))

    def prime(self, value) -> PrimeIdeal:
        """The maximal ideal generated by a prime integer / irreducible polynomial."""
        if self.base is None:
            v = abs(int(value))
            if v < 2 or any(v % d == 0 for d in range(2, int(v**0.5) + 1)):
                raise ValueError(f"{value} is not a prime number")
            return PrimeIdeal("pid", v, f"({v})", 0, (1, v))
        f = value if isinstance(value, Poly) else Poly.const(value, self.base)
        f = f.monic()
        if not is_irreducible(f):
            raise ValueError(f"{f} is not irreducible over {self.base}")
        return PrimeIdeal("pid", f, f"({format_poly(f)})", 0, (1,) + f.sort_key())

    def factor(self, value) -> list:
        """Prime-power factorisation ``[(prime, exponent)]`` of a nonzero element."""
        if self.base is None:
            n = abs(int(value))
            if n == 0:
                raise ValueError("zero has no factorisation")
            out = []
            d = 2
            while d * d <= n:
                e = 0
                while n % d == 0:
                    n //= d
                    e += 1
                if e:
                    out.append((self.prime(d), e))
                d += 1
            if n > 1:
                out.append((self.prime(n), 1))
            return out
        f = value if isinstance(value, Poly) else Poly.const(value, self.base)
        if f.is_zero():
            raise ValueError("zero has no factorisation")
        return [(self.prime(g), e) for g, e in factor_poly(f)]

    def spectral_poset(self, primes=()) -> SpectralPoset:
        elems = {self.zero_prime} | set(primes)
        return SpectralPoset(elems, lambda p, q: q.key == 0 and p.key != 0)

    def ass_ring(self):
        return frozenset({self.zero_prime})


# ---------------------------------------------------------------------------
# Monomial quotients k[x_1..x_n]/I


class MonomialRing:
    """``k[x_1..x_n]/I`` with ``I`` a monomial ideal."""

    kind = "monomial"

    def __init__(self, field_: Field, names, relations: MonomialIdeal):
        self.field = field_
        self.names = tuple(names)
        self.n = len(self.names)
        if relations.nvars != self.n:
            raise ValueError("relation ideal lives in the wrong polynomial ring")
        if relations.is_unit():
            raise ValueError("the zero ring is not supported")
        self.relations = relations

    def __eq__(self, other):
        return (isinstance(other, MonomialRing) and other.field == self.field
                and other.names == self.names and other.relations == self.relations)

    def __hash__(self):
        return hash(("mono", self.field, self.names, self.relations))

    def __str__(self):
        rel = self.relations.format(self.names)
        base = f"{self.field}[{','.join(self.names)}]"
        return base if not self.relations.gens else f"{base}/{rel}"

    def prime(self, sigma) -> PrimeIdeal:
        sigma = frozenset(sigma)
        for g in self.relations.gens:
            if not any(g[i] for i in sigma):
                raise ValueError(
                    f"(x_i : i in {sorted(sigma)}) does not contain the relation "
                    f"{format_monomial(g, self.names)}")
        label = "(" + ",".join(self.names[i] for i in sorted(sigma)) + ")" if sigma else "(0)"
        return PrimeIdeal("monomial", sigma, label, self.n - len(sigma),
                          (len(sigma), tuple(sorted(sigma))))

    def prime_from_label(self, text):
        t = text.strip()
        if not (t.startswith("(") and t.endswith(")")):
            raise ValueError(f"bad prime {text!r}")
        inner = [s.strip() for s in t[1:-1].split(",") if s.strip()]
        if inner == ["0"]:
            inner = []
        try:
            return self.prime(self.names.index(s) for s in inner)
        except ValueError as exc:
            raise ValueError(f"bad prime {text!r}: {exc}") from None

    @cached_property
    def primes(self):
        """All monomial primes of R."""
        out = []
        for k in range(self.n + 1):
            for sigma in combinations(range(self.n), k):
                try:
                    out.append(self.prime(sigma))
                except ValueError:
                    pass
        return tuple(sort_primes(out))

    def spectral_poset(self, primes=()) -> SpectralPoset:
        return SpectralPoset(set(self.primes) | set(primes), lambda p, q: q.key < p.key)

    @cached_property
    def dim(self):
        return max(p.dim for p in self.primes)

    def ass_ring(self):
        from .monomial import associated_supports
        return frozenset(self.prime(s) for s in associated_supports(self.relations))


# ---------------------------------------------------------------------------
# Finite products of chain rings


@dataclass(frozen=True)
class ChainRing:
    """``Z/p^k`` (``poly_var`` None) or ``F_p[x]/(x^k)``."""

    p: int
    k: int
    poly_var: str | None = None

    def __str__(self):
        if self.poly_var is None:
            return f"Z/{self.p ** self.k}"
        return f"GF({self.p})[{self.poly_var}]/({self.poly_var}^{self.k})"


class FiniteRing:
    kind = "finite"
    dim = 0

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("a finite ring needs at least one chain-ring factor")
        self.factors = factors

    @classmethod
    def integers_mod(cls, n: int) -> "FiniteRing":
        if n < 2:
            raise ValueError("modulus must be >= 2")
        return cls(ChainRing(p.key, e) for p, e in PIDRing().factor(n))

    def __eq__(self, other):
        return isinstance(other, FiniteRing) and other.factors == self.factors

    def __hash__(self):
        return hash(("finite", self.factors))

    def __str__(self):
        if all(f.poly_var is None for f in self.factors):
            n = 1
            for f in self.factors:
                n *= f.p ** f.k
            return f"Z/{n}"
        return " x ".join(str(f) for f in self.factors)

    def prime(self, index: int) -> PrimeIdeal:
        f = self.factors[index]
        labels = [self._raw_label(i) for i in range(len(self.factors))]
        label = labels[index]
        if labels.count(label) > 1:
            label = f"{label}[{index + 1}]"
        return PrimeIdeal("finite", index, label, 0, (index,))

    def _raw_label(self, i):
        f = self.factors[i]
        return f"({f.p})" if f.poly_var is None else f"({f.poly_var})"

    def prime_from_label(self, text):
        t = text.strip()
        for i in range(len(self.factors)):
            if self.prime(i).label == t:
                return self.prime(i)
        raise ValueError(f"unknown prime {text!r} of {self}")

    @cached_property
    def primes(self):
        return tuple(self.prime(i) for i in range(len(self.factors)))

    def spectral_poset(self, primes=()) -> SpectralPoset:
        return SpectralPoset(self.primes, lambda p, q: False)

    def ass_ring(self):
        return frozenset(self.primes)
