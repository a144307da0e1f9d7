"""Brute-force reference implementations used by the tests.

Nothing here imports the package; each oracle works from first principles
(determinants, explicit group elements, colon ideals, monomial counting).
"""

from __future__ import annotations

from functools import lru_cache, reduce
from itertools import combinations, permutations, product
from math import gcd


# -- integer matrices ----------------------------------------------------------

def det(M):
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= M[i][perm[i]]
        total += term
    return total


def invariant_factors(M):
    """Invariant factors from determinantal divisors d_k = gcd of k x k minors."""
    m, n = len(M), len(M[0])
    ds = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, det([[M[r][c] for c in cols] for r in rows]))
        if g == 0:
            break
        ds.append(g)
    out = [ds[k] // ds[k - 1] for k in range(1, len(ds))]
    return out + [0] * (min(m, n) - len(out))


# -- polynomials over F_p as coefficient lists (low degree first) ---------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def pmod(a, b, p):
    a = _trim(a)
    b = _trim(b)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        q = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            a[i + shift] = (a[i + shift] - q * x) % p
        a = _trim(a)
    return a


def monic_polys(p, d):
    for tail in product(range(p), repeat=d):
        yield list(tail) + [1]


def brute_irreducible(f, p):
    d = len(_trim(f)) - 1
    if d < 1:
        return False
    for e in range(1, d // 2 + 1):
        for g in monic_polys(p, e):
            if not pmod(f, g, p):
                return False
    return True


def count_irreducibles(p, d):
    return sum(1 for f in monic_polys(p, d) if brute_irreducible(f, p))


def brute_factor(f, p):
    """Sorted list of (coefficient tuple, multiplicity) by trial division."""
    f = _trim(f)
    lead_inv = pow(f[-1], p - 2, p)
    f = [x * lead_inv % p for x in f]
    out = {}
    d = 1
    while len(f) > 1:
        found = False
        for g in monic_polys(p, d):
            if brute_irreducible(g, p) and not pmod(f, g, p):
                f = pdiv_exact(f, g, p)
                out[tuple(g)] = out.get(tuple(g), 0) + 1
                found = True
                break
        if not found:
            d += 1
    return sorted(out.items(), key=lambda kv: (len(kv[0]), kv[0][::-1]))


def pdiv_exact(a, b, p):
    a = _trim(a)
    inv = pow(b[-1], p - 2, p)
    q = [0] * (len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, x in enumerate(b):
            a[i + shift] = (a[i + shift] - c * x) % p
        a = _trim(a)
    return q


# -- finite abelian groups as explicit element sets -----------------------------

class Group:
    """``Z/n_1 x ... x Z/n_k`` with all elements listed."""

    def __init__(self, orders):
        self.orders = tuple(orders)
        self.elements = list(product(*(range(n) for n in self.orders))) if self.orders else [()]

    def add(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def mul(self, k, a):
        return tuple(k * x % n for x, n in zip(a, self.orders))

    @property
    def zero(self):
        return tuple(0 for _ in self.orders)

    def span(self, gens, start=None):
        H = set(start) if start else {self.zero}
        frontier = list(H)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.add(x, g)
                if y not in H:
                    H.add(y)
                    frontier.append(y)
        return frozenset(H)

    def subgroups(self):
        seen = {frozenset([self.zero])}
        frontier = list(seen)
        while frontier:
            H = frontier.pop()
            for g in self.elements:
                if g not in H:
                    K = self.span([g], H)
                    if K not in seen:
                        seen.add(K)
                        frontier.append(K)
        return seen

    def exponent(self):
        return reduce(lambda a, b: a * b // gcd(a, b), self.orders, 1)


PRIME_POWERS = (2, 4, 8, 16, 32, 64, 3, 9, 27, 5, 25)


def signature_of_quotient(G: Group, H):
    """``q -> #{x + H : qx in H}`` over prime powers q; determines the iso type."""
    return tuple(sum(1 for x in G.elements if G.mul(q, x) in H) // len(H) for q in PRIME_POWERS)


def signature_of_sub(G, H):
    return tuple(sum(1 for x in H if G.mul(q, x) == G.zero) for q in PRIME_POWERS)


def signature(orders):
    G = Group(orders)
    return signature_of_sub(G, G.elements)


@lru_cache(maxsize=None)
def _pairs(orders):
    """All (sub type, quotient type) pairs realised by subgroups of the group."""
    G = Group(orders)
    return frozenset((signature_of_sub(G, H), signature_of_quotient(G, H)) for H in G.subgroups())


def group_is_sub(N, M):
    want = signature(tuple(N))
    return any(s == want for s, _ in _pairs(tuple(M)))


def group_is_quot(Q, M):
    want = signature(tuple(Q))
    return any(q == want for _, q in _pairs(tuple(M)))


def group_is_ext(A, E, B):
    return (signature(tuple(A)), signature(tuple(B))) in _pairs(tuple(E))


# -- monomial ideals -------------------------------------------------------------

def m_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def in_ideal(m, gens):
    return any(m_divides(g, m) for g in gens)


def colon(gens, m):
    out = [tuple(max(0, g - e) for g, e in zip(g_, m)) for g_ in gens]
    return [g for g in out if not any(h != g and m_divides(h, g) for h in out)]


def monomial_ass(gens, nvars):
    """Supports of the primes ``(J : m)`` that are generated by variables.

    Every associated prime of a monomial quotient arises this way for some
    monomial ``m`` of degree below the sum of the generator exponents.
    """
    bound = sum(max(g[i] for g in gens) for i in range(nvars)) + 1
    found = set()
    for m in product(range(bound), repeat=nvars):
        if in_ideal(m, gens):
            continue
        C = colon(gens, m)
        if all(sum(g) == 1 for g in C):
            found.add(frozenset(g.index(1) for g in C))
    return found


# -- line bundles on P^1 -----------------------------------------------------------

def h0_line(n):
    """Monomials x^i y^j, i, j >= 0, of degree n."""
    return sum(1 for i in range(n + 1) if 0 <= n - i) if n >= 0 else 0


def h1_line(n):
    """Cech count: Laurent monomials x^i y^j with i, j <= -1 of degree n."""
    return sum(1 for i in range(n, 0) if n - i <= -1)
