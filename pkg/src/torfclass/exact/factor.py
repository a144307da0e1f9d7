"""Factorisation of univariate polynomials over F_p and Q."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .field import Field
from .poly import Poly, poly_gcd


def factor_poly(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors of ``f`` with multiplicities.

    The result is sorted by :meth:`Poly.sort_key`; ``f`` equals the product
    of the factors times the leading coefficient of ``f``.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.degree == 0:
        return []
    if f.field.is_finite:
        out = {}
        for g, e in _squarefree(f.monic()):
            for h in _distinct_degree(g):
                for q in _equal_degree(h[0], h[1]):
                    out[q] = out.get(q, 0) + e
    else:
        out = _factor_rational(f)
    return sorted(out.items(), key=lambda kv: kv[0].sort_key())


def is_irreducible(f: Poly) -> bool:
    if f.is_zero() or f.degree < 1:
        return False
    fac = factor_poly(f)
    return len(fac) == 1 and fac[0][1] == 1


def _pth_root(f: Poly) -> Poly:
    p = f.field.p
    return Poly(f.coeffs[::p], f.field)


def _squarefree(f: Poly):
    """Squarefree decomposition of a monic polynomial in characteristic p."""
    one = Poly.const(1, f.field)
    p = f.field.p
    res = []
    df = f.derivative()
    if df.is_zero():
        return [(g, e * p) for g, e in _squarefree(_pth_root(f))]
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w != one:
        y = poly_gcd(w, c)
        z = w // y
        if z != one:
            res.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if c != one:
        res.extend((g, e * p) for g, e in _squarefree(_pth_root(c.monic())))
    return res


def _distinct_degree(f: Poly):
    """Split a squarefree monic ``f`` into products of equal-degree factors."""
    field = f.field
    t = Poly.t(field)
    out = []
    h = t
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(field.p, f)
        g = poly_gcd(h - t, f)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def _candidates(field: Field, below: int):
    """All polynomials of degree < ``below``, in a fixed order."""
    for deg in range(1, below):
        for tail in itertools.product(field.elements(), repeat=deg):
            yield Poly(tail + (1,), field)


def _equal_degree(g: Poly, d: int) -> list[Poly]:
    if g.degree == d:
        return [g]
    field = g.field
    p = field.p
    one = Poly.const(1, field)
    for a in _candidates(field, g.degree):
        if p == 2:
            b = a % g
            acc = b
            for _ in range(d - 1):
                b = (b * b) % g
                acc = acc + b
        else:
            acc = a.pow_mod((p**d - 1) // 2, g) - one
        h = poly_gcd(acc, g)
        if 0 < h.degree < g.degree:
            return _equal_degree(h, d) + _equal_degree(g // h, d)
    raise AssertionError("equal-degree splitting failed")  # unreachable for squarefree input


def _factor_rational(f: Poly):
    import sympy

    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(f.coeffs))
    _, factors = sympy.factor_list(expr, t, domain="QQ")
    out = {}
    for fac, e in factors:
        coeffs = sympy.Poly(fac, t).all_coeffs()[::-1]
        q = Poly(tuple(Fraction(int(c.p), int(c.q)) for c in coeffs), f.field).monic()
        out[q] = out.get(q, 0) + e
    return out


def irreducibles_up_to_degree(field: Field, d: int) -> list[Poly]:
    """Every monic irreducible polynomial of degree 1..d over F_p, sorted."""
    if not field.is_finite:
        raise ValueError("irreducibles can only be enumerated over a finite field")
    if d < 1:
        raise ValueError("degree bound must be >= 1")
    out = []
    for deg in range(1, d + 1):
        for tail in itertools.product(field.elements(), repeat=deg):
            f = Poly(tail + (1,), field)
            if deg == 1 or is_irreducible(f):
                out.append(f)
    return sorted(out, key=Poly.sort_key)
