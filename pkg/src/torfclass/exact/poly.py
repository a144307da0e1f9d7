"""Dense univariate polynomials over a :class:`Field`."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParseError
from .field import Field

NEG_INF = float("-inf")  # degree of the zero polynomial


@dataclass(frozen=True)
class Poly:
    """Polynomial with coefficients ``coeffs[i]`` of ``t**i``.

    The coefficient tuple never has a trailing zero, so the zero polynomial
    is the empty tuple and ``degree`` is :data:`NEG_INF` for it.
    """

    coeffs: tuple
    field: Field

    def __post_init__(self):
        c = [self.field(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, field):
        return cls((), field)

    @classmethod
    def const(cls, value, field):
        return cls((value,), field)

    @classmethod
    def monomial(cls, deg, field, coeff=1):
        return cls((0,) * deg + (coeff,), field)

    @classmethod
    def t(cls, field):
        return cls((0, 1), field)

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self):
        if self.is_zero():
            return self
        inv = self.field.inv(self.lead)
        return Poly(tuple(self.field.mul(c, inv) for c in self.coeffs), self.field)

    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = self.field.add(self.field.mul(acc, x), c)
        return acc

    def sort_key(self):
        """Degree first, then coefficients from the top down."""
        return (len(self.coeffs), tuple(reversed([_key(c) for c in self.coeffs])))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other
        return Poly.const(other, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(tuple(self.field.add(x, y) for x, y in zip(a, b)), self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(self.field.neg(c) for c in self.coeffs), self.field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        f = self.field
        out = [f.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Poly(tuple(out), f)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly.const(1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(f), self
        quot = [f.zero] * (dq + 1)
        inv_lead = f.inv(other.lead)
        for k in range(dq, -1, -1):
            c = f.mul(rem[k + len(other.coeffs) - 1], inv_lead)
            quot[k] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = f.sub(rem[k + j], f.mul(c, b))
        return Poly(tuple(quot), f), Poly(tuple(rem[: len(other.coeffs) - 1]), f)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other):
        return (other % self).is_zero() if not self.is_zero() else other.is_zero()

    def derivative(self):
        f = self.field
        return Poly(tuple(f.mul(f(i), c) for i, c in enumerate(self.coeffs))[1:], f)

    def pow_mod(self, n: int, modulus: "Poly"):
        result = Poly.const(1, self.field) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self}, {self.field})"


def _key(c):
    return (c.numerator, c.denominator) if isinstance(c, Fraction) else c


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def format_poly(f: Poly, var: str = "t") -> str:
    if f.is_zero():
        return "0"
    terms = []
    for i in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[i]
        if c == 0:
            continue
        if isinstance(c, Fraction) and c.denominator != 1:
            cs = f"{c.numerator}/{c.denominator}"
        else:
            cs = str(int(c))
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        if i == 0:
            body = cs
        else:
            mon = var if i == 1 else f"{var}^{i}"
            body = mon if cs == "1" else f"{cs}*{mon}"
        terms.append(("-" if neg else "+", body))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f"{sign}{body}"
    return out


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?
        (?:(?P<var>[A-Za-z])(?:\s*\^\s*(?P<exp>\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_poly(text: str, field: Field, var: str = "t") -> Poly:
    """Parse strings such as ``t^2+t+1``, ``2*t - 1/3`` or ``t2+1``-free forms.

    Only the single variable ``var`` is accepted.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial", text, column=1)
    pos = 0
    acc = Poly.zero(field)
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {s[pos]!r}", text, column=pos + 1)
        sign, coef, v, exp = m.group("sign", "coef", "var", "exp")
        if sign is None and not first:
            raise ParseError("missing '+' or '-' between terms", text, column=pos + 1)
        if coef is None and v is None:
            raise ParseError("empty term", text, column=pos + 1)
        if v is not None and v != var:
            raise ParseError(f"unknown variable {v!r} (expected {var!r})", text,
                             column=m.start("var") + 1)
        c = field.parse_scalar(coef) if coef is not None else field.one
        if sign == "-":
            c = field.neg(c)
        deg = 0 if v is None else (int(exp) if exp is not None else 1)
        acc = acc + Poly.monomial(deg, field, c)
        pos = m.end()
        first = False
    return acc
