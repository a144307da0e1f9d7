"""Coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParseError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """A prime field F_p (``p`` prime, ``p < 2**31``) or Q (``p == 0``).

    Scalars are plain Python values: ints reduced to ``[0, p)`` over F_p and
    :class:`fractions.Fraction` over Q (always in lowest terms, positive
    denominator).
    """

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not (_is_prime(self.p) and self.p < 2**31):
            raise ValueError(f"characteristic must be 0 or a prime < 2^31, got {self.p}")

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    def __str__(self):
        return f"GF({self.p})" if self.p else "QQ"

    def __call__(self, value):
        """Coerce an int or Fraction into the field."""
        if self.p:
            if isinstance(value, Fraction):
                return (value.numerator * self.inv(value.denominator % self.p)) % self.p
            return int(value) % self.p
        return Fraction(value)

    zero = property(lambda self: self(0))
    one = property(lambda self: self(1))

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(a), -1, self.p)
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        """All elements of a finite field, in increasing order."""
        if not self.p:
            raise ValueError("QQ is infinite")
        return range(self.p)

    def parse_scalar(self, text: str):
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return self.div(self(int(num)), self(int(den)))
            return self(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient {text!r}: {exc}", text) from None


def parse_field(text: str) -> Field:
    """Parse ``QQ``/``Q`` or ``GF(p)``/``F_p``/``Fp``."""
    t = text.strip().replace(" ", "")
    if t in ("QQ", "Q"):
        return Field(0)
    for prefix, suffix in (("GF(", ")"), ("F_", ""), ("F", "")):
        if t.startswith(prefix) and t.endswith(suffix):
            core = t[len(prefix): len(t) - len(suffix)]
            if core.isdigit():
                try:
                    return Field(int(core))
                except ValueError as exc:
                    raise ParseError(str(exc), text) from None
    raise ParseError(f"unknown field {text!r} (expected QQ or GF(p))", text)
