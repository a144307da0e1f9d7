"""Points of the projective line: the generic point and the closed points."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..affine.rings import SpectralPoset
from ..errors import ParseError
from ..exact.factor import irreducibles_up_to_degree, is_irreducible
from ..exact.field import Field
from ..exact.poly import Poly, format_poly, parse_poly


@dataclass(frozen=True)
class GenericPoint:
    """The generic point of P^1."""

    field: Field

    label = "eta"
    dim = 1
    degree = None

    @property
    def order(self):
        return (0,)

    def __str__(self):
        return self.label

    def __lt__(self, other):
        return self.order < other.order


@dataclass(frozen=True)
class ClosedPointP1:
    """``poly`` is a monic irreducible in ``k[t]``, or ``None`` for infinity."""

    field: Field
    poly: Poly | None = None
    order: tuple = field(init=False, compare=False, repr=False)

    dim = 0

    def __post_init__(self):
        if self.poly is not None:
            if not self.poly.is_monic() or not is_irreducible(self.poly):
                raise ValueError(f"{format_poly(self.poly)} is not monic irreducible")
            key = (1, self.poly.degree, 0) + self.poly.sort_key()
        else:
            key = (1, 1, 1)
        object.__setattr__(self, "order", key)

    @property
    def is_infinity(self):
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    @property
    def label(self):
        return "inf" if self.poly is None else format_poly(self.poly)

    def __str__(self):
        return self.label

    def __lt__(self, other):
        return self.order < other.order


def parse_point(text: str, field_: Field) -> ClosedPointP1:
    t = text.strip()
    if t.lower() in ("inf", "infinity", "oo"):
        return ClosedPointP1(field_)
    f = parse_poly(t, field_)
    if f.is_zero() or f.degree < 1:
        raise ParseError(f"a closed point needs a polynomial of positive degree, got {t!r}", text)
    if not f.is_monic():
        raise ParseError(f"point polynomial {t!r} must be monic", text)
    if not is_irreducible(f):
        raise ParseError(f"point polynomial {t!r} is reducible", text)
    return ClosedPointP1(field_, f)


def points_up_to_degree(field_: Field, d: int) -> list:
    """Infinity together with every monic irreducible of degree <= d."""
    pts = [ClosedPointP1(field_)] + [ClosedPointP1(field_, f)
                                     for f in irreducibles_up_to_degree(field_, d)]
    return sorted(pts, key=lambda x: x.order)


def count_points_of_degree(field_: Field, d: int) -> int:
    """Number of closed points of degree ``d`` on P^1 over F_p (necklace count)."""
    p = field_.p
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += _mobius(d // e) * p**e
    n = total // d
    return n + 1 if d == 1 else n


def _mobius(n):
    out, m, f = 1, n, 2
    while f * f <= m:
        if m % f == 0:
            m //= f
            if m % f == 0:
                return 0
            out = -out
        f += 1
    return -out if m > 1 else out


def p1_poset(points, field_: Field) -> SpectralPoset:
    eta = GenericPoint(field_)
    return SpectralPoset({eta} | set(points),
                         lambda p, q: isinstance(q, GenericPoint) and not isinstance(p, GenericPoint))
