"""Coherent sheaves on P^1 in split normal form.

Every coherent sheaf is ``(+) O(n_i) (+) (+) O_{l.x}``; the normal form keeps
the twists (descending) and the torsion pairs ``(x, l)``.  Hom and Ext^1
dimensions are additive over summands, so the formulas for the three kinds
of indecomposables suffice.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError
from ..exact.field import Field
from ..partitions import normalize
from .points import ClosedPointP1, GenericPoint, parse_point

CANONICAL_TWIST = -2  # omega of P^1 is O(-2)


@dataclass(frozen=True)
class SheafP1:
    field: Field
    twists: tuple = ()
    torsion: tuple = ()  # ((ClosedPointP1, length), ...)

    def __post_init__(self):
        for x, l in self.torsion:
            if l < 1:
                raise ValueError("torsion lengths must be >= 1")
            if x.field != self.field:
                raise ValueError(f"point {x} lives over {x.field}, not {self.field}")
        object.__setattr__(self, "twists", tuple(sorted((int(n) for n in self.twists), reverse=True)))
        object.__setattr__(self, "torsion",
                           tuple(sorted(self.torsion, key=lambda xl: (xl[0].order, xl[1]))))

    # -- invariants -------------------------------------------------------
    def is_zero(self):
        return not self.twists and not self.torsion

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def torsion_degree(self) -> int:
        return sum(l * x.degree for x, l in self.torsion)

    @property
    def degree(self) -> int:
        return sum(self.twists) + self.torsion_degree

    @property
    def torsion_length(self) -> int:
        return sum(l for _, l in self.torsion)

    def points(self):
        return sorted({x for x, _ in self.torsion}, key=lambda x: x.order)

    def partition(self, x) -> tuple:
        """Local type of the torsion at ``x``."""
        return normalize(l for y, l in self.torsion if y == x)

    def sort_key(self):
        return (self.rank, self.torsion_length, len(self.torsion), tuple(-n for n in self.twists),
                tuple((x.order, l) for x, l in self.torsion))

    def __add__(self, other):
        return SheafP1(self.field, self.twists + other.twists, self.torsion + other.torsion)

    def indecomposables(self):
        return ([SheafP1(self.field, (n,)) for n in self.twists]
                + [SheafP1(self.field, (), (xl,)) for xl in self.torsion])

    def __str__(self):
        return format_sheaf(self)


def zero_sheaf(field_: Field) -> SheafP1:
    return SheafP1(field_)


def line_bundle(field_: Field, n: int) -> SheafP1:
    return SheafP1(field_, (n,))


def skyscraper(x: ClosedPointP1, length: int = 1) -> SheafP1:
    return SheafP1(x.field, (), ((x, length),))


def twist(F: SheafP1, m: int) -> SheafP1:
    return SheafP1(F.field, tuple(n + m for n in F.twists), F.torsion)


def decompose(F: SheafP1):
    """``(F_tor, F_vect)``; ``F`` is their direct sum."""
    return SheafP1(F.field, (), F.torsion), SheafP1(F.field, F.twists, ())


def euler_char(F: SheafP1) -> int:
    return F.degree + F.rank


def _hom_ind(a, b):
    """Hom dimension between two indecomposables given as ('O', n) or ('T', x, l)."""
    if a[0] == "O" and b[0] == "O":
        return max(b[1] - a[1] + 1, 0)
    if a[0] == "O":
        return b[2] * b[1].degree
    if b[0] == "O":
        return 0
    if a[1] != b[1]:
        return 0
    return min(a[2], b[2]) * a[1].degree


def _ext_ind(a, b):
    if a[0] == "O" and b[0] == "O":
        return max(a[1] - b[1] - 1, 0)
    if a[0] == "O":
        return 0
    if b[0] == "O":
        return a[2] * a[1].degree
    if a[1] != b[1]:
        return 0
    return min(a[2], b[2]) * a[1].degree


def _pieces(F):
    return [("O", n) for n in F.twists] + [("T", x, l) for x, l in F.torsion]


def hom_dim(F: SheafP1, G: SheafP1) -> int:
    return sum(_hom_ind(a, b) for a in _pieces(F) for b in _pieces(G))


def ext1_dim(F: SheafP1, G: SheafP1) -> int:
    return sum(_ext_ind(a, b) for a in _pieces(F) for b in _pieces(G))


def ass_p1(F: SheafP1) -> frozenset:
    out = {x for x, _ in F.torsion}
    if F.twists:
        out.add(GenericPoint(F.field))
    return frozenset(out)


# ---------------------------------------------------------------------------
# text grammar:  O(n) | O | T(point, len) | 0, joined by '+', optional ^k


def format_sheaf(F: SheafP1) -> str:
    parts = [("O" if n == 0 else f"O({n})") for n in F.twists]
    parts += [f"T({x.label},{l})" for x, l in F.torsion]
    return " + ".join(parts) if parts else "0"


_TERM = re.compile(r"(?:O\s*(?:\(\s*(?P<n>[+-]?\d+)\s*\))?|T\s*\((?P<pt>.*),\s*(?P<len>\d+)\s*\)|(?P<zero>0))"
                   r"(?:\s*\^\s*(?P<mult>\d+))?$", re.S)


def parse_sheaf(text: str, field_: Field) -> SheafP1:
    """Parse e.g. ``O(2) + T(t^2+t+1, 3)`` over ``field_``."""
    if not isinstance(text, str):
        raise ParseError(f"sheaf literal must be a string, got {text!r}")
    acc = zero_sheaf(field_)
    depth, start = 0, 0
    pieces = []
    for i, ch in enumerate(text + "+"):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0:
            pieces.append((text[start:i], start))
            start = i + 1
        if depth < 0:
            raise ParseError("unbalanced ')'", text, column=i + 1)
    if depth:
        raise ParseError("unbalanced '('", text, column=len(text))
    for raw, start in pieces:
        body = raw.strip()
        col = start + len(raw) - len(raw.lstrip()) + 1
        m = _TERM.match(body)
        if not body or not m:
            raise ParseError(f"cannot parse sheaf summand {body!r}", text, column=col)
        mult = int(m.group("mult") or 1)
        if m.group("zero"):
            continue
        if m.group("pt") is not None:
            try:
                x = parse_point(m.group("pt"), field_)
            except ParseError as exc:
                raise ParseError(exc.message, text, column=col) from None
            length = int(m.group("len"))
            if length < 1:
                raise ParseError("torsion length must be >= 1", text, column=col)
            piece = SheafP1(field_, (), ((x, length),))
        else:
            piece = SheafP1(field_, (int(m.group("n") or 0),))
        for _ in range(mult):
            acc = acc + piece
    return acc
