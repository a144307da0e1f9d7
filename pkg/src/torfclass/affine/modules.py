"""Normal forms of finitely generated modules over the affine backends.

* PID: free rank plus a multiset of prime powers (elementary divisors).
* Monomial quotient: a finite direct sum of cyclic modules ``R/J``.
* Finite ring: one partition per chain-ring factor.

Every class is an immutable value with a canonical ``sort_key``; the zero
module has empty data.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

from ..errors import ParseError
from ..exact.poly import Poly, parse_poly
from ..exact.snf import IntegerRing, PolyRing, smith_normal_form
from ..partitions import normalize
from .monomial import MonomialIdeal
from .rings import FiniteRing, MonomialRing, PIDRing


@dataclass(frozen=True)
class PIDModule:
    ring: PIDRing
    free: int
    torsion: tuple  # ((PrimeIdeal, exponent), ...)

    def __post_init__(self):
        if self.free < 0:
            raise ValueError("negative free rank")
        for p, e in self.torsion:
            if e < 1 or p.key == 0:
                raise ValueError("torsion summands need a maximal prime and exponent >= 1")
        tors = tuple(sorted(self.torsion, key=lambda pe: (pe[0].order, -pe[1])))
        object.__setattr__(self, "torsion", tors)

    def is_zero(self):
        return self.free == 0 and not self.torsion

    def primes(self):
        return sorted({p for p, _ in self.torsion}, key=lambda p: p.order)

    def partition(self, p):
        return normalize(e for q, e in self.torsion if q == p)

    @property
    def length(self):
        return sum(e for _, e in self.torsion)

    def sort_key(self):
        return (self.free, self.length, len(self.torsion),
                tuple((p.order, -e) for p, e in self.torsion))

    def __add__(self, other):
        return PIDModule(self.ring, self.free + other.free, self.torsion + other.torsion)

    def indecomposables(self):
        z = PIDModule(self.ring, 1, ())
        return [z] * self.free + [PIDModule(self.ring, 0, (pe,)) for pe in self.torsion]

    def __str__(self):
        name = "Z" if self.ring.is_integers else "R"
        parts = []
        if self.free:
            parts.append(name if self.free == 1 else f"{name}^{self.free}")
        for p, e in self.torsion:
            if self.ring.is_integers:
                parts.append(f"Z/{p.key ** e}")
            else:
                gen = p.label[1:-1]
                parts.append(f"R/({gen})" if e == 1 else f"R/(({gen})^{e})")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class MonomialModule:
    ring: MonomialRing
    summands: tuple  # of MonomialIdeal, each containing the relations, none the unit

    def __post_init__(self):
        kept = []
        for J in self.summands:
            if not J.contains_ideal(self.ring.relations):
                raise ValueError(f"{J.format(self.ring.names)} does not contain the relations")
            if not J.is_unit():
                kept.append(J)
        object.__setattr__(self, "summands", tuple(sorted(kept, key=_ideal_key)))

    def is_zero(self):
        return not self.summands

    def sort_key(self):
        return (len(self.summands), tuple(_ideal_key(J) for J in self.summands))

    def __add__(self, other):
        return MonomialModule(self.ring, self.summands + other.summands)

    def indecomposables(self):
        # cyclic R/J with J monomial are indecomposable when R/J is local-graded
        return [MonomialModule(self.ring, (J,)) for J in self.summands]

    def __str__(self):
        if not self.summands:
            return "0"
        out = []
        for J in self.summands:
            out.append("R" if J == self.ring.relations else f"R/{J.format(self.ring.names)}")
        return " + ".join(out)


def _ideal_key(J):
    return (len(J.gens), tuple(tuple(-x for x in g) for g in J.gens))


@dataclass(frozen=True)
class FiniteModule:
    ring: FiniteRing
    parts: tuple  # one partition per factor

    def __post_init__(self):
        if len(self.parts) != len(self.ring.factors):
            raise ValueError("one partition per factor expected")
        parts = tuple(normalize(p) for p in self.parts)
        for lam, f in zip(parts, self.ring.factors):
            if lam and lam[0] > f.k:
                raise ValueError(f"cyclic summand of length {lam[0]} exceeds {f}")
        object.__setattr__(self, "parts", parts)

    def is_zero(self):
        return not any(self.parts)

    @property
    def length(self):
        return sum(sum(p) for p in self.parts)

    def sort_key(self):
        return (self.length, sum(len(p) for p in self.parts), self.parts)

    def __add__(self, other):
        return FiniteModule(self.ring, tuple(a + b for a, b in zip(self.parts, other.parts)))

    def indecomposables(self):
        out = []
        empty = [()] * len(self.parts)
        for i, lam in enumerate(self.parts):
            for e in lam:
                d = list(empty)
                d[i] = (e,)
                out.append(FiniteModule(self.ring, tuple(d)))
        return out

    def __str__(self):
        out = []
        ints = all(f.poly_var is None for f in self.ring.factors)
        for i, (lam, f) in enumerate(zip(self.parts, self.ring.factors)):
            for e in lam:
                if ints:
                    out.append(f"Z/{f.p ** e}")
                elif len(self.ring.factors) == 1:
                    out.append("R" if e == f.k else f"R/({f.poly_var}^{e})")
                else:
                    out.append(f"R{i + 1}/({f.poly_var}^{e})")
        return " + ".join(out) if out else "0"


def zero_module(ring):
    if isinstance(ring, PIDRing):
        return PIDModule(ring, 0, ())
    if isinstance(ring, MonomialRing):
        return MonomialModule(ring, ())
    return FiniteModule(ring, ((),) * len(ring.factors))


def direct_sum(mods, ring=None):
    mods = list(mods)
    acc = zero_module(ring if ring is not None else mods[0].ring)
    for m in mods:
        acc = acc + m
    return acc


def summands(M):
    """All direct summands of ``M`` up to isomorphism (Krull-Schmidt)."""
    pieces = M.indecomposables()
    out = {}
    for k in range(len(pieces) + 1):
        for combo in combinations(range(len(pieces)), k):
            S = direct_sum((pieces[i] for i in combo), M.ring)
            out[S] = None
    return sorted(out, key=lambda m: m.sort_key())


# ---------------------------------------------------------------------------
# literals

def _split_terms(text):
    depth = 0
    terms, cur, start = [], "", 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "+" and depth == 0:
            terms.append((cur, start))
            cur, start = "", i + 1
        else:
            cur += ch
    terms.append((cur, start))
    return terms


def parse_module(text: str, ring):
    """Parse a module literal such as ``Z^2 + Z/12`` or ``R/(x^2,y) + R``."""
    if not isinstance(text, str):
        raise ParseError(f"module literal must be a string, got {text!r}")
    mods = []
    for term, start in _split_terms(text):
        body = term.strip()
        col = start + (len(term) - len(term.lstrip())) + 1
        if not body:
            raise ParseError("empty summand", text, column=col)
        try:
            mods.append(_parse_term(body, ring))
        except ParseError as exc:
            raise ParseError(exc.message, text, column=col) from None
        except ValueError as exc:
            raise ParseError(str(exc), text, column=col) from None
    return direct_sum(mods, ring)


def _power(body):
    m = re.fullmatch(r"(Z|R\d*|\(.*\))\s*\^\s*(\d+)", body)
    if m:
        base = m.group(1)
        if base.startswith("("):
            base = base[1:-1].strip()
        return base, int(m.group(2))
    return body, 1


def _parse_term(body, ring):
    if body == "0":
        return zero_module(ring)
    base, mult = _power(body)
    if base in ("R", "Z") or re.fullmatch(r"R\d+", base):
        mod = _whole_ring(ring, base)
    elif base.startswith("coker"):
        mod = _parse_coker(base, ring)
    else:
        mod = _parse_quotient(base, ring)
    return direct_sum([mod] * mult, ring)


def _whole_ring(ring, base):
    if isinstance(ring, PIDRing):
        if base == "Z" and not ring.is_integers:
            raise ParseError("use R for k[t]")
        return PIDModule(ring, 1, ())
    if isinstance(ring, MonomialRing):
        return MonomialModule(ring, (ring.relations,))
    if base == "Z" and not all(f.poly_var is None for f in ring.factors):
        raise ParseError("use R for a polynomial chain ring")
    if re.fullmatch(r"R\d+", base):
        i = int(base[1:]) - 1
        if not 0 <= i < len(ring.factors):
            raise ParseError(f"no factor {base}")
        parts = [()] * len(ring.factors)
        parts[i] = (ring.factors[i].k,)
        return FiniteModule(ring, tuple(parts))
    return FiniteModule(ring, tuple((f.k,) for f in ring.factors))


def _parse_quotient(base, ring):
    m = re.fullmatch(r"(Z|R\d*)\s*/\s*(.+)", base)
    if not m:
        raise ParseError(f"cannot parse summand {base!r}")
    head, rel = m.group(1), m.group(2).strip()
    if isinstance(ring, PIDRing):
        if ring.is_integers:
            n = int(rel.strip("()"))
            if n == 0:
                return PIDModule(ring, 1, ())
            return PIDModule(ring, 0, tuple(ring.factor(n)))
        f = parse_poly(_strip_parens(rel), ring.base)
        if f.is_zero():
            return PIDModule(ring, 1, ())
        return PIDModule(ring, 0, tuple(ring.factor(f)))
    if isinstance(ring, MonomialRing):
        gens = [g.strip() for g in _strip_parens(rel).split(",") if g.strip()]
        J = MonomialIdeal(ring.n, tuple(_parse_monomial(g, ring.names) for g in gens))
        return MonomialModule(ring, (J + ring.relations,))
    return _finite_quotient(head, rel, ring)


def _finite_quotient(head, rel, ring):
    rel = _strip_parens(rel)
    parts = [()] * len(ring.factors)
    if all(f.poly_var is None for f in ring.factors) and head in ("Z", "R"):
        d = int(rel)
        if d == 0:
            return _whole_ring(ring, "R")
        for i, f in enumerate(ring.factors):
            e = 0
            while d % f.p == 0 and d:
                d //= f.p
                e += 1
            parts[i] = (min(e, f.k),)
        return FiniteModule(ring, tuple(parts))
    idx = int(head[1:]) - 1 if head[1:] else 0
    if len(ring.factors) > 1 and not head[1:]:
        raise ParseError("name the factor, e.g. R2/(x^2)")
    f = ring.factors[idx]
    mm = re.fullmatch(rf"{f.poly_var}(?:\^(\d+))?", rel.replace(" ", ""))
    if not mm:
        raise ParseError(f"expected a power of {f.poly_var}, got {rel!r}")
    parts[idx] = (min(int(mm.group(1) or 1), f.k),)
    return FiniteModule(ring, tuple(parts))


def _strip_parens(s):
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        return s[1:-1]
    return s


def _parse_monomial(text, names):
    exps = [0] * len(names)
    if text == "1":
        return tuple(exps)
    for factor in text.split("*"):
        factor = factor.strip()
        m = re.fullmatch(r"([A-Za-z]\w*)(?:\^(\d+))?", factor)
        if not m or m.group(1) not in names:
            raise ParseError(f"bad monomial factor {factor!r}")
        exps[names.index(m.group(1))] += int(m.group(2) or 1)
    return tuple(exps)


def _parse_coker(base, ring):
    if not isinstance(ring, PIDRing):
        raise ParseError("presentations are only supported over a PID")
    m = re.fullmatch(r"coker\s*\((.*)\)", base, re.S)
    if not m:
        raise ParseError("expected coker([[...],[...]])")
    rows = _parse_matrix(m.group(1), ring)
    return module_from_presentation(rows, ring)


def _parse_matrix(text, ring):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("matrix must be a list of rows")
    rows = re.findall(r"\[([^\[\]]*)\]", text[1:-1])
    out = []
    for r in rows:
        entries = [e.strip() for e in r.split(",") if e.strip()]
        if ring.is_integers:
            out.append([int(e) for e in entries])
        else:
            out.append([parse_poly(e, ring.base) for e in entries])
    return out


def module_from_presentation(rows, ring: PIDRing) -> PIDModule:
    """Cokernel of a presentation matrix (rows = generators, columns = relations)."""
    euclid = IntegerRing() if ring.is_integers else PolyRing(ring.base)
    snf = smith_normal_form(rows, euclid)
    tors = []
    for d in snf.diagonal:
        if euclid.is_zero(d):
            continue
        if isinstance(d, Poly):
            if d.degree == 0:
                continue
        elif d == 1:
            continue
        tors.extend(ring.factor(d))
    return PIDModule(ring, snf.rows - snf.rank, tuple(tors))
