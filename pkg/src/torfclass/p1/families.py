"""The three families of torsionfree classes of coherent sheaves on P^1.

* TypeI(Φ0): torsion sheaves supported on Φ0;
* TypeII(Φ0): sheaves whose torsion is supported on Φ0 (all bundles allowed);
* TypeIII(n): vector bundles that are sums of ``O(i)`` with ``i <= n``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import WindowTooSmall
from ..subcat.engine import EXT, SUB, closure_fixpoint
from .points import ClosedPointP1, GenericPoint
from .sheaf import SheafP1, ass_p1, twist

MIN_DEPTH = 3  # n - twist_min needed before a TypeIII fixpoint is trusted


@dataclass(frozen=True)
class TorfFamilyP1:
    kind: str  # "I", "II" or "III"
    points: frozenset = frozenset()
    n: int | None = None
    cofinite: bool = False  # points lists the complement when True

    def __post_init__(self):
        if self.kind not in ("I", "II", "III"):
            raise ValueError(f"unknown family type {self.kind!r}")
        if self.kind == "III" and self.n is None:
            raise ValueError("TypeIII needs a bound n")

    def has_point(self, x: ClosedPointP1) -> bool:
        return (x not in self.points) if self.cofinite else (x in self.points)

    def label(self) -> str:
        if self.kind == "III":
            return f"TypeIII(n={self.n})"
        pts = ", ".join(x.label for x in sorted(self.points, key=lambda x: x.order))
        body = f"all but {{{pts}}}" if self.cofinite else f"{{{pts}}}"
        return f"Type{self.kind}({body})"

    def __str__(self):
        return self.label()

    def members(self, U):
        return frozenset(i for i, F in enumerate(U.objects) if family_membership(F, self))


def type_i(points) -> TorfFamilyP1:
    return TorfFamilyP1("I", frozenset(points))


def type_ii(points) -> TorfFamilyP1:
    return TorfFamilyP1("II", frozenset(points))


def type_iii(n: int) -> TorfFamilyP1:
    return TorfFamilyP1("III", n=n)


def family_membership(F: SheafP1, fam: TorfFamilyP1) -> bool:
    if fam.kind == "III":
        return not F.torsion and all(n <= fam.n for n in F.twists)
    if fam.kind == "I" and F.twists:
        return False
    return all(fam.has_point(x) for x in F.points())


NOT_CLASSIFIED = "NotClassified"


@dataclass(frozen=True)
class Classification:
    family: TorfFamilyP1 | None
    closure: frozenset

    @property
    def label(self):
        return self.family.label() if self.family else NOT_CLASSIFIED


def classify_window(U, generators) -> Classification:
    """Identify the family of the torsionfree class generated by ``generators``.

    ``U`` is a P^1 universe.  The predicted family is read off from Ass of
    the generators and compared with the ``{Sub, Ext}`` fixpoint; a mismatch
    yields ``NotClassified``.
    """
    gens = [U.idx(G) if isinstance(G, SheafP1) else G for G in generators]
    closure = closure_fixpoint(U, gens, {SUB, EXT})
    ass = set()
    for i in gens:
        ass |= ass_p1(U.objects[i])
    closed = frozenset(x for x in ass if not isinstance(x, GenericPoint))
    has_eta = len(closed) != len(ass)
    if not has_eta:
        fam = type_i(closed)
    elif not closed:
        n = max(t for i in closure for t in U.objects[i].twists)
        lo = U.backend.window.twist_min
        if n - lo < MIN_DEPTH:
            raise WindowTooSmall(f"TypeIII bound {n} is only {n - lo} above twist_min={lo}; "
                                 f"lower twist_min to at most {n - MIN_DEPTH}")
        fam = type_iii(n)
    else:
        fam = type_ii(closed)
    if fam.members(U) != closure:
        return Classification(None, closure)
    return Classification(fam, closure)


def twist_invariant(U, fam: TorfFamilyP1) -> list:
    """Window sheaves whose membership changes under ``(x) O(+-1)``."""
    bad = []
    for F in U.objects:
        for m in (-1, 1):
            G = twist(F, m)
            if U.backend.contains(G) and family_membership(F, fam) != family_membership(G, fam):
                bad.append((F, m))
    return bad


# The torsion pairs of coh P^1 as (torsion class, torsionfree class), for
# documentation output only; covariant finiteness is not checked here.
TORSION_PAIR_TABLE = (
    ("0", "coh P1", "TypeII(all points)"),
    ("coh_Z (torsion sheaves supported on Z)", "sheaves with no torsion on Z",
     "TypeII(complement of Z)"),
    ("all sheaves generated by O(i), i > n, and torsion", "add(O(i) | i <= n)", "TypeIII(n)"),
    ("coh P1", "0", "TypeI(empty)"),
)


def torsion_pair_table() -> str:
    rows = [("torsion class", "torsionfree class", "family")] + list(TORSION_PAIR_TABLE)
    widths = [max(len(r[k]) for r in rows) for k in range(3)]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows) + "\n"
