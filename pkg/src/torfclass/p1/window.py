"""Windows of sheaves on P^1 and the sub/quotient/extension relations.

Everything is decided on normal forms.  Torsion questions localise to the
discrete valuation rings at the closed points (Hall-Green/LR rule); bundle
questions reduce to the splitting type.  Bundles of rank <= 2 are handled
exactly; larger ranks raise :class:`UnsupportedBackend`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ..errors import ConfigError, UnsupportedBackend, WindowTooSmall
from ..exact.field import Field
from ..partitions import contained, lr_coefficient, partitions_of, quotient_with_free, sub_quotient_pairs
from .points import count_points_of_degree, points_up_to_degree
from .sheaf import SheafP1

MAX_RANK = 2


@dataclass(frozen=True)
class P1Window:
    """Sheaves with ``rank <= max_rank``, twists in ``[twist_min, twist_max]``,
    total torsion length ``<= max_torsion_length`` and torsion supported on
    ``points``."""

    field: Field
    twist_min: int
    twist_max: int
    max_rank: int = 1
    max_torsion_length: int = 1
    points: tuple = ()
    max_point_degree: int | None = None

    def __post_init__(self):
        if self.twist_min > self.twist_max:
            raise ConfigError("twist_min exceeds twist_max")
        if self.max_rank < 0 or self.max_torsion_length < 0:
            raise ConfigError("window caps must be nonnegative")
        if self.max_rank > MAX_RANK:
            raise UnsupportedBackend(f"bundles of rank > {MAX_RANK} are not supported")
        pts = set(self.points)
        if self.max_point_degree is not None:
            if not self.field.is_finite:
                raise ConfigError("over QQ the points must be listed explicitly")
            pts |= set(points_up_to_degree(self.field, self.max_point_degree))
        object.__setattr__(self, "points", tuple(sorted(pts, key=lambda x: x.order)))

    def contains(self, F: SheafP1) -> bool:
        return (F.rank <= self.max_rank
                and all(self.twist_min <= n <= self.twist_max for n in F.twists)
                and F.torsion_length <= self.max_torsion_length
                and all(x in self.points for x in F.points()))

    def describe(self):
        out = {"field": str(self.field), "twist_min": self.twist_min, "twist_max": self.twist_max,
               "max_rank": self.max_rank, "max_torsion_length": self.max_torsion_length}
        if self.max_point_degree is not None:
            out["max_point_degree"] = self.max_point_degree
        out["points"] = [x.label for x in self.points]
        return out

    def grow(self):
        extra = () if self.max_point_degree is not None else self.points
        return P1Window(self.field, self.twist_min - 1, self.twist_max + 1, self.max_rank,
                        self.max_torsion_length + 1, extra, self.max_point_degree)


def universe(w: P1Window) -> list:
    """Every sheaf in the window, canonically sorted."""
    twists = range(w.twist_min, w.twist_max + 1)
    bundles = []
    for r in range(w.max_rank + 1):
        bundles.extend(_multisets(tuple(twists), r))
    torsions = list(_torsion_parts(w.points, w.max_torsion_length))
    out = [SheafP1(w.field, b, t) for b in bundles for t in torsions]
    return sorted(out, key=SheafP1.sort_key)


def _multisets(items, k, start=0):
    if k == 0:
        yield ()
        return
    for i in range(start, len(items)):
        for rest in _multisets(items, k - 1, i):
            yield (items[i],) + rest


def _torsion_parts(points, budget):
    if not points:
        yield ()
        return
    x, rest = points[0], points[1:]
    for n in range(budget + 1):
        for lam in partitions_of(n):
            for tail in _torsion_parts(rest, budget - n):
                yield tuple((x, l) for l in lam) + tail


# ---------------------------------------------------------------------------
# vector bundles (sorted descending tuples of twists)


def bundle_embeds(b: tuple, a: tuple) -> bool:
    """Is there an injective sheaf map ``(+)O(b_j) -> (+)O(a_i)``?"""
    return len(b) <= len(a) and all(x <= y for x, y in zip(b, a))


def line_quotient(c: int, a: tuple) -> bool:
    """Is ``O(c)`` a quotient of ``(+)O(a_i)``?  Needs a nonvanishing tuple of forms."""
    return c in a or (len(a) >= 2 and c > a[-2])


def bundle_quotient(q: tuple, a: tuple) -> bool:
    if not q:
        return True
    if len(q) > len(a):
        return False
    if len(q) == len(a):
        return q == a
    if len(q) == 1:
        return line_quotient(q[0], a)
    raise UnsupportedBackend(f"rank-{len(q)} quotients of rank-{len(a)} bundles are not supported")


def bundle_extension(k: tuple, e: tuple, b: tuple) -> bool:
    """Is there ``0 -> K -> E -> B -> 0`` with all three vector bundles?"""
    if len(e) != len(k) + len(b) or sum(e) != sum(k) + sum(b):
        return False
    if not k:
        return e == b
    if not b:
        return e == k
    if len(k) == 1 and len(b) == 1:
        lo, hi = k[0], b[0]
        if tuple(sorted((lo, hi), reverse=True)) == e:
            return True
        return lo < e[1] and e[0] < hi
    raise UnsupportedBackend("extensions of bundles of total rank > 2 are not supported")


# ---------------------------------------------------------------------------
# relations between sheaves


def embeddability(G: SheafP1, F: SheafP1) -> bool:
    """Is there an injection ``G -> F``?

    An injection sends ``G_tor`` into ``F_tor`` and induces an injection of
    the bundle quotients, and conversely the direct sum of two such maps is
    injective.
    """
    if not bundle_embeds(G.twists, F.twists):
        return False
    return all(contained(G.partition(x), F.partition(x)) for x in G.points())


def is_quotient(Q: SheafP1, F: SheafP1) -> bool:
    """Is there a surjection ``F -> Q``?

    ``Q_vect`` must be a bundle quotient of ``F_vect`` with kernel ``K`` of
    rank ``k``; then ``Q_tor`` must be a quotient of ``K (+) F_tor``, which is
    a local condition on the stalks.
    """
    if Q.rank > F.rank or not bundle_quotient(Q.twists, F.twists):
        return False
    k = F.rank - Q.rank
    return all(quotient_with_free(Q.partition(x), F.partition(x), k) for x in Q.points())


def is_extension(A: SheafP1, E: SheafP1, B: SheafP1) -> bool:
    """Is there a short exact sequence ``0 -> A -> E -> B -> 0``?

    Write ``K`` for the kernel of ``E_vect -> B_vect``.  Such a sequence
    exists iff ``E_vect`` is an extension of ``B_vect`` by ``K`` and there
    is ``0 -> A -> K (+) E_tor -> B_tor -> 0``.  The latter splits into a
    submodule ``B'`` of ``B_tor`` with ``E_tor`` an extension of ``B'`` by
    ``A_tor`` (local LR condition), and an embedding ``A_vect -> K`` whose
    cokernel is ``B_tor / B'``.
    """
    if E.rank != A.rank + B.rank or E.degree != A.degree + B.degree:
        return False
    ra, rb = A.rank, B.rank
    if ra == 0:
        if E.twists != B.twists:
            return False
        K = ()
    elif rb == 0:
        K = E.twists
    elif ra == 1 and rb == 1:
        K = (sum(E.twists) - sum(B.twists),)
        if not bundle_extension(K, E.twists, B.twists):
            return False
    else:
        raise UnsupportedBackend("extensions of bundles of total rank > 2 are not supported")
    pts = sorted(set(A.points()) | set(B.points()) | set(E.points()), key=lambda x: x.order)
    options = []
    for x in pts:
        opts = _local_cokernels(A.partition(x), B.partition(x), E.partition(x), ra)
        if not opts:
            return False
        options.append(opts)
    for choice in product(*options):
        coker = {x: g for x, g in zip(pts, choice) if g}
        if _embeds_with_cokernel(A.twists, K, coker, A.field):
            return True
    return False


@lru_cache(maxsize=None)
def _local_cokernels(alpha, beta, eps, rank):
    out = set()
    for mu, gamma in sub_quotient_pairs(beta):
        if len(gamma) <= rank and lr_coefficient(alpha, mu, eps):
            out.add(gamma)
    return tuple(sorted(out))


def _embeds_with_cokernel(a: tuple, k: tuple, coker: dict, field_: Field) -> bool:
    """Is there ``0 -> (+)O(a_i) -> (+)O(k_i) -> T -> 0`` with ``T`` of the given local types?"""
    deg_t = sum(sum(g) * x.degree for x, g in coker.items())
    if len(a) != len(k) or sum(a) != sum(k) - deg_t:
        return False
    if not a:
        return not coker
    if len(a) == 1:
        return all(len(g) <= 1 for g in coker.values())
    if len(a) > 2:
        raise UnsupportedBackend("embeddings of rank > 2 bundles are not supported")
    # rank 2: strip the common zero divisor D of all matrix entries
    d = sum(g[1] * x.degree for x, g in coker.items() if len(g) > 1)
    k1, k2 = k[0] - d, k[1] - d
    a1, a2 = a
    if k1 < a1 or k2 < a2:
        return False
    if k2 >= a1:
        return True
    # triangular case: the divisor of the lower-left-free matrix splits as D1 + D2
    rest = [(x, g[0] - (g[1] if len(g) > 1 else 0)) for x, g in coker.items()]
    rest = [(x, m) for x, m in rest if m]
    c1 = k1 - a1
    m_deg = k1 - a2
    for split in product(*[range(m + 1) for _, m in rest]):
        if sum(s * x.degree for (x, _), s in zip(rest, split)) != c1:
            continue
        common = [x for (x, m), s in zip(rest, split) if 0 < s < m]
        if _form_avoiding(m_deg, common, field_):
            return True
    return False


def _form_avoiding(m: int, avoid, field_: Field) -> bool:
    """Is there a binary form of degree ``m`` vanishing at none of ``avoid``?"""
    if m == 0 or not avoid or not field_.is_finite:
        return True
    usable = []
    for d in range(1, m + 1):
        taken = sum(1 for x in avoid if x.degree == d)
        if count_points_of_degree(field_, d) > taken:
            usable.append(d)
    reach = [True] + [False] * m
    for i in range(1, m + 1):
        reach[i] = any(reach[i - d] for d in usable if d <= i)
    return reach[m]


# ---------------------------------------------------------------------------
# window enumerations


def _check_in(F, w):
    if not w.contains(F):
        raise WindowTooSmall(f"{F} lies outside the window {w.describe()}")


def subsheaves_window(F: SheafP1, w: P1Window) -> list:
    _check_in(F, w)
    return [G for G in universe(w) if embeddability(G, F)]


def quotients_window(F: SheafP1, w: P1Window) -> list:
    _check_in(F, w)
    return [Q for Q in universe(w) if is_quotient(Q, F)]


def extensions_window(A: SheafP1, B: SheafP1, w: P1Window) -> list:
    _check_in(A, w)
    _check_in(B, w)
    return [E for E in universe(w)
            if E.rank == A.rank + B.rank and E.degree == A.degree + B.degree
            and is_extension(A, E, B)]


def images_window(F: SheafP1, G: SheafP1, w: P1Window) -> list:
    _check_in(F, w)
    _check_in(G, w)
    return [I for I in universe(w) if is_quotient(I, F) and embeddability(I, G)]
