"""Backend adapters and the indexed window universe used by the closure engine.

A :class:`Universe` freezes the window's objects into a list and answers
relation queries (subobjects, quotients, extensions, images, kernels,
cokernels, twists, summands) with index sets.  Answers are computed lazily
and memoised; computing the same entry twice from two threads is harmless
because every answer is a pure function of its key.
"""

from __future__ import annotations

from ..affine import calculus, window as aw
from ..affine.modules import parse_module, summands, zero_module
from ..affine.rings import MonomialRing
from ..errors import UnsupportedBackend, WindowTooSmall
from ..p1 import sheaf as ps, window as pw
from ..p1.points import p1_poset


class AffineBackend:
    def __init__(self, ring, window):
        self.ring = ring
        self.window = window
        self.is_p1 = False
        self.has_homs = not isinstance(ring, MonomialRing)

    @property
    def name(self):
        return str(self.ring)

    def objects(self):
        return aw.enumerate_window(self.ring, self.window)

    def zero(self):
        return zero_module(self.ring)

    def parse(self, text):
        return parse_module(text, self.ring)

    def contains(self, M):
        return self.window.contains(M)

    def poset(self, objects):
        primes = set()
        for M in objects:
            primes |= calculus.ass(M)
        return self.ring.spectral_poset(primes)

    def ass(self, M):
        return calculus.ass(M)

    def is_sub(self, N, M):
        return aw.is_submodule(N, M)

    def is_quot(self, Q, M):
        return aw.is_quotient(Q, M)

    def is_ext(self, A, E, B):
        return aw.is_extension(A, E, B)

    def ext_key(self, M):
        if hasattr(M, "free"):
            return M.free
        return getattr(M, "length", 0)

    def twist(self, M, m):
        return None

    def summands(self, M):
        return summands(M)

    def label(self, M):
        return str(M)


class P1Backend:
    def __init__(self, window: pw.P1Window):
        self.window = window
        self.field = window.field
        self.is_p1 = True
        self.has_homs = True

    @property
    def name(self):
        return f"P1({self.field})"

    def objects(self):
        return pw.universe(self.window)

    def zero(self):
        return ps.zero_sheaf(self.field)

    def parse(self, text):
        return ps.parse_sheaf(text, self.field)

    def contains(self, F):
        return self.window.contains(F)

    def poset(self, objects):
        return p1_poset(self.window.points, self.field)

    def ass(self, F):
        return ps.ass_p1(F)

    def is_sub(self, G, F):
        return pw.embeddability(G, F)

    def is_quot(self, Q, F):
        return pw.is_quotient(Q, F)

    def is_ext(self, A, E, B):
        return pw.is_extension(A, E, B)

    def ext_key(self, F):
        return (F.rank, F.degree)

    def twist(self, F, m):
        return ps.twist(F, m)

    def summands(self, F):
        pieces = F.indecomposables()
        out = {}
        for mask in range(1 << len(pieces)):
            S = self.zero()
            for i, p in enumerate(pieces):
                if mask >> i & 1:
                    S = S + p
            out[S] = None
        return list(out)

    def label(self, F):
        return str(F)


def _add(a, b):
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


class Universe:
    """The objects of a window together with memoised relation tables."""

    def __init__(self, backend):
        self.backend = backend
        self.objects = list(backend.objects())
        self.index = {M: i for i, M in enumerate(self.objects)}
        self.zero = self.index[backend.zero()]
        self.poset = backend.poset(self.objects)
        self._ass = [frozenset(backend.ass(M)) for M in self.objects]
        self._supp = [self.poset.down(a) for a in self._ass]
        self._by_key = {}
        for i, M in enumerate(self.objects):
            self._by_key.setdefault(backend.ext_key(M), []).append(i)
        self._cache = {}

    def __len__(self):
        return len(self.objects)

    @property
    def is_p1(self):
        return self.backend.is_p1

    def idx(self, M):
        try:
            return self.index[M]
        except KeyError:
            raise WindowTooSmall(f"{self.backend.label(M)} lies outside the window "
                                 f"{self.backend.window.describe()}") from None

    def label(self, i):
        return self.backend.label(self.objects[i])

    def ass(self, i):
        return self._ass[i]

    def supp(self, i):
        return self._supp[i]

    def realized_points(self):
        out = set()
        for a in self._ass:
            out |= a
        return frozenset(out)

    # -- memoised relations ----------------------------------------------
    def _memo(self, key, fn):
        try:
            return self._cache[key]
        except KeyError:
            val = frozenset(fn())
            self._cache[key] = val
            return val

    def _need_homs(self):
        if not self.backend.has_homs:
            raise UnsupportedBackend(f"{self.backend.name}: homomorphisms are not enumerated "
                                     "for monomial quotients")

    def sub(self, i):
        self._need_homs()
        M = self.objects[i]
        return self._memo(("sub", i), lambda: (j for j, N in enumerate(self.objects)
                                               if self.backend.is_sub(N, M)))

    def quot(self, i):
        self._need_homs()
        M = self.objects[i]
        return self._memo(("quot", i), lambda: (j for j, Q in enumerate(self.objects)
                                                if self.backend.is_quot(Q, M)))

    def ext(self, i, j):
        """Middle terms ``E`` of ``0 -> obj[i] -> E -> obj[j] -> 0``."""
        self._need_homs()
        A, B = self.objects[i], self.objects[j]

        def run():
            key = _add(self.backend.ext_key(A), self.backend.ext_key(B))
            return (k for k in self._by_key.get(key, ())
                    if self.backend.is_ext(A, self.objects[k], B))
        return self._memo(("ext", i, j), run)

    def images(self, i, j):
        return self._memo(("img", i, j), lambda: self.quot(i) & self.sub(j))

    def kernels_onto(self, i, q):
        """``K`` with ``0 -> K -> obj[i] -> obj[q] -> 0``."""
        M, Q = self.objects[i], self.objects[q]
        return self._memo(("kq", i, q), lambda: (k for k in self.sub(i)
                                                 if self.backend.is_ext(self.objects[k], M, Q)))

    def cokernels_of(self, s, j):
        """``C`` with ``0 -> obj[s] -> obj[j] -> C -> 0``."""
        S, N = self.objects[s], self.objects[j]
        return self._memo(("cs", s, j), lambda: (c for c in self.quot(j)
                                                 if self.backend.is_ext(S, N, self.objects[c])))

    def kernels(self, i, j):
        """Kernels of all maps ``obj[i] -> obj[j]``."""
        def run():
            out = set()
            for q in self.images(i, j):
                out |= self.kernels_onto(i, q)
            return out
        return self._memo(("ker", i, j), run)

    def cokernels(self, i, j):
        def run():
            out = set()
            for s in self.images(i, j):
                out |= self.cokernels_of(s, j)
            return out
        return self._memo(("cok", i, j), run)

    def twist(self, i, m):
        """Index of ``obj[i] (x) O(m)`` if it lies in the window, else ``None``."""
        T = self.backend.twist(self.objects[i], m)
        if T is None:
            return None
        return self.index.get(T)

    def summands(self, i):
        return self._memo(("sum", i), lambda: (self.index[S] for S in
                                               self.backend.summands(self.objects[i])
                                               if S in self.index))

    def direct_sum(self, i, j):
        S = self.objects[i] + self.objects[j]
        return self.index.get(S)

    def conflations(self, members=None):
        """Short exact sequences ``(a, e, b)`` among ``members`` (default: all)."""
        members = sorted(range(len(self)) if members is None else members)
        key = ("confl", tuple(members))
        if key in self._cache:
            return self._cache[key]
        inside = set(members)
        if self.backend.has_homs:
            out = set()
            for a in members:
                for b in members:
                    for e in self.ext(a, b):
                        if e in inside:
                            out.add((a, e, b))
        else:
            triples = aw.monomial_conflations(self.objects, self.backend.window)
            out = set()
            for A, E, B in triples:
                t = (self.index[A], self.index[E], self.index[B])
                if all(x in inside for x in t):
                    out.add(t)
        out = tuple(sorted(out))
        self._cache[key] = out
        return out
