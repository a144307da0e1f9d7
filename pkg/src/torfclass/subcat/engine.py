"""Windowed closure operators and the classification verifiers.

A class is a frozenset of universe indices.  ``closure_fixpoint`` computes
the least class containing the generators and ``0`` that is closed, inside
the window, under the requested operations and under direct summands.
Each ``verify_*`` function enumerates generator subsets of a pool, computes
fixpoints and compares them with the class predicted from Ass or Supp.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from ..affine.rings import format_prime_set
from ..errors import ConfigError, WindowTooSmall
from .lattice import Lattice, spec_closed_subsets


class ClosureOp(enum.Enum):
    SUB = "sub"
    QUOT = "quot"
    IMAGE = "image"
    KERNEL = "kernel"
    COKERNEL = "cokernel"
    EXT = "ext"
    TWIST = "twist"
    SUMMAND = "summand"

    @classmethod
    def parse(cls, text):
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ConfigError(f"unknown closure operation {text!r}; expected one of "
                              + ", ".join(op.value for op in cls)) from None


SUB, QUOT, IMAGE, KERNEL, COKERNEL, EXT, TWIST = (ClosureOp.SUB, ClosureOp.QUOT, ClosureOp.IMAGE,
                                                  ClosureOp.KERNEL, ClosureOp.COKERNEL,
                                                  ClosureOp.EXT, ClosureOp.TWIST)


def _indices(U, gens):
    out = set()
    for g in gens:
        out.add(g if isinstance(g, int) else U.idx(g))
    return out


def closure_fixpoint(U, gens, ops) -> frozenset:
    """Least window class containing ``gens`` and closed under ``ops``.

    Semi-naive iteration: binary operations are applied to pairs involving
    at least one newly added member.
    """
    ops = set(ops)
    C = _indices(U, gens) | {U.zero}
    frontier = set(C)
    while frontier:
        new = set()
        for i in frontier:
            new |= U.summands(i)
            if SUB in ops:
                new |= U.sub(i)
            if QUOT in ops:
                new |= U.quot(i)
            if TWIST in ops:
                for m in (-1, 1):
                    t = U.twist(i, m)
                    if t is not None:
                        new.add(t)
        binary = ops & {EXT, IMAGE, KERNEL, COKERNEL}
        if binary:
            for i in frontier:
                for j in C:
                    for a, b in ((i, j), (j, i)):
                        if EXT in ops:
                            new |= U.ext(a, b)
                        if IMAGE in ops:
                            new |= U.images(a, b)
                        if KERNEL in ops:
                            new |= U.kernels(a, b)
                        if COKERNEL in ops:
                            new |= U.cokernels(a, b)
        frontier = new - C
        C |= frontier
    return frozenset(C)


def is_closed(U, C, op) -> list:
    """Witnesses ``(inputs, output)`` showing that ``C`` is not closed under ``op``."""
    bad = []
    members = sorted(C)
    if op in (SUB, QUOT):
        for i in members:
            for k in sorted((U.sub(i) if op is SUB else U.quot(i)) - C):
                bad.append(((i,), k))
    elif op is TWIST:
        for i in members:
            for m in (-1, 1):
                t = U.twist(i, m)
                if t is not None and t not in C:
                    bad.append(((i,), t))
    else:
        fn = {EXT: U.ext, IMAGE: U.images, KERNEL: U.kernels, COKERNEL: U.cokernels}[op]
        for i in members:
            for j in members:
                for k in sorted(fn(i, j) - C):
                    bad.append(((i, j), k))
    return bad


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class AssClass:
    phi: frozenset

    def label(self):
        return f"AssClass({format_prime_set(self.phi)})"


@dataclass(frozen=True)
class SuppClass:
    z: frozenset

    def label(self):
        return f"SuppClass({format_prime_set(self.z)})"


@dataclass(frozen=True)
class Generated:
    gens: tuple
    ops: frozenset


@dataclass(frozen=True)
class Trivial:
    kind: str  # "zero" or "all"


def supp_class(U, z) -> SuppClass:
    z = frozenset(z)
    if U.poset.down(z) != z:
        raise ConfigError(f"{format_prime_set(z)} is not specialization-closed")
    return SuppClass(z)


def members(U, desc) -> frozenset:
    """Window restriction of a descriptor."""
    if isinstance(desc, AssClass):
        return frozenset(i for i in range(len(U)) if U.ass(i) <= desc.phi)
    if isinstance(desc, SuppClass):
        return frozenset(i for i in range(len(U)) if U.supp(i) <= desc.z)
    if isinstance(desc, Generated):
        return closure_fixpoint(U, desc.gens, desc.ops)
    if isinstance(desc, Trivial):
        return frozenset(range(len(U))) if desc.kind == "all" else frozenset({U.zero})
    if hasattr(desc, "members"):
        return desc.members(U)
    return _indices(U, desc)


def ass_of(U, category) -> frozenset:
    if isinstance(category, AssClass):
        return category.phi & U.realized_points()
    out = set()
    for i in members(U, category):
        out |= U.ass(i)
    return frozenset(out)


def supp_of(U, category) -> frozenset:
    out = set()
    for i in members(U, category):
        out |= U.supp(i)
    return frozenset(out)


# ---------------------------------------------------------------------------
# reports


def _pmap(fn, items, threads):
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def generator_subsets(pool):
    pool = list(pool)
    for k in range(len(pool) + 1):
        yield from combinations(pool, k)


def _labels(U, idx):
    return [U.label(i) for i in sorted(idx)]


def _diff(U, got, want):
    return {"missing": _labels(U, want - got), "extra": _labels(U, got - want)}


def make_report(theorem, U, pool, classes, counterexamples):
    return {
        "theorem": theorem,
        "backend": U.backend.name,
        "window": U.backend.window.describe(),
        "pool": [U.label(i) for i in pool],
        "classes": classes,
        "counterexamples": counterexamples,
        "pass": not counterexamples,
    }


def _ops(U, *ops):
    out = set(ops)
    if U.is_p1:
        out.add(TWIST)
    return frozenset(out)


def _gen_labels(U, G):
    return [U.label(i) for i in G]


# ---------------------------------------------------------------------------
# verifiers


def verify_takahashi(U, pool, threads=1) -> dict:
    """``{Sub, Ext}`` fixpoints are exactly the classes ``{M : Ass M ⊆ Φ}``."""
    pool = sorted(_indices(U, pool))
    ops = _ops(U, SUB, EXT)

    def check(G):
        C = closure_fixpoint(U, G, ops)
        phi = ass_of(U, G)
        want = members(U, AssClass(phi))
        bad = []
        if C != want:
            bad.append({"generators": _gen_labels(U, G), "predicted": AssClass(phi).label(),
                        **_diff(U, C, want)})
        if ass_of(U, C) != phi:
            bad.append({"generators": _gen_labels(U, G), "galois": format_prime_set(ass_of(U, C)),
                        "expected": format_prime_set(phi)})
        return G, C, phi, bad

    results = _pmap(check, generator_subsets(pool), threads)
    return _summarise("takahashi", U, pool, results, lambda phi: AssClass(phi).label())


def verify_gabriel_serre(U, pool, threads=1) -> dict:
    """``{Quot, Ext}`` fixpoints are the classes ``{M : Supp M ⊆ Z}`` and are Serre."""
    pool = sorted(_indices(U, pool))
    ops = _ops(U, QUOT, EXT)

    def check(G):
        C = closure_fixpoint(U, G, ops)
        z = supp_of(U, G)
        want = members(U, SuppClass(z))
        bad = []
        if C != want:
            bad.append({"generators": _gen_labels(U, G), "predicted": SuppClass(z).label(),
                        **_diff(U, C, want)})
        return G, C, z, bad

    results = _pmap(check, generator_subsets(pool), threads)
    distinct = sorted({C for _, C, _, _ in results}, key=lambda c: (len(c), sorted(c)))

    def closedness(C):
        out = []
        for op in (SUB, KERNEL, COKERNEL, IMAGE):
            for inputs, k in is_closed(U, C, op)[:3]:
                out.append({"class": _class_label(U, C, "supp"), "operation": op.value,
                            "inputs": _labels(U, inputs), "output": U.label(k)})
        return out

    extra = [b for bad in _pmap(closedness, distinct, threads) for b in bad]
    return _summarise("gabriel-serre", U, pool, results, lambda z: SuppClass(z).label(), extra)


def verify_ie_equals_torf(U, pool, threads=1) -> dict:
    """``{Image, Ext}`` = ``{Sub, Ext}`` = Ass class, and = ``{Quot, Ext} ∩ {Sub, Ext}``."""
    pool = sorted(_indices(U, pool))
    ie_ops, f_ops, t_ops = _ops(U, IMAGE, EXT), _ops(U, SUB, EXT), _ops(U, QUOT, EXT)

    def check(G):
        ie = closure_fixpoint(U, G, ie_ops)
        f = closure_fixpoint(U, G, f_ops)
        t = closure_fixpoint(U, G, t_ops)
        phi = ass_of(U, G)
        want = members(U, AssClass(phi))
        bad = []
        for name, got in (("sub-ext", f), ("ass-class", want), ("quot-ext meet sub-ext", t & f)):
            if ie != got:
                bad.append({"generators": _gen_labels(U, G), "image-ext vs": name, **_diff(U, ie, got)})
        return G, ie, phi, bad

    results = _pmap(check, generator_subsets(pool), threads)
    return _summarise("ie-torf", U, pool, results, lambda phi: AssClass(phi).label())


def _class_label(U, C, kind):
    pts = ass_of(U, C) if kind == "ass" else supp_of(U, C)
    return (AssClass(pts) if kind == "ass" else SuppClass(pts)).label()


def _summarise(theorem, U, pool, results, label, extra=()):
    counter = [b for _, _, _, bad in results for b in bad]
    by_key = {}
    by_class = {}
    for G, C, key, _ in results:
        by_key.setdefault(key, set()).add(C)
        by_class.setdefault(C, set()).add(key)
    for key, cs in sorted(by_key.items(), key=lambda kv: label(kv[0])):
        if len(cs) > 1:
            counter.append({"label": label(key), "distinct fixpoints": len(cs)})
    for C, keys in by_class.items():
        if len(keys) > 1:
            counter.append({"class size": len(C), "labels": sorted(label(k) for k in keys)})
    # order embedding: C ⊆ C' iff key ⊆ key'
    pairs = sorted(by_class.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    for C, ka in pairs:
        for D, kb in pairs:
            a, b = min(ka, key=label), min(kb, key=label)
            if (C <= D) != (a <= b):
                counter.append({"order": f"{label(a)} vs {label(b)}"})
    counter.extend(extra)
    classes = []
    for key, cs in sorted(by_key.items(), key=lambda kv: (len(kv[0]), label(kv[0]))):
        C = min(cs, key=lambda c: (len(c), sorted(c)))
        gens = sum(1 for _, D, k, _ in results if k == key)
        classes.append({"label": label(key), "size": len(C), "generator_sets": gens})
    return make_report(theorem, U, pool, classes, counter)


# ---------------------------------------------------------------------------
# Serre subcategories of a torsionfree class


def serre_closure(U, C, conflations, within) -> frozenset:
    """Least conflation-biclosed, summand-closed class containing ``C`` (twist-closed on P^1)."""
    C = set(C) | {U.zero}
    changed = True
    while changed:
        changed = False
        for i in list(C):
            for s in U.summands(i):
                if s in within and s not in C:
                    C.add(s)
                    changed = True
            if U.is_p1:  # line-bundle twists keep edge effects out of the window
                for m in (-1, 1):
                    t = U.twist(i, m)
                    if t is not None and t in within and t not in C:
                        C.add(t)
                        changed = True
        for a, e, b in conflations:
            if e in C:
                for x in (a, b):
                    if x not in C:
                        C.add(x)
                        changed = True
            elif a in C and b in C:
                C.add(e)
                changed = True
    return frozenset(C)


def verify_serre_in_torf(U, phi, threads=1):
    """Serre subcategories of ``{M : Ass M ⊆ Φ}`` versus specialization-closed subsets of Φ.

    Returns ``(report, lattice)``.
    """
    phi = frozenset(phi)
    realized = U.realized_points()
    if not phi <= realized:
        raise WindowTooSmall("points of Φ not realised by any window object: "
                             + format_prime_set(phi - realized))
    within = members(U, AssClass(phi))
    confl = U.conflations(within)
    subsets = spec_closed_subsets(U.poset, phi)
    predicted = {}
    counter = []
    for psi in subsets:
        cls = members(U, AssClass(psi)) & within
        predicted[cls] = psi
        for a, e, b in confl:
            if (e in cls) != (a in cls and b in cls):
                counter.append({"psi": format_prime_set(psi),
                                "conflation": _labels(U, (a,)) + _labels(U, (e,)) + _labels(U, (b,))})
                break
    if len(predicted) != len(subsets):
        counter.append({"collapsed": "distinct specialization-closed subsets give equal classes"})
    # every Serre class of the window, by single-object enlargement from 0
    start = serre_closure(U, (), confl, within)
    found = {start}
    frontier = [start]
    while frontier:
        layer = []
        for C in frontier:
            outs = _pmap(lambda m, C=C: serre_closure(U, C | {m}, confl, within),
                         sorted(within - C), threads)
            for D in outs:
                if D not in found:
                    found.add(D)
                    layer.append(D)
        frontier = sorted(layer, key=lambda c: (len(c), sorted(c)))
    for D in sorted(found, key=lambda c: (len(c), sorted(c))):
        if D not in predicted:
            counter.append({"unpredicted Serre class": _labels(U, D)})
    for cls, psi in predicted.items():
        if cls not in found:
            counter.append({"missing Serre class": format_prime_set(psi)})
    classes = [{"label": format_prime_set(psi), "size": len(cls)}
               for cls, psi in sorted(predicted.items(), key=lambda kv: (len(kv[1]),
                                                                         format_prime_set(kv[1])))]
    report = make_report("serre-in-torf", U, [], classes, counter)
    report["pool"] = [p.label for p in sorted(phi)]
    lattice = Lattice.from_sets([psi for cls, psi in predicted.items() if cls in found])
    return report, lattice
