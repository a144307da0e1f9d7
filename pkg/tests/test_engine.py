from dataclasses import dataclass
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import universe_from
from torfclass.affine.rings import SpectralPoset, format_prime_set
from torfclass.errors import UnsupportedBackend, WindowTooSmall
from torfclass.subcat import engine
from torfclass.subcat.engine import EXT, IMAGE, QUOT, SUB, TWIST, AssClass, SuppClass
from torfclass.subcat.lattice import Lattice, lattice_dot, spec_closed_subsets


@dataclass(frozen=True)
class Pt:
    label: str
    order: tuple


def toy_poset(n, edges):
    pts = [Pt(chr(97 + i), (i,)) for i in range(n)]
    below = {(a, b) for a, b in edges}
    changed = True
    while changed:  # transitive closure
        changed = False
        for a, b in list(below):
            for c, d in list(below):
                if b == c and (a, d) not in below:
                    below.add((a, d))
                    changed = True
    return pts, SpectralPoset(pts, lambda p, q: (pts.index(p), pts.index(q)) in below)


def brute_downsets(pts, poset):
    out = 0
    for k in range(len(pts) + 1):
        for s in combinations(pts, k):
            if all(p in s for q in s for p in pts if poset.leq(p, q)):
                out += 1
    return out


def test_spec_closed_examples():
    pts, chain = toy_poset(2, [(0, 1)])
    assert [sorted(x.label for x in s) for s in spec_closed_subsets(chain, pts)] == [[], ["a"], ["a", "b"]]
    pts, anti = toy_poset(2, [])
    assert len(spec_closed_subsets(anti, pts)) == 4
    assert spec_closed_subsets(anti, []) == [frozenset()]


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                        .filter(lambda e: e[0] < e[1])))))
def test_spec_closed_count_matches_brute_force(data):
    n, edges = data
    pts, poset = toy_poset(n, edges)
    subsets = spec_closed_subsets(poset, pts)
    assert len(subsets) == brute_downsets(pts, poset)
    assert len(set(subsets)) == len(subsets)


def test_lattice_dot_examples():
    chain = Lattice.from_sets([frozenset(), frozenset("a"), frozenset("ab")], label=lambda s: "".join(sorted(s)))
    dot = lattice_dot(chain)
    assert dot.count("->") == 2 and dot.count("[label=") == 3
    assert dot == lattice_dot(chain)
    assert lattice_dot(Lattice()) == "digraph lattice {\n  rankdir=BT;\n}\n"
    boolean = Lattice.from_sets([frozenset(s) for s in ("", "a", "b", "ab")],
                                label=lambda s: "".join(sorted(s)))
    assert len(boolean) == 4 and len(boolean.covers) == 4


# -- fixpoints against a naive closure -------------------------------------------

def naive_closure(U, gens, ops):
    """Full re-scan until stable, using the backend relations directly."""
    B = U.backend
    objs = U.objects
    C = set(gens) | {U.zero}
    while True:
        new = set(C)
        for i in C:
            new |= {U.index[S] for S in B.summands(objs[i]) if S in U.index}
            for k, X in enumerate(objs):
                if SUB in ops and B.is_sub(X, objs[i]):
                    new.add(k)
                if QUOT in ops and B.is_quot(X, objs[i]):
                    new.add(k)
            if TWIST in ops:
                for m in (-1, 1):
                    T = B.twist(objs[i], m)
                    if T in U.index:
                        new.add(U.index[T])
        for i in C:
            for j in C:
                for k, X in enumerate(objs):
                    if EXT in ops and B.is_ext(objs[i], X, objs[j]):
                        new.add(k)
                    if IMAGE in ops and B.is_quot(X, objs[i]) and B.is_sub(X, objs[j]):
                        new.add(k)
        if new == C:
            return frozenset(C)
        C = new


SMALL_P1 = ("ring: P1(GF(2))\nwindow: {twist_min: -2, twist_max: 2, max_rank: 1, "
            "max_torsion_length: 1, max_point_degree: 1}\n")
OPSETS = [{SUB, EXT}, {QUOT, EXT}, {IMAGE, EXT}]


@pytest.mark.parametrize("text", ['ring: "Z/4"\nwindow: {max_length: 3}\n',
                                  'ring: "Z/6"\nwindow: {max_length: 2}\n',
                                  'ring: "ZZ"\nwindow: {primes: [2], max_exp: 2, max_rank: 1}\n',
                                  SMALL_P1])
def test_fixpoint_matches_naive_closure(text):
    _, U = universe_from(text)
    extra = {TWIST} if U.is_p1 else set()
    for i in range(len(U)):
        for ops in OPSETS:
            assert engine.closure_fixpoint(U, [i], ops | extra) == naive_closure(U, [i], ops | extra)


@pytest.fixture(scope="module")
def zz():
    return universe_from('ring: "ZZ"\nwindow: {primes: [2, 3], max_exp: 2, max_rank: 1}\n')[1]


def subsets_of(U):
    return st.sets(st.integers(0, len(U) - 1), max_size=3)


@pytest.mark.parametrize("ops", OPSETS)
def test_closure_monotone_idempotent(zz, ops):
    @given(subsets_of(zz), subsets_of(zz))
    def check(g, h):
        Cg = engine.closure_fixpoint(zz, g, ops)
        assert g <= Cg
        assert engine.closure_fixpoint(zz, Cg, ops) == Cg
        assert Cg <= engine.closure_fixpoint(zz, g | h, ops)
    check()


def test_galois_and_order_embedding(zz):
    @given(subsets_of(zz), subsets_of(zz))
    def check(g, h):
        Cg = engine.closure_fixpoint(zz, g, {SUB, EXT})
        Ch = engine.closure_fixpoint(zz, h, {SUB, EXT})
        assert engine.ass_of(zz, Cg) == engine.ass_of(zz, g)
        assert (Cg <= Ch) == (engine.ass_of(zz, g) <= engine.ass_of(zz, h))
    check()


def test_torsion_is_serre_and_t_meet_f(zz):
    @given(subsets_of(zz))
    def check(g):
        T = engine.closure_fixpoint(zz, g, {QUOT, EXT})
        F = engine.closure_fixpoint(zz, g, {SUB, EXT})
        assert not engine.is_closed(zz, T, SUB)
        assert engine.closure_fixpoint(zz, g, {IMAGE, EXT}) == T & F == F
    check()


# -- verifier examples ------------------------------------------------------------

def idx(U, *texts):
    return [U.idx(U.backend.parse(t)) for t in texts]


def test_takahashi_examples(zz, z6):
    rep = engine.verify_takahashi(zz, idx(zz, "Z", "Z/2"))
    assert rep["pass"] and len(rep["classes"]) == 4
    _, U = universe_from('ring: "Z/6"\nwindow: {max_length: 2}\n')
    rep = engine.verify_takahashi(U, idx(U, "Z/2", "Z/3"))
    assert rep["pass"] and [c["label"] for c in rep["classes"]] == [
        "AssClass({})", "AssClass({(2)})", "AssClass({(3)})", "AssClass({(2), (3)})"]
    assert list(rep) == ["theorem", "backend", "window", "pool", "classes", "counterexamples", "pass"]


def test_takahashi_p1_pool(p1):
    _, U = p1
    rep = engine.verify_takahashi(U, idx(U, "O", "T(t,1)"))
    assert rep["pass"]
    C = engine.closure_fixpoint(U, idx(U, "O", "T(t,1)"), {SUB, EXT, TWIST})
    t = U.backend.parse("T(t,1)").points()[0]
    from torfclass.p1.families import type_ii
    assert C == type_ii({t}).members(U)


def test_gabriel_serre_examples(zz, p1):
    z2 = idx(zz, "Z/2")
    C = engine.closure_fixpoint(zz, z2, {QUOT, EXT})
    assert C == engine.members(zz, SuppClass(zz.supp(z2[0])))
    assert not engine.is_closed(zz, C, SUB)
    assert engine.closure_fixpoint(zz, idx(zz, "Z"), {QUOT, EXT}) == frozenset(range(len(zz)))
    pool = idx(zz, "Z", "Z/2", "Z/3")
    rep = engine.verify_gabriel_serre(zz, pool)
    assert rep["pass"]
    # distinct fixpoints = specialization-closed supports realised by the pool
    supports = {engine.supp_of(zz, G) for G in engine.generator_subsets(pool)}
    assert all(zz.poset.down(z) == z for z in supports)
    assert len(rep["classes"]) == len(supports) == 5
    _, U = p1
    assert engine.closure_fixpoint(U, idx(U, "O(-1)"), {QUOT, EXT, TWIST}) == frozenset(range(len(U)))


def test_ie_examples(z4, zz):
    _, U = z4
    assert engine.closure_fixpoint(U, idx(U, "Z/4"), {IMAGE, EXT}) == frozenset(range(len(U)))
    free = engine.closure_fixpoint(zz, idx(zz, "Z"), {IMAGE, EXT})
    assert {zz.label(i) for i in free} == {"0", "Z"}
    assert engine.closure_fixpoint(zz, [], {IMAGE, EXT}) == frozenset({zz.zero})
    assert engine.verify_ie_equals_torf(U, idx(U, "Z/4", "Z/2"))["pass"]


def test_ie_unsupported_on_monomial():
    _, U = universe_from('ring: "GF(2)[x,y]/(x*y)"\nwindow: {max_degree: 2, max_summands: 1}\n')
    with pytest.raises(UnsupportedBackend):
        engine.verify_ie_equals_torf(U, [1])


def test_descriptors(zz):
    two = zz.ass(idx(zz, "Z/2")[0])
    assert engine.ass_of(zz, AssClass(two)) == two
    assert engine.ass_of(zz, [zz.zero]) == frozenset()
    assert format_prime_set(engine.supp_of(zz, idx(zz, "Z/2"))) == "{(2)}"
    assert engine.members(zz, engine.Trivial("zero")) == frozenset({zz.zero})


def test_outside_window(zz):
    with pytest.raises(WindowTooSmall):
        zz.idx(zz.backend.parse("Z/8"))


def test_serre_examples():
    _, U = universe_from('ring: "GF(2)[x,y]/(x^2,x*y)"\nwindow: {max_degree: 2, max_summands: 2}\n')
    R = U.backend.ring
    from torfclass.affine.calculus import ring_ass, ring_assh
    rep, L = engine.verify_serre_in_torf(U, ring_ass(R))
    assert rep["pass"] and len(L) == 3
    rep, L = engine.verify_serre_in_torf(U, ring_assh(R))
    assert rep["pass"] and len(L) == 2
    rep, L = engine.verify_serre_in_torf(U, frozenset())
    assert rep["pass"] and len(L) == 1


def test_serre_count_on_p1(p1):
    _, U = p1
    phi = frozenset(x for x in U.realized_points() if x.label in ("eta", "t", "t+1"))
    rep, L = engine.verify_serre_in_torf(U, phi)
    assert rep["pass"]
    assert len(L) == len(spec_closed_subsets(U.poset, phi)) == 5
