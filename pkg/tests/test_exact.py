import pytest
from hypothesis import given, strategies as st

from oracles import brute_factor, brute_irreducible, count_irreducibles, invariant_factors
from torfclass.errors import ParseError
from torfclass.exact.factor import factor_poly, irreducibles_up_to_degree, is_irreducible
from torfclass.exact.field import Field, parse_field
from torfclass.exact.poly import Poly, format_poly, parse_poly
from torfclass.exact.snf import PolyRing, cokernel_invariants, smith_normal_form
from torfclass.p1.points import count_points_of_degree

small = st.integers(min_value=-9, max_value=9)


@given(st.integers(1, 3).flatmap(
    lambda m: st.integers(1, 3).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m))))
def test_snf_matches_determinantal_divisors(M):
    snf = smith_normal_form(M)
    assert list(snf.diagonal) == invariant_factors(M)
    nonzero = [d for d in snf.diagonal if d]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def test_snf_examples():
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == (2, 4)
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0
    assert cokernel_invariants([[2, 0], [0, 3]]) == (0, [6])
    assert cokernel_invariants([[2, 0]]) == (0, [2])
    assert cokernel_invariants([[2], [0]]) == (1, [2])


def test_snf_over_polynomials():
    k = Field.gf(2)
    t = parse_poly("t", k)
    one = Poly.const(1, k)
    snf = smith_normal_form([[t, Poly.zero(k)], [Poly.zero(k), t + one]], PolyRing(k))
    assert [format_poly(d) for d in snf.diagonal] == ["1", "t^2+t"]


coeff_lists = st.sampled_from([2, 3]).flatmap(
    lambda p: st.tuples(st.just(p), st.lists(st.integers(0, p - 1), min_size=2, max_size=7)))


@given(coeff_lists)
def test_factorization_matches_trial_division(data):
    p, coeffs = data
    k = Field.gf(p)
    f = Poly(tuple(coeffs), k)
    if f.degree < 1:
        return
    got = sorted(((tuple(int(c) for c in g.coeffs), e) for g, e in factor_poly(f)),
                 key=lambda kv: (len(kv[0]), kv[0][::-1]))
    assert got == brute_factor(list(coeffs), p)


@given(coeff_lists)
def test_irreducibility_matches_trial_division(data):
    p, coeffs = data
    f = Poly(tuple(coeffs), Field.gf(p))
    if f.degree < 1:
        return
    assert is_irreducible(f) == brute_irreducible(list(f.coeffs), p)


@pytest.mark.parametrize("p,d", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2), (3, 3), (5, 2)])
def test_necklace_count(p, d):
    k = Field.gf(p)
    expected = count_irreducibles(p, d) + (1 if d == 1 else 0)
    assert count_points_of_degree(k, d) == expected
    assert len([f for f in irreducibles_up_to_degree(k, d) if f.degree == d]) == count_irreducibles(p, d)


def test_frozen_point_counts_over_f2():
    # closed points of P^1 over F_2 by degree: inf, t, t+1 | t^2+t+1 | two cubics
    assert [count_points_of_degree(Field.gf(2), d) for d in (1, 2, 3, 4)] == [3, 1, 2, 3]


def test_rational_factorization():
    q = parse_field("QQ")
    f = parse_poly("t^3-t", q)
    assert sorted(format_poly(g) for g, _ in factor_poly(f)) == ["t", "t+1", "t-1"]
    assert is_irreducible(parse_poly("t^2-2", q))


def test_poly_roundtrip():
    k = Field.gf(3)
    for text in ["t^2+2*t+1", "t", "2", "t^4+t+2"]:
        assert format_poly(parse_poly(text, k)) == text


@pytest.mark.parametrize("bad", ["GF(4)", "GF(x)", "R", ""])
def test_bad_fields(bad):
    with pytest.raises(ParseError):
        parse_field(bad)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_poly("t^2 + $", Field.gf(2))
    assert info.value.column is not None
