from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from kummer.errors import NestedRadical, ZeroDenominator
from kummer.field import (
    LAM1, LAM2, T, U,
    MultiPoly, QuadExtScalar, RationalFunction,
    derivative, fraction_sqrt, normalize, poly_gcd, rat,
    squarefree_decompose, substitute,
)


# --- QuadExtScalar ----------------------------------------------------------

def test_quadext_conjugate_norm():
    z = QuadExtScalar.of(rat(2, 3), rat(1, 5), rat(7))
    prod = z * z.conjugate()
    assert prod.is_rational()
    assert prod.a == Fraction(2, 3) ** 2 - Fraction(1, 5) ** 2 * 7


def test_quadext_perfect_square_reduces():
    z = QuadExtScalar.of(1, 2, rat(9, 16))   # 1 + 2*(3/4)
    assert z.is_rational() and z.a == Fraction(5, 2)


def test_quadext_division_exact():
    z = QuadExtScalar.of(1, 1, 2)
    w = QuadExtScalar.of(3, -2, 2)
    assert (z / w) * w == z


def test_quadext_mixed_extensions_rejected():
    z = QuadExtScalar.of(1, 1, 2)
    w = QuadExtScalar.of(1, 1, 3)
    with pytest.raises(NestedRadical):
        _ = z * w


@given(st.fractions(), st.fractions(), st.fractions(min_value=2, max_value=97))
@settings(max_examples=50)
def test_quadext_norm_identity(a, b, d):
    z = QuadExtScalar.of(a, b, d)
    assert (z * z.conjugate()).a == a * a - b * b * d


def test_fraction_sqrt():
    assert fraction_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert fraction_sqrt(Fraction(2)) is None
    assert fraction_sqrt(Fraction(-1)) is None


# --- normalize --------------------------------------------------------------

def test_normalize_common_factor():
    rf = RationalFunction(2 * T ** 2 - 2 * T, 2 * T)
    assert rf == RationalFunction(T - 1)
    assert rf.den.expr == 1


def test_normalize_factorization():
    rf = RationalFunction(LAM1 ** 2 - LAM1, LAM1 - 1)
    assert rf == RationalFunction(LAM1)


def test_normalize_identity_quotient():
    rf = RationalFunction(T - 1, T - 1)
    assert rf.num.expr == 1 and rf.den.expr == 1


def test_normalize_idempotent():
    rf = RationalFunction((T + 1) * (T - 2), (T - 2) * (3 * T + 1))
    again = normalize(rf)
    assert again.num.expr == rf.num.expr and again.den.expr == rf.den.expr


def test_zero_denominator_raises():
    with pytest.raises(ZeroDenominator):
        RationalFunction(T, 0)


def test_denominator_monic_in_grlex():
    rf = RationalFunction(1, 3 * T + 6)
    assert rf.den.expr == T + 2
    assert rf.num.expr == sp.Rational(1, 3)


# --- poly_gcd ---------------------------------------------------------------

def test_poly_gcd_trivial_cases():
    p = MultiPoly(T ** 2 * (T - 1))
    q = MultiPoly(T * (T - 1) ** 2)
    assert poly_gcd(p, q, T) == MultiPoly(T * (T - 1))
    assert poly_gcd(MultiPoly(T ** 3), MultiPoly(T ** 2), T) == MultiPoly(T ** 2)
    assert poly_gcd(MultiPoly(0), MultiPoly(0), T) == MultiPoly(0)


# --- squarefree decomposition ----------------------------------------------

def test_sqf_x222_discriminant():
    lc, factors = squarefree_decompose(MultiPoly(1024 * T ** 2 * (T - 1) ** 2), T)
    assert lc == 1024
    # Pairwise-coprime contract: either [(t,2),(t-1,2)] or the grouped (t^2-t, 2).
    assert all(m == 2 for _, m in factors)
    assert sum(sp.degree(f.expr, T) for f, _ in factors) == 2
    recon = sp.expand(lc * sp.prod([f.expr ** m for f, m in factors]))
    assert recon == sp.expand(1024 * T ** 2 * (T - 1) ** 2)


def test_sqf_single_var():
    lc, factors = squarefree_decompose(MultiPoly(T), T)
    assert lc == 1 and factors == [(MultiPoly(T), 1)]


def test_sqf_x411_discriminant_pairwise_coprime():
    lc, factors = squarefree_decompose(MultiPoly(256 * T * (T - 1)), T)
    assert lc == 256
    recon = sp.expand(lc * sp.prod([f.expr ** m for f, m in factors]))
    assert recon == sp.expand(256 * T * (T - 1))
    for i, (f, _) in enumerate(factors):
        for g, _ in factors[i + 1:]:
            assert sp.gcd(f.expr, g.expr) == 1


@given(st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=4),
       st.integers(min_value=1, max_value=3))
@settings(max_examples=40, deadline=None)
def test_sqf_reconstructs(roots, extra_mult):
    p = sp.expand(sp.prod([(T - r) for r in roots]) * (T - roots[0]) ** extra_mult)
    lc, factors = squarefree_decompose(MultiPoly(7 * p), T)
    recon = sp.expand(lc * sp.prod([f.expr ** m for f, m in factors]))
    assert recon == sp.expand(7 * p)


# --- substitute / derivative ------------------------------------------------

def test_substitute_simple():
    rf = RationalFunction(T ** 2)
    assert substitute(rf, T, RationalFunction(U + 1)) == RationalFunction((U + 1) ** 2)


def test_substitute_inverse():
    rf = RationalFunction(1, T)
    assert substitute(rf, T, RationalFunction(1, U)) == RationalFunction(U)


def test_substitute_identically_vanishing_denominator():
    rf = RationalFunction(1, T - 1)
    with pytest.raises(ZeroDenominator):
        substitute(rf, T, RationalFunction(1))


def test_derivative_basic():
    assert derivative(RationalFunction(T ** 2), T) == RationalFunction(2 * T)
    assert derivative(RationalFunction(1, T - 1), T) == \
        RationalFunction(-1, (T - 1) ** 2)


def test_delta_combination_x211():
    # 3*g3*g2' - 2*g2*g3' for g2 = 3, g3 = 2t - 1.
    g2 = RationalFunction(3)
    g3 = RationalFunction(2 * T - 1)
    delta = 3 * g3 * derivative(g2, T) - 2 * g2 * derivative(g3, T)
    assert delta == RationalFunction(-12)


# --- ring axioms / composition associativity --------------------------------

_coef = st.integers(min_value=-4, max_value=4)


def _poly(c0, c1, c2, v=T):
    return MultiPoly(c0 + c1 * v + c2 * v ** 2)


@given(*(9 * [_coef]))
@settings(max_examples=40, deadline=None)
def test_ring_axioms(a0, a1, a2, b0, b1, b2, c0, c1, c2):
    p, q, r = _poly(a0, a1, a2), _poly(b0, b1, b2), _poly(c0, c1, c2)
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(_coef, _coef, st.integers(min_value=-3, max_value=3))
@settings(max_examples=25, deadline=None)
def test_substitution_associativity(a, b, c):
    f = RationalFunction(T ** 2 + a * T + 1, T + 5)
    g = RationalFunction(b * U + 2, U ** 2 + 1)
    h = RationalFunction(c + LAM1)
    lhs = substitute(substitute(f, T, g), U, h)
    rhs = substitute(f, T, substitute(g, U, h))
    assert lhs == rhs


def test_terms_no_zero_coefficients():
    p = MultiPoly(T ** 2 - T ** 2 + U + 1)
    assert all(c != 0 for c in p.terms.values())
    assert MultiPoly(0).terms == {}


def test_terms_quadext_coefficients():
    p = MultiPoly((1 + sp.sqrt(3)) * T + sp.Rational(1, 2))
    terms = p.terms
    assert terms[(1,)] == QuadExtScalar.of(1, 1, 3)
    assert terms[(0,)] == QuadExtScalar.of(rat(1, 2))


def test_nested_radical_rejected():
    with pytest.raises(NestedRadical):
        MultiPoly(sp.sqrt(2) + sp.sqrt(3) * T)
