from fractions import Fraction

import pytest
import sympy as sp

from kummer.errors import BadModulus, DegenerateModel, MissingModulus
from kummer.field import RationalFunction, T, rat
from kummer.weierstrass import (
    WeierstrassModel, classify_fibers, discriminant, extremal_surface,
    fuchsian_system, j_map, minimalize,
)

ALL = [("X11", rat(1, 3)), ("X411", None), ("X222", None), ("X211", None)]


# --- discriminant / J -------------------------------------------------------

def test_discriminant_x211():
    m = extremal_surface("X211")[0]
    assert sp.expand(discriminant(m).expr + 108 * T * (T - 1)) == 0


def test_discriminant_x411():
    m = extremal_surface("X411")[0]
    assert sp.expand(discriminant(m).expr - 256 * T * (T - 1)) == 0


def test_degenerate_model_rejected():
    with pytest.raises(DegenerateModel):
        WeierstrassModel(3, 1, T)   # 27 - 27 = 0, cusp family


def test_j_map_x211():
    m = extremal_surface("X211")[0]
    assert j_map(m) == RationalFunction(-1, 4 * T * (T - 1))


def test_j_map_x222():
    m = extremal_surface("X222")[0]
    assert j_map(m) == RationalFunction(4 * (T ** 2 - T + 1) ** 3,
                                        27 * T ** 2 * (T - 1) ** 2)


def test_j_map_x11_constant():
    lam = sp.Symbol("lam")
    m = extremal_surface("X11", rat(2))[0]
    expected = sp.Rational(4, 27) * (4 - 2 + 1) ** 3 / (4 * 1)
    assert j_map(m) == RationalFunction(expected)


# --- classification ---------------------------------------------------------

@pytest.mark.parametrize("name,lam,expected", [
    ("X11", rat(1, 3), {"I0*": 2}),
    ("X411", None, {"I1": 2, "I4*": 1}),
    ("X222", None, {"I2": 2, "I2*": 1}),
    ("X211", None, {"I1": 2, "II*": 1}),
])
def test_table1_configurations(name, lam, expected):
    m, sections, exp_fixture, mu = extremal_surface(name, lam)
    cfg = classify_fibers(m)
    assert cfg.multiset() == expected == exp_fixture
    assert cfg.total_euler == 12


def test_all_sections_on_curve_and_two_torsion():
    for name, lam in ALL:
        m, sections, _, _ = extremal_surface(name, lam)
        for s in sections:
            assert s.on_curve(m)
            assert s.Y.is_zero()   # listed generators are 2-torsion


def test_x11_symbolic_lambda_sections():
    # symbolic modulus: identities must hold in Q(lam)
    lam = sp.Symbol("lam")
    from kummer.tables import table1
    row = table1()["X11"]
    m = WeierstrassModel(row["g2"], row["g3"], T)
    assert sp.expand(m.delta - row["delta"]) == 0
    for sx, sy in row["sections"]:
        lhs = sp.expand(sy ** 2 - (4 * sx ** 3 - row["g2"] * sx - row["g3"]))
        assert lhs == 0


def test_classification_invariant_under_affine_reparameterization():
    for name, lam in ALL:
        m = extremal_surface(name, lam)[0]
        base = classify_fibers(m).multiset()
        g2 = m.g2.subs(T, 3 * T - 2)
        g3 = m.g3.subs(T, 3 * T - 2)
        moved = classify_fibers(WeierstrassModel(g2, g3, T))
        assert moved.multiset() == base
        assert moved.total_euler == 12


def test_modulus_preconditions():
    with pytest.raises(MissingModulus):
        extremal_surface("X11")
    with pytest.raises(BadModulus):
        extremal_surface("X11", rat(1))
    with pytest.raises(BadModulus):
        extremal_surface("X411", rat(2))


def test_x411_j_ramification_exact():
    # J = 0 at t = (2 +- sqrt(3))/4, J = 1 at t = 1/2 and (4 +- 3 sqrt(2))/8.
    m = extremal_surface("X411")[0]
    j = j_map(m)
    for t0 in (sp.Rational(1, 2) + sp.sqrt(3) / 4, sp.Rational(1, 2) - sp.sqrt(3) / 4):
        val = sp.simplify(j.expr.subs(T, t0))
        assert val == 0
    for t0 in (sp.Rational(1, 2),
               sp.Rational(1, 2) + 3 * sp.sqrt(2) / 8,
               sp.Rational(1, 2) - 3 * sp.sqrt(2) / 8):
        val = sp.simplify(j.expr.subs(T, t0) - 1)
        assert val == 0


# --- minimalization ----------------------------------------------------------

def test_minimalize_trivial_and_scaling():
    m = extremal_surface("X222")[0]
    mm, s = minimalize(m)
    assert s.expr == 1
    assert sp.expand(mm.g2 - m.g2) == 0

    blown = WeierstrassModel(sp.expand(m.g2 * T ** 4), sp.expand(m.g3 * T ** 6), T)
    mm, s = minimalize(blown)
    assert s.expr == T
    assert sp.expand(mm.g2 - m.g2) == 0 and sp.expand(mm.g3 - m.g3) == 0


def test_classify_raises_on_nonminimal():
    from kummer.errors import NonMinimalModel
    m = extremal_surface("X222")[0]
    blown = WeierstrassModel(sp.expand(m.g2 * T ** 4), sp.expand(m.g3 * T ** 6), T)
    with pytest.raises(NonMinimalModel):
        classify_fibers(blown)


# --- Fuchsian system ---------------------------------------------------------

def test_fuchsian_system_x211():
    m = extremal_surface("X211")[0]
    sys = fuchsian_system(m)
    a = sys.matrices[T]
    assert a[0][1] == RationalFunction(1, 6 * T * (T - 1))
    assert sys.trace(T).is_zero()


def test_fuchsian_trace_zero_everywhere():
    for name, lam in ALL:
        m = extremal_surface(name, lam)[0]
        assert fuchsian_system(m).trace(T).is_zero()
