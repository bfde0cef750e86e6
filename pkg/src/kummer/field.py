"""Exact arithmetic for multivariate polynomials and rational functions.

Coefficients live in Q or in a single quadratic extension Q(sqrt(D)); the
tower is fixed at depth one and nested radicals are rejected.  sympy does
the polynomial heavy lifting; the classes here pin down the canonical
forms (graded-lex leading coefficient of the denominator normalized to 1,
fixed global symbol order) that the rest of the package and the test
goldens rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional, Union

import sympy as sp

from .errors import NestedRadical, ZeroDenominator

# The spec'd alias: exact rationals are plain Fractions.
Rational = Fraction

# Global symbol order: lam1 < lam2 < d < t < u < x < y < x1 < x2.
LAM1, LAM2, D, T, U, X, Y, X1, X2 = sp.symbols("lam1 lam2 d t u x y x1 x2")
SYMBOL_ORDER = (LAM1, LAM2, D, T, U, X, Y, X1, X2)
_ORDER_INDEX = {s: i for i, s in enumerate(SYMBOL_ORDER)}

Scalar = Union[int, Fraction, sp.Expr]


def rat(p, q: int = 1) -> Fraction:
    """Build an exact rational from ints, strings like '1/2', or Fractions."""
    if isinstance(p, str):
        return Fraction(p)
    return Fraction(p, q)


def fraction_sqrt(f: Fraction) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None if irrational."""
    if f < 0:
        return None
    pn, qn = f.numerator, f.denominator
    rn, rq = isqrt(pn), isqrt(qn)
    if rn * rn == pn and rq * rq == qn:
        return Fraction(rn, rq)
    return None


def _sqrt_atoms(expr: sp.Expr) -> set:
    """Distinct sqrt(rational) sub-expressions of expr (depth-one radicals)."""
    out = set()
    for p in expr.atoms(sp.Pow):
        if p.exp == sp.Rational(1, 2) or p.exp == sp.Rational(-1, 2):
            base = p.base
            if not base.is_Rational:
                raise NestedRadical(f"non-rational radicand {base}")
            out.add(sp.sqrt(base))
    return out


def check_single_radical(expr: sp.Expr) -> Optional[sp.Expr]:
    """Return the at-most-one sqrt generator of expr, raising on towers."""
    atoms = _sqrt_atoms(expr)
    if len(atoms) > 1:
        raise NestedRadical(f"coefficient tower deeper than one: {sorted(map(str, atoms))}")
    return next(iter(atoms)) if atoms else None


@dataclass(frozen=True)
class QuadExtScalar:
    """Element a + b*sqrt(dsq) of Q(sqrt(dsq)), exact in all three fields."""

    a: Fraction
    b: Fraction
    dsq: Fraction

    @staticmethod
    def of(a, b=0, dsq=0) -> "QuadExtScalar":
        return QuadExtScalar(rat(a), rat(b), rat(dsq)).reduce()

    def reduce(self) -> "QuadExtScalar":
        """Normalize to b = 0 form when dsq is a perfect rational square."""
        if self.b == 0:
            return QuadExtScalar(self.a, Fraction(0), self.dsq)
        r = fraction_sqrt(self.dsq)
        if r is not None:
            return QuadExtScalar(self.a + self.b * r, Fraction(0), self.dsq)
        return self

    def _coerce(self, other) -> "QuadExtScalar":
        if isinstance(other, QuadExtScalar):
            if other.b != 0 and self.b != 0 and other.dsq != self.dsq:
                raise NestedRadical(
                    f"mixed extensions sqrt({self.dsq}) and sqrt({other.dsq})")
            return QuadExtScalar(other.a, other.b, self.dsq if other.b == 0 else other.dsq)
        return QuadExtScalar(rat(other), Fraction(0), self.dsq)

    def __add__(self, other):
        o = self._coerce(other)
        dsq = self.dsq if self.b != 0 or o.b == 0 else o.dsq
        return QuadExtScalar(self.a + o.a, self.b + o.b, dsq).reduce()

    __radd__ = __add__

    def __neg__(self):
        return QuadExtScalar(-self.a, -self.b, self.dsq)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        o = self._coerce(other)
        dsq = self.dsq if self.b != 0 or o.b == 0 else o.dsq
        a = self.a * o.a + self.b * o.b * dsq
        b = self.a * o.b + self.b * o.a
        return QuadExtScalar(a, b, dsq).reduce()

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExtScalar":
        return QuadExtScalar(self.a, -self.b, self.dsq)

    def norm(self) -> Fraction:
        """Field norm a^2 - b^2 * dsq."""
        return self.a * self.a - self.b * self.b * self.dsq

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDenominator(f"division by {o}")
        c = self * o.conjugate()
        return QuadExtScalar(c.a / n, c.b / n, c.dsq).reduce()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self.a - o.a) == 0 and self.b == o.b or \
            (self.reduce().a == o.reduce().a and self.reduce().b == o.reduce().b)

    def __hash__(self):
        r = self.reduce()
        return hash((r.a, r.b, r.dsq if r.b else Fraction(0)))

    def is_rational(self) -> bool:
        return self.reduce().b == 0

    def to_sympy(self) -> sp.Expr:
        return sp.Rational(self.a) + sp.Rational(self.b) * sp.sqrt(sp.Rational(self.dsq))

    @staticmethod
    def from_sympy(expr: sp.Expr, dsq: Optional[Fraction] = None) -> "QuadExtScalar":
        expr = sp.expand(expr)
        root = check_single_radical(expr)
        if root is None:
            if not expr.is_Rational:
                raise ValueError(f"not an element of a quadratic extension: {expr}")
            return QuadExtScalar(Fraction(int(expr.p), int(expr.q)), Fraction(0),
                                 dsq if dsq is not None else Fraction(0))
        dval = Fraction(int(root.args[0].p), int(root.args[0].q))
        b = sp.expand(expr.coeff(root))
        a = sp.expand(expr - b * root)
        if not (a.is_Rational and b.is_Rational):
            raise ValueError(f"not linear in {root}: {expr}")
        return QuadExtScalar(Fraction(int(a.p), int(a.q)),
                             Fraction(int(b.p), int(b.q)), dval)

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a} + {self.b}*sqrt({self.dsq}))"


def _as_expr(value) -> sp.Expr:
    if isinstance(value, MultiPoly):
        return value.expr
    if isinstance(value, RationalFunction):
        return value.expr
    if isinstance(value, QuadExtScalar):
        return value.to_sympy()
    if isinstance(value, Fraction):
        return sp.Rational(value.numerator, value.denominator)
    return sp.sympify(value)


def _present_symbols(expr: sp.Expr) -> tuple:
    syms = [s for s in SYMBOL_ORDER if s in expr.free_symbols]
    extra = expr.free_symbols - set(SYMBOL_ORDER)
    if extra:
        raise ValueError(f"symbols outside the global order: {extra}")
    return tuple(syms)


class MultiPoly:
    """Sparse exact multivariate polynomial in the global symbol set."""

    __slots__ = ("expr",)

    def __init__(self, value):
        expr = sp.expand(_as_expr(value))
        check_single_radical(expr)
        if not expr.is_polynomial(*SYMBOL_ORDER):
            raise ValueError(f"not polynomial in the global symbols: {expr}")
        object.__setattr__(self, "expr", expr)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    @property
    def variables(self) -> tuple:
        return _present_symbols(self.expr)

    @property
    def terms(self) -> dict:
        """Map exponent vector (aligned to self.variables) -> coefficient.

        Coefficients are QuadExtScalar whenever the base field is numeric;
        otherwise they are returned as sympy expressions (e.g. in lam1, lam2).
        """
        gens = self.variables
        if not gens:
            if self.expr == 0:
                return {}
            return {(): _maybe_quadext(self.expr)}
        poly = sp.Poly(self.expr, *gens)
        return {mon: _maybe_quadext(coeff) for mon, coeff in poly.terms()}

    def degree(self, var) -> int:
        return sp.degree(self.expr, var) if self.expr != 0 else -1

    def is_zero(self) -> bool:
        return self.expr == 0

    def __add__(self, other):
        return MultiPoly(self.expr + _as_expr(other))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(-self.expr)

    def __sub__(self, other):
        return MultiPoly(self.expr - _as_expr(other))

    def __rsub__(self, other):
        return MultiPoly(_as_expr(other) - self.expr)

    def __mul__(self, other):
        return MultiPoly(self.expr * _as_expr(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return MultiPoly(self.expr ** int(n))

    def __eq__(self, other):
        try:
            return sp.expand(self.expr - _as_expr(other)) == 0
        except (ValueError, TypeError, sp.SympifyError):
            return NotImplemented

    def __hash__(self):
        return hash(self.expr)

    def subs(self, var, value) -> "MultiPoly":
        return MultiPoly(sp.expand(self.expr.subs(var, _as_expr(value))))

    def diff(self, var) -> "MultiPoly":
        return MultiPoly(sp.diff(self.expr, var))

    def __repr__(self):
        return f"MultiPoly({self.expr})"


def _maybe_quadext(coeff: sp.Expr):
    try:
        return QuadExtScalar.from_sympy(coeff)
    except (ValueError, NestedRadical):
        return coeff


def _grlex_leading_coeff(expr: sp.Expr) -> sp.Expr:
    """Leading coefficient of expr under grlex in the global symbol order."""
    gens = _present_symbols(expr)
    if not gens:
        return expr
    poly = sp.Poly(expr, *gens)
    terms = poly.terms(order="grlex")
    return terms[0][1]


def _cancel(expr: sp.Expr) -> sp.Expr:
    if _sqrt_atoms(expr):
        try:
            return sp.cancel(expr, extension=True)
        except sp.polys.polyerrors.PolynomialError:
            return sp.cancel(expr)
    return sp.cancel(expr)


class RationalFunction:
    """Quotient of MultiPolys, kept in gcd-reduced canonical form.

    The canonical representative has a denominator whose grlex-leading
    coefficient is 1 (after clearing any radical from that coefficient).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, _normalized=False):
        n_expr = _as_expr(num)
        d_expr = _as_expr(den)
        if d_expr == 0:
            raise ZeroDenominator("zero denominator")
        if not _normalized:
            n_expr, d_expr = self._normal_form(n_expr, d_expr)
        object.__setattr__(self, "num", MultiPoly(n_expr))
        object.__setattr__(self, "den", MultiPoly(d_expr))

    def __setattr__(self, *a):
        raise AttributeError("RationalFunction is immutable")

    @staticmethod
    def _normal_form(n_expr, d_expr):
        frac = _cancel(sp.together(n_expr / d_expr))
        n, d = sp.fraction(frac)
        n, d = sp.expand(n), sp.expand(d)
        if d == 0:
            raise ZeroDenominator("denominator vanishes identically")
        lc = _grlex_leading_coeff(d)
        root = check_single_radical(lc) if not lc.is_Rational else None
        if root is not None:
            conj = lc.subs(root, -root)
            n, d = sp.expand(n * conj), sp.expand(d * conj)
            lc = _grlex_leading_coeff(d)
        if lc != 1:
            n, d = sp.expand(n / lc), sp.expand(d / lc)
        return n, d

    @property
    def expr(self) -> sp.Expr:
        return self.num.expr / self.den.expr

    def __add__(self, other):
        o = other if isinstance(other, RationalFunction) else RationalFunction(other)
        return RationalFunction(self.num.expr * o.den.expr + o.num.expr * self.den.expr,
                                self.den.expr * o.den.expr)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num.expr, self.den.expr, _normalized=True)

    def __sub__(self, other):
        return self + (-(other if isinstance(other, RationalFunction)
                         else RationalFunction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = other if isinstance(other, RationalFunction) else RationalFunction(other)
        return RationalFunction(self.num.expr * o.num.expr, self.den.expr * o.den.expr)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = other if isinstance(other, RationalFunction) else RationalFunction(other)
        if o.num.is_zero():
            raise ZeroDenominator("division by zero rational function")
        return RationalFunction(self.num.expr * o.den.expr, self.den.expr * o.num.expr)

    def __rtruediv__(self, other):
        return RationalFunction(other) / self

    def __eq__(self, other):
        try:
            o = other if isinstance(other, RationalFunction) else RationalFunction(other)
        except (ValueError, TypeError, sp.SympifyError):
            return NotImplemented
        return sp.expand(self.num.expr * o.den.expr - o.num.expr * self.den.expr) == 0

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __repr__(self):
        return f"RationalFunction({self.num.expr}, {self.den.expr})"


# --- spec operations -------------------------------------------------------

def normalize(rf: RationalFunction) -> RationalFunction:
    """Return the canonical gcd-reduced form of rf (idempotent)."""
    return RationalFunction(rf.num.expr, rf.den.expr)


def poly_gcd(p: MultiPoly, q: MultiPoly, var,
             extension=None) -> MultiPoly:
    """Monic gcd of p and q viewed as univariate polynomials in var."""
    pe, qe = _as_expr(p), _as_expr(q)
    if pe == 0 and qe == 0:
        return MultiPoly(0)
    kwargs = {"extension": extension} if extension else {}
    if not kwargs and (_sqrt_atoms(pe) or _sqrt_atoms(qe)):
        kwargs = {"extension": True}
    g = sp.gcd(sp.Poly(pe, var, **kwargs), sp.Poly(qe, var, **kwargs))
    g = g.monic()
    return MultiPoly(g.as_expr())


def squarefree_decompose(p: MultiPoly, var, extension=None):
    """Squarefree decomposition lc * prod(f_i ** m_i) in var.

    Returns (lc, [(factor, multiplicity), ...]) with monic, pairwise coprime,
    squarefree factors; the reconstruction is exact.
    """
    pe = _as_expr(p)
    if pe == 0:
        raise ValueError("squarefree_decompose of the zero polynomial")
    kwargs = {"extension": extension} if extension else {}
    if not kwargs and _sqrt_atoms(pe):
        kwargs = {"extension": True}
    poly = sp.Poly(pe, var, **kwargs)
    coeff, factors = poly.sqf_list()
    lc = sp.sympify(coeff)
    out = []
    for f, m in factors:
        fm = f.monic()
        lc *= f.LC() ** m
        if fm.degree() > 0:
            out.append((MultiPoly(fm.as_expr()), int(m)))
    return sp.expand(lc.as_expr() if isinstance(lc, sp.Poly) else lc), out


def substitute(rf: RationalFunction, var, value) -> RationalFunction:
    """Exact composition rf(var -> value), normalized."""
    val = value if isinstance(value, RationalFunction) else RationalFunction(value)
    # Compose on cleared numerators/denominators so a vanishing composition
    # denominator is caught instead of collapsing to sympy's zoo.
    k = max(rf.num.degree(var), rf.den.degree(var), 0)
    vn, vd = val.num.expr, val.den.expr
    n = sp.expand(rf.num.expr.subs(var, vn / vd) * vd ** k)
    d = sp.expand(rf.den.expr.subs(var, vn / vd) * vd ** k)
    n, d = sp.fraction(_cancel(sp.together(n / d) if d != 0 else sp.nan))
    if sp.expand(d) == 0 or n in (sp.nan, sp.zoo):
        raise ZeroDenominator("composition denominator vanishes identically")
    return RationalFunction(n, d)


def derivative(rf: RationalFunction, var) -> RationalFunction:
    """Quotient-rule-exact derivative d(rf)/d(var), normalized."""
    n, d = rf.num.expr, rf.den.expr
    return RationalFunction(sp.diff(n, var) * d - n * sp.diff(d, var), d * d)
