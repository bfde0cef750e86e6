"""Weierstrass models y^2 = 4x^3 - g2(t)x - g3(t) and Kodaira fiber data.

Classification reads vanishing orders of (g2, g3, Delta) on clusters of base
points: squarefree factors of Delta refined until every cluster has uniform
orders, plus an explicit coordinate flip for the fiber at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Sequence, Union

import sympy as sp

from .errors import (BadModulus, DegenerateModel, MissingModulus,
                     NonMinimalModel)
from .field import (RationalFunction, MultiPoly, T, _sqrt_atoms, rat)
from .pfaffian import PfaffianSystem

_INF_ORD = 10 ** 9   # stands in for ord of the zero polynomial

EULER = {"I0": 0, "II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}


def euler_number(kind: str, n: int = 0) -> int:
    if kind == "In":
        return n
    if kind == "In*":
        return n + 6
    return EULER[kind]


def fiber_symbol(kind: str, n: int = 0) -> str:
    if kind == "In":
        return f"I{n}"
    if kind == "In*":
        return f"I{n}*"
    return kind


@dataclass(frozen=True)
class KodairaFiber:
    kind: str                    # "In", "In*", "II", "III", "IV", "II*", "III*", "IV*", "I0"
    n: int                       # only meaningful for the two infinite families
    location: Union[sp.Expr, str]  # squarefree cluster polynomial, or "inf"
    count: int                   # number of distinct base points in the cluster
    euler: int

    @property
    def symbol(self) -> str:
        return fiber_symbol(self.kind, self.n)


@dataclass(frozen=True)
class FiberConfiguration:
    fibers: tuple
    total_euler: int

    def multiset(self) -> dict:
        """Aggregated {fiber symbol: total number of base points}."""
        out: dict = {}
        for f in self.fibers:
            if f.symbol == "I0":
                continue
            out[f.symbol] = out.get(f.symbol, 0) + f.count
        return out

    def __str__(self):
        parts = [f"{c} {s}" if c > 1 else s
                 for s, c in sorted(self.multiset().items())]
        return " + ".join(parts) + f"  (euler {self.total_euler})"


@dataclass(frozen=True)
class Section:
    X: RationalFunction
    Y: RationalFunction

    def on_curve(self, model: "WeierstrassModel") -> bool:
        x = self.X
        rhs = x * x * x * 4 - RationalFunction(model.g2) * x - RationalFunction(model.g3)
        return (self.Y * self.Y - rhs).is_zero()


class WeierstrassModel:
    """Pair (g2(t), g3(t)) of exact polynomials with nonzero discriminant."""

    def __init__(self, g2, g3, base_symbol=T, label: str = ""):
        self.g2 = sp.expand(g2.expr if isinstance(g2, MultiPoly) else sp.sympify(g2))
        self.g3 = sp.expand(g3.expr if isinstance(g3, MultiPoly) else sp.sympify(g3))
        self.base_symbol = base_symbol
        self.label = label
        self._delta = sp.expand(self.g2 ** 3 - 27 * self.g3 ** 2)
        if self._delta == 0:
            raise DegenerateModel(f"discriminant of {label or '(model)'} vanishes identically")
        self.ext = tuple(sorted(_sqrt_atoms(self.g2) | _sqrt_atoms(self.g3)
                                | _sqrt_atoms(self._delta), key=str)) or None

    @property
    def delta(self) -> sp.Expr:
        return self._delta

    def __repr__(self):
        return f"WeierstrassModel({self.label or self.g2}, base={self.base_symbol})"


def discriminant(m: WeierstrassModel) -> MultiPoly:
    """g2^3 - 27 g3^2; DegenerateModel was already raised if identically 0."""
    return MultiPoly(m.delta)


def j_map(m: WeierstrassModel) -> RationalFunction:
    return RationalFunction(m.g2 ** 3, m.delta)


def _P(expr, var, ext):
    if ext:
        return sp.Poly(expr, var, extension=list(ext))
    return sp.Poly(expr, var)


def _ord_along(p: sp.Poly, f: sp.Poly) -> int:
    """Largest k with f^k | p (exact division); INF for the zero polynomial."""
    if p.is_zero:
        return _INF_ORD
    k = 0
    while True:
        q, r = sp.div(p, f)
        if not r.is_zero:
            return k
        p = q
        k += 1


def _split_uniform(h: sp.Poly, p: sp.Poly):
    """Split squarefree h into pairwise-coprime parts with uniform ord in p."""
    if h.degree() <= 0:
        return []
    if p.is_zero:
        return [h]
    k = _ord_along(p, h)
    q = p
    for _ in range(k):
        q = sp.div(q, h)[0]
    g = sp.gcd(h, q).monic() if not q.is_zero else sp.Poly(1, *h.gens)
    if g.degree() == 0:
        return [h]
    rest = sp.div(h, g)[0].monic()
    return _split_uniform(g, p) + _split_uniform(rest, p)


def _kodaira_from_orders(o2: int, o3: int, od: int) -> tuple:
    """(kind, n) from vanishing orders of (g2, g3, Delta) at a place."""
    if od == 0:
        return ("I0", 0)
    if o2 == 0:
        return ("In", od)
    if o2 >= 4 and o3 >= 6:
        raise NonMinimalModel(f"orders ({o2},{o3},{od}) are not minimal")
    if od == 2 and o3 == 1:
        return ("II", 0)
    if od == 3 and o2 == 1:
        return ("III", 0)
    if od == 4 and o3 == 2:
        return ("IV", 0)
    if od == 6 and (o2 == 2 or o3 == 3):
        return ("In*", 0)
    if o2 == 2 and o3 == 3 and od > 6:
        return ("In*", od - 6)
    if od == 8 and o3 == 4:
        return ("IV*", 0)
    if od == 9 and o2 == 3:
        return ("III*", 0)
    if od == 10 and o3 == 5:
        return ("II*", 0)
    raise DegenerateModel(f"orders ({o2},{o3},{od}) match no Kodaira type")


def _infinity_weight(m: WeierstrassModel) -> int:
    d2 = sp.degree(m.g2, m.base_symbol) if m.g2 != 0 else 0
    d3 = sp.degree(m.g3, m.base_symbol) if m.g3 != 0 else 0
    return max(1, -(-int(d2) // 4), -(-int(d3) // 6))


def _model_at_infinity(m: WeierstrassModel):
    """Re-homogenized (g2, g3) in s = 1/t, minimal at s = 0."""
    t = m.base_symbol
    s = sp.Symbol("s_inf")
    k = _infinity_weight(m)
    g2i = sp.expand(sp.together(m.g2.subs(t, 1 / s) * s ** (4 * k)))
    g3i = sp.expand(sp.together(m.g3.subs(t, 1 / s) * s ** (6 * k)))
    sp_poly = _P(s, s, None)
    p2, p3 = _P(g2i, s, m.ext), _P(g3i, s, m.ext)
    while _ord_along(p2, sp_poly) >= 4 and _ord_along(p3, sp_poly) >= 6:
        p2 = sp.div(p2, sp_poly ** 4)[0]
        p3 = sp.div(p3, sp_poly ** 6)[0]
    return p2, p3, s


def classify_fibers(m: WeierstrassModel, check_minimal: bool = True) -> FiberConfiguration:
    """Full Kodaira configuration, including the fiber at t = infinity."""
    t = m.base_symbol
    delta = _P(m.delta, t, m.ext)
    g2p, g3p = _P(m.g2, t, m.ext), _P(m.g3, t, m.ext)

    fibers = []
    _, sqf = delta.sqf_list()
    for f, mult in sqf:
        if f.degree() <= 0:
            continue
        parts = []
        for h in _split_uniform(f.monic(), g2p):
            parts.extend(_split_uniform(h, g3p))
        for h in parts:
            o2 = _ord_along(g2p, h)
            o3 = _ord_along(g3p, h)
            kind, n = _kodaira_from_orders(min(o2, 10 ** 6), min(o3, 10 ** 6), mult)
            fibers.append(KodairaFiber(kind, n, h.as_expr(), h.degree(),
                                       euler_number(kind, n)))

    p2i, p3i, s = _model_at_infinity(m)
    di = p2i ** 3 - 27 * p3i ** 2
    s_poly = _P(s, s, None)
    o2 = _ord_along(p2i, s_poly)
    o3 = _ord_along(p3i, s_poly)
    od = _ord_along(di, s_poly) if not di.is_zero else _INF_ORD
    if od >= _INF_ORD:
        raise DegenerateModel("discriminant vanishes identically at infinity")
    kind, n = _kodaira_from_orders(min(o2, 10 ** 6), min(o3, 10 ** 6), od)
    fibers.append(KodairaFiber(kind, n, "inf", 1, euler_number(kind, n)))

    total = sum(f.count * f.euler for f in fibers)
    return FiberConfiguration(tuple(fibers), total)


def minimalize(m: WeierstrassModel):
    """Divide out s^4 | g2, s^6 | g3 for the maximal polynomial s.

    Returns (minimal model, scaling) with g2 = g2_min * scaling^4 etc.
    """
    t = m.base_symbol
    g2p, g3p = _P(m.g2, t, m.ext), _P(m.g3, t, m.ext)
    scaling = sp.Poly(1, t)
    changed = True
    while changed:
        changed = False
        base = g3p if g2p.is_zero else (g2p if g3p.is_zero else sp.gcd(g2p, g3p))
        if base.degree() <= 0:
            break
        for h in [f.monic() for f, _ in base.sqf_list()[1] if f.degree() > 0]:
            parts = _split_uniform(h, g2p)
            refined = []
            for part in parts:
                refined.extend(_split_uniform(part, g3p))
            for part in refined:
                o2, o3 = _ord_along(g2p, part), _ord_along(g3p, part)
                k = min(o2 // 4, o3 // 6)
                if k >= 1:
                    g2p = sp.div(g2p, part ** (4 * k))[0]
                    g3p = sp.div(g3p, part ** (6 * k))[0]
                    scaling = scaling * sp.Poly(part.as_expr() ** k, t)
                    changed = True
    mm = WeierstrassModel(g2p.as_expr(), g3p.as_expr(), t,
                          label=m.label + ("|min" if scaling.degree() > 0 else ""))
    return mm, MultiPoly(scaling.as_expr())


def fuchsian_system(m: WeierstrassModel) -> PfaffianSystem:
    """Rank-two Picard-Fuchs connection for (omega_1, eta_1) on the base."""
    t = m.base_symbol
    g2, g3, delta = m.g2, m.g3, m.delta
    dlog = sp.cancel(sp.diff(delta, t) / delta)
    delta_comb = sp.expand(3 * g3 * sp.diff(g2, t) - 2 * g2 * sp.diff(g3, t))
    a11 = RationalFunction(-dlog / 12)
    a12 = RationalFunction(sp.cancel(3 * delta_comb / (2 * delta)))
    a21 = RationalFunction(sp.cancel(-g2 * delta_comb / (8 * delta)))
    a22 = RationalFunction(dlog / 12)
    return PfaffianSystem((t,), {t: [[a11, a12], [a21, a22]]}, check=False)


# --- Table 1 surfaces -------------------------------------------------------

def extremal_surface(name: str, lam=None):
    """One of the four extremal rational surfaces, with sections and mu.

    Returns (model, sections, expected FiberConfiguration-multiset, mu).
    """
    from .tables import table1
    data = table1()
    if name not in data:
        raise KeyError(f"unknown surface {name!r}; have {sorted(data)}")
    row = data[name]
    subs = {}
    if row["has_modulus"]:
        if lam is None:
            raise MissingModulus(f"{name} requires a modulus lambda")
        lam_val = sp.Rational(rat(lam)) if isinstance(lam, (int, str, Fraction)) else sp.sympify(lam)
        if lam_val in (0, 1):
            raise BadModulus("lambda in {0, 1} degenerates the surface")
        subs = {sp.Symbol("lam"): lam_val}
    elif lam is not None:
        raise BadModulus(f"{name} carries no modulus")
    g2 = row["g2"].subs(subs)
    g3 = row["g3"].subs(subs)
    model = WeierstrassModel(g2, g3, T, label=name)
    sections = tuple(Section(RationalFunction(sx.subs(subs)), RationalFunction(sy.subs(subs)))
                     for sx, sy in row["sections"])
    expected = dict(row["fibers"])
    return model, sections, expected, row["mu"]
