"""First-order Pfaffian systems d f = (sum_i A_i dz_i) f with exact entries."""

from __future__ import annotations

import sympy as sp

from .field import RationalFunction


class PfaffianSystem:
    """Connection matrices per variable; integrability checked symbolically.

    For variables z_i and matrices A_i, integrability of d f = (sum A_i dz_i) f
    is d(Omega) = Omega ^ Omega, i.e. for every pair i < j:
        d A_j / d z_i - d A_i / d z_j = A_i A_j - A_j A_i.
    """

    def __init__(self, variables, matrices, check=True):
        self.variables = tuple(variables)
        self.matrices = {v: [[e if isinstance(e, RationalFunction) else RationalFunction(e)
                              for e in row] for row in matrices[v]]
                         for v in self.variables}
        dims = {len(m) for m in self.matrices.values()}
        dims |= {len(row) for m in self.matrices.values() for row in m}
        if len(dims) != 1:
            raise ValueError("non-square or inconsistent connection matrices")
        self.dimension = dims.pop()
        if check and not self.is_integrable():
            raise ValueError("connection is not integrable: d(Omega) != Omega^Omega")

    def matrix(self, var) -> sp.Matrix:
        return sp.Matrix([[e.expr for e in row] for row in self.matrices[var]])

    def is_integrable(self) -> bool:
        for i, zi in enumerate(self.variables):
            Ai = self.matrix(zi)
            for zj in self.variables[i + 1:]:
                Aj = self.matrix(zj)
                lhs = Aj.diff(zi) - Ai.diff(zj)
                rhs = Ai * Aj - Aj * Ai
                if any(sp.cancel(sp.together(x)) != 0 for x in (lhs - rhs)):
                    return False
        return True

    def trace(self, var) -> RationalFunction:
        m = self.matrices[var]
        tr = sum((e.expr for e in (m[i][i] for i in range(self.dimension))), sp.S.Zero)
        return RationalFunction(sp.together(tr))


def box_product(sys1: PfaffianSystem, sys2: PfaffianSystem) -> PfaffianSystem:
    """Outer tensor product: Omega_1 (x) I + I (x) Omega_2 on disjoint variables."""
    if set(sys1.variables) & set(sys2.variables):
        raise ValueError("box product requires disjoint variable sets")
    eye1 = sp.eye(sys1.dimension)
    eye2 = sp.eye(sys2.dimension)
    mats = {}
    for v in sys1.variables:
        kron = sp.Matrix(sp.kronecker_product(sys1.matrix(v), eye2))
        mats[v] = kron.tolist()
    for v in sys2.variables:
        kron = sp.Matrix(sp.kronecker_product(eye1, sys2.matrix(v)))
        mats[v] = kron.tolist()
    return PfaffianSystem(sys1.variables + sys2.variables, mats)
