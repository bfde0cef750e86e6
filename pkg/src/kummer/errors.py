"""Exception hierarchy shared by all kummer modules."""


class KummerError(Exception):
    """Base class for all errors raised by this package."""


# --- exact arithmetic ---

class ZeroDenominator(KummerError):
    pass


class NestedRadical(KummerError):
    """More than one independent square root in a coefficient tower."""


# --- Weierstrass models / fibrations ---

class DegenerateModel(KummerError):
    """Discriminant vanishes identically."""


class NonMinimalModel(KummerError):
    """Some place has ord(g2) >= 4 and ord(g3) >= 6."""


class MissingModulus(KummerError):
    pass


class BadModulus(KummerError):
    """Modulus in {0, 1}, or moduli violating a construction precondition."""


class NotConstantMultiple(KummerError):
    """A two-form pullback failed to reduce to c * du^dx/y."""


class MapUndefined(KummerError):
    pass


# --- numeric evaluation ---

class OutsideDomain(KummerError):
    """Evaluation point outside the convergence/validity domain."""


class ParameterPole(KummerError):
    """Lower hypergeometric parameter is a non-positive integer."""


class BranchCut(KummerError):
    pass


class SingularFiber(KummerError):
    pass


class NoRealCycle(KummerError):
    pass


class NoAdmissibleBranch(KummerError):
    pass


# --- GKZ ---

class ZeroCoordinate(KummerError):
    """Torus normalization requires certain coordinates to be nonzero."""


class ResonantExponent(KummerError):
    pass


class CycleHitsDivisor(KummerError):
    pass


# --- sampling / CLI ---

class ScreeningExhausted(KummerError):
    pass
