"""Jacobian elliptic fibrations on Kum(E1 x E2) and their Picard-Fuchs checks."""

__version__ = "0.1.0"
