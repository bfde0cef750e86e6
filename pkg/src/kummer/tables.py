"""Fixture tables (exact surface/fibration data) with tamper-evident loading.

Tables live as JSON next to the package; every file carries a sha256 of its
canonicalized data payload, and the loaders re-verify the internal algebraic
identities (discriminant formula, lattice relations) before handing data out.
"""

from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

import sympy as sp

from .field import D, LAM1, LAM2, T, U, X, X1, X2, Y

LAM = sp.Symbol("lam")
_NAMES = {
    "lam": LAM, "lam1": LAM1, "lam2": LAM2, "d": D,
    "t": T, "u": U, "x": X, "y": Y, "x1": X1, "x2": X2,
    "sqrt": sp.sqrt,
}


def parse_expr(s: str) -> sp.Expr:
    return sp.sympify(s, locals=dict(_NAMES), rational=True)


def checksum(data) -> str:
    payload = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def fixture_dir() -> Path:
    env = os.environ.get("KUMMER_FIXTURE_DIR")
    if env:
        return Path(env)
    return Path(str(resources.files("kummer").joinpath("tables")))


def _load(name: str, directory=None) -> dict:
    path = Path(directory) / name if directory else fixture_dir() / name
    raw = json.loads(path.read_text(encoding="utf-8"))
    digest = checksum(raw["data"])
    if digest != raw.get("sha256"):
        raise ValueError(f"fixture {name} failed its checksum "
                         f"(got {digest}, recorded {raw.get('sha256')})")
    return raw["data"]


@lru_cache(maxsize=None)
def table1(directory=None) -> dict:
    """Extremal rational elliptic surfaces: exact (g2, g3), sections, fibers."""
    data = _load("table1.json", directory)
    out = {}
    for name, row in data.items():
        g2, g3 = parse_expr(row["g2"]), parse_expr(row["g3"])
        delta, j = parse_expr(row["delta"]), parse_expr(row["j"])
        if sp.expand(g2 ** 3 - 27 * g3 ** 2 - delta) != 0:
            raise ValueError(f"table1[{name}]: discriminant mismatch with g2, g3")
        if sp.cancel(sp.together(g2 ** 3 / delta - j)) != 0:
            raise ValueError(f"table1[{name}]: J mismatch with g2^3/Delta")
        out[name] = {
            "has_modulus": bool(row["has_modulus"]),
            "mu": Fraction(row["mu"]),
            "mw": row["mw"],
            "g2": g2, "g3": g3, "delta": delta, "j": j,
            "sections": [(parse_expr(sx), parse_expr(sy))
                         for sx, sy in row["sections"]],
            "fibers": [(sym, int(cnt)) for sym, cnt in row["fibers"]],
        }
    return out


@lru_cache(maxsize=None)
def table2(directory=None) -> dict:
    """Base transformation + quadratic twist data for J1..J7, J9."""
    data = _load("table2.json", directory)
    out = {}
    for key, row in data.items():
        out[int(key)] = {
            "surface": row["surface"],
            "t": parse_expr(row["t"]),
            "T": parse_expr(row["T"]),
            "dsq": parse_expr(row["dsq"]) if row.get("dsq") else None,
            "mw": row["mw"],
            "fibers": [(sym, int(cnt)) for sym, cnt in row["fibers"]],
            "notes": row.get("notes", ""),
        }
    return out


@lru_cache(maxsize=None)
def table3(directory=None) -> dict:
    """Two-form-invariant rational maps J8 <- J7, J10 <- J9, J11 <- J7."""
    data = _load("table3.json", directory)
    out = {}
    for key, row in data.items():
        out[int(key)] = {
            "source": int(row["source"]),
            "U": parse_expr(row["U"]),
            "X": parse_expr(row["X"]),
            "Y": parse_expr(row["Y"]),
            "mw": row["mw"],
            "fibers": [(sym, int(cnt)) for sym, cnt in row["fibers"]],
        }
    return out


@lru_cache(maxsize=None)
def table4(directory=None) -> dict:
    """GKZ restriction rows: alpha, beta, prefactor g, coefficient vector v."""
    data = _load("table4.json", directory)
    out = {}
    for key, row in data.items():
        out[int(key)] = {
            "alpha": tuple(Fraction(a) for a in row["alpha"]),
            "beta": tuple(Fraction(b) for b in row["beta"]),
            "g": parse_expr(row["g"]),
            "v": [parse_expr(s) for s in row["v"]],
            "dsq": parse_expr(row["dsq"]) if row.get("dsq") else None,
        }
    return out
