"""Structured pass/fail records and deterministic JSON emission."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional

import mpmath as mp
import sympy as sp

_DEC_DIGITS = 30   # decimal strings round-trip exactly at fixed length


def decimal_str(x) -> str:
    """Deterministic decimal string for ints/Fractions/mpf/floats."""
    if isinstance(x, (int,)):
        return str(x)
    if isinstance(x, Fraction):
        x = mp.mpf(x.numerator) / mp.mpf(x.denominator)
    if isinstance(x, (mp.mpf, float)):
        return mp.nstr(mp.mpf(x), _DEC_DIGITS, strip_zeros=False)
    if isinstance(x, mp.mpc):
        return mp.nstr(x, _DEC_DIGITS, strip_zeros=False)
    return str(x)


def exact_str(x) -> str:
    """Exact serialization: Fractions as 'p/q', sympy exprs as str."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, sp.Expr):
        return str(x)
    return str(x)


@dataclass
class VerificationReport:
    check_id: str
    inputs: dict
    expected_source: str            # "paper_table" | "derived_oracle" | "trivial"
    residuals: list
    tolerances: list
    passed: bool
    details: dict = field(default_factory=dict)
    runtime_ms: int = 0

    def as_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "inputs": {k: exact_str(v) for k, v in sorted(self.inputs.items())},
            "expected_source": self.expected_source,
            "residuals": [decimal_str(r) for r in self.residuals],
            "tolerances": [decimal_str(t) for t in self.tolerances],
            "pass": bool(self.passed),
            "details": {k: exact_str(v) for k, v in sorted(self.details.items())},
            "runtime_ms": int(self.runtime_ms),
        }


def make_report(check_id: str, inputs: dict, expected_source: str,
                residuals: Iterable, tolerances: Iterable,
                details: Optional[dict] = None) -> VerificationReport:
    residuals = list(residuals)
    tolerances = list(tolerances)
    if len(residuals) != len(tolerances):
        raise ValueError("one tolerance per residual required")
    ok = all(abs(mp.mpf(str(r)) if not isinstance(r, (int, Fraction)) else mp.mpf(float(r)))
             <= mp.mpf(float(t)) for r, t in zip(residuals, tolerances))
    return VerificationReport(check_id, inputs, expected_source,
                              residuals, tolerances, ok, details or {})


def boolean_report(check_id: str, inputs: dict, expected_source: str,
                   ok: bool, details: Optional[dict] = None) -> VerificationReport:
    """Discrete pass/fail encoded as residual 0/1 against tolerance 1/2."""
    return VerificationReport(check_id, inputs, expected_source,
                              [0 if ok else 1], [Fraction(1, 2)], bool(ok),
                              details or {})


def write_report_json(path, reports, config: Optional[dict] = None) -> None:
    """Atomically write the consolidated report file."""
    payload = {
        "schema": "kummer-report/1",
        "config": config or {},
        "checks": [r.as_dict() for r in reports],
        "pass": all(r.passed for r in reports),
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            json.dump(payload, f, indent=1, sort_keys=True)
            f.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
