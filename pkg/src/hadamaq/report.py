"""End-to-end analysis of one Hadamard matrix into a JSON-ready report."""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass, field
from typing import Any

from . import io
from .decomposition import decompose, quotient_table, verify_decomposition
from .exceptions import HadamaqError
from .groups import fingerprint, generate
from .hadamard import DEFAULT_MAX_ORDER, DEFAULT_TOL, EquivalenceWitness, HadamardMatrix, butson_level, dephase, validate
from .magic import commutation_profile, magic_basis, projection_grid, validate_magic_unitary
from .phase import Exact
from .squares import extract_square, rows_as_permutations

SCHEMA = "hadamaq-report/1"


def phase_json(z):
    if isinstance(z, Exact):
        return f"{z.k}/{z.l}"
    c = complex(z)
    return [c.real, c.imag]


def witness_json(w: EquivalenceWitness) -> dict:
    return {
        "row_perm": list(w.row_perm),
        "col_perm": list(w.col_perm),
        "row_phases": [phase_json(z) for z in w.row_phases],
        "col_phases": [phase_json(z) for z in w.col_phases],
    }


@dataclass
class AnalysisReport:
    input: dict
    n: int
    mode: str
    hadamard: dict
    butson_level: Any = None
    dephase: dict | None = None
    magic_unitary: dict | None = None
    commutation: dict | None = None
    magic_square: list | None = None
    group: dict | None = None
    decomposition: dict | None = None
    errors: list = field(default_factory=list)
    timings: dict | None = None

    @property
    def commutative(self) -> bool | None:
        if self.commutation is None:
            return None
        return {"commutative": True, "noncommutative": False}.get(self.commutation["status"])

    @property
    def factor_sizes(self) -> list[int] | None:
        if self.decomposition and "factor_sizes" in self.decomposition:
            return self.decomposition["factor_sizes"]
        return None

    @property
    def consistent(self) -> bool:
        """Commutative flag, magic square and decomposition agree (indeterminate is always accepted)."""
        flag = self.commutative
        if flag is None:
            return True
        return flag == (self.magic_square is not None) == (self.factor_sizes is not None)

    def to_dict(self) -> dict:
        out = {
            "schema": SCHEMA,
            "input": self.input,
            "n": self.n,
            "mode": self.mode,
            "hadamard": self.hadamard,
            "butson_level": self.butson_level,
            "dephase": self.dephase,
            "magic_unitary": self.magic_unitary,
            "commutation": self.commutation,
            "magic_square": self.magic_square,
            "group": self.group,
            "decomposition": self.decomposition,
            "consistent": self.consistent,
            "errors": self.errors,
        }
        if self.timings is not None:
            out["timings"] = self.timings
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _input_descriptor(h: HadamardMatrix, name: str | None) -> dict:
    digest = hashlib.sha256(io.dumps_chm(h).encode()).hexdigest()
    return {"name": name, "sha256": digest}


def analyze(
    h: HadamardMatrix,
    tol: float = DEFAULT_TOL,
    max_order: int = DEFAULT_MAX_ORDER,
    name: str | None = None,
    timings: bool = False,
) -> AnalysisReport:
    """validate, dephase, Butson level, projection grid, commutation, square, group, decomposition.

    Errors from the later stages land in ``report.errors``; nothing raises on
    a parseable matrix.
    """
    clock: dict[str, float] = {}

    def timed(key, fn, *args, **kw):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kw)
        finally:
            clock[key] = time.perf_counter() - t0

    v = timed("validate", validate, h, tol)
    report = AnalysisReport(
        input=_input_descriptor(h, name),
        n=h.n,
        mode=h.mode,
        hadamard={
            "valid": v.is_hadamard,
            "max_row_residual": v.max_row_residual,
            "max_col_residual": v.max_col_residual,
        },
    )
    if timings:
        report.timings = clock
    if not v.is_hadamard:
        report.errors.append({"stage": "validate", "error": "NotHadamard"})
        return report

    level = timed("butson_level", butson_level, h, max_order)
    report.butson_level = level if level != math.inf else "inf"
    d = timed("dephase", dephase, h, tol)
    report.dephase = {
        "diagonal_incomplete": d.diagonal_incomplete,
        "witness": witness_json(d.witness),
    }

    grid = timed("projection_grid", lambda: projection_grid(magic_basis(d.matrix)))
    mv = timed("validate_magic_unitary", validate_magic_unitary, grid, tol)
    report.magic_unitary = {
        "ok": mv.ok,
        "max_idempotent": mv.max_idempotent,
        "max_selfadjoint": mv.max_selfadjoint,
        "max_row_sum": mv.max_row_sum,
        "max_col_sum": mv.max_col_sum,
    }
    prof = timed("commutation_profile", commutation_profile, grid)
    report.commutation = {"max_norm": prof.max_norm, "status": prof.status}

    if prof.commutative:
        try:
            square = timed("extract_square", extract_square, grid)
            report.magic_square = square.tolist()
            G = timed("generate", generate, rows_as_permutations(square))
            report.group = timed("fingerprint", fingerprint, G).to_dict()
        except HadamaqError as exc:
            report.errors.append({"stage": "extract_square", "error": type(exc).__name__, "message": str(exc)})

    try:
        dec = timed("decompose", decompose, h, max_order)
        ok, residual = verify_decomposition(h, dec)
        report.decomposition = {
            "factor_sizes": list(dec.factor_sizes),
            "witness": witness_json(dec.witness),
            "verified": ok,
            "residual": residual,
        }
        if report.magic_square is not None:
            table = quotient_table(d.matrix, tol) if d.matrix.mode == "exact" else None
            if table is not None and table.tolist() != report.magic_square:
                report.errors.append({"stage": "decompose", "error": "QuotientTableMismatch"})
    except HadamaqError as exc:
        report.decomposition = {"error": type(exc).__name__, "message": str(exc)}
    return report
