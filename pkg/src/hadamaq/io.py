"""Text formats.

``.chm``::

    chm v1 n=<n> mode=<exact|approx> [order=<l>]
    <n lines of n integers k, entry = exp(2 pi i k / l)>     (exact)
    <n lines of n tokens re,im>                             (approx)

``.msq``::

    msq v1 n=<n>
    <n lines of n integers in 0..n-1>
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .hadamard import DEFAULT_MAX_ORDER, HadamardMatrix, butson_level
from .phase import Approx, snap_to_root


class FormatError(ValueError):
    pass


def _header(line: str, magic: str) -> dict[str, str]:
    parts = line.split()
    if parts[:2] != [magic, "v1"]:
        raise FormatError(f"expected '{magic} v1' header, got {line!r}")
    fields = {}
    for p in parts[2:]:
        key, sep, value = p.partition("=")
        if not sep:
            raise FormatError(f"bad header field {p!r}")
        fields[key] = value
    if "n" not in fields:
        raise FormatError("header lacks n=")
    return fields


def _body(lines: list[str], n: int) -> list[list[str]]:
    rows = [ln.split() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise FormatError(f"expected {n} rows of {n} tokens")
    return rows


def dumps_chm(h: HadamardMatrix, max_order: int = DEFAULT_MAX_ORDER) -> str:
    n = h.n
    if h.mode == "exact":
        k, level = h.exponents
    else:
        level = butson_level(h, max_order)
        if level != math.inf:
            snapped = HadamardMatrix([[snap_to_root(z, max_order) for z in row] for row in h.entries], check=False)
            k = snapped.exponents[0] * (level // snapped.exponents[1])
    if level != math.inf:
        out = [f"chm v1 n={n} mode=exact order={level}"]
        out += [" ".join(str(int(x)) for x in row) for row in k]
    else:
        out = [f"chm v1 n={n} mode=approx"]
        for row in h.entries:
            out.append(" ".join(f"{complex(z).real!r},{complex(z).imag!r}" for z in row))
    return "\n".join(out) + "\n"


def loads_chm(text: str, check: bool = True) -> HadamardMatrix:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty file")
    fields = _header(lines[0], "chm")
    n = int(fields["n"])
    mode = fields.get("mode", "exact")
    rows = _body(lines[1:], n)
    if mode == "exact":
        if "order" not in fields:
            raise FormatError("exact mode needs order=")
        k = np.array([[int(t) for t in r] for r in rows], dtype=int).reshape(n, n)
        return HadamardMatrix.from_exponents(k, int(fields["order"]), check=check)
    if mode == "approx":
        entries = []
        for r in rows:
            entries.append([Approx(*map(float, t.split(","))) for t in r])
        return HadamardMatrix(entries, check=check)
    raise FormatError(f"unknown mode {mode!r}")


def read_chm(path, check: bool = True) -> HadamardMatrix:
    return loads_chm(Path(path).read_text(), check=check)


def write_chm(h: HadamardMatrix, path) -> None:
    Path(path).write_text(dumps_chm(h))


def dumps_msq(sigma) -> str:
    s = np.asarray(getattr(sigma, "sigma", sigma), dtype=int)
    lines = [f"msq v1 n={s.shape[0]}"] + [" ".join(map(str, row)) for row in s.tolist()]
    return "\n".join(lines) + "\n"


def loads_msq(text: str) -> np.ndarray:
    """Raw grid; pass it through ``squares.normalize`` to get a MagicSquare."""
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty file")
    n = int(_header(lines[0], "msq")["n"])
    return np.array([[int(t) for t in r] for r in _body(lines[1:], n)], dtype=int).reshape(n, n)


def read_msq(path) -> np.ndarray:
    return loads_msq(Path(path).read_text())


def write_msq(sigma, path) -> None:
    Path(path).write_text(dumps_msq(sigma))
