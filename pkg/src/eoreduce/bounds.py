"""Closed-form word-length bounds."""

from __future__ import annotations

import math

from .errors import InputError


def compute_bound(n: int, D: int, r: int, parity: str = "even", mode: str = "column") -> int:
    """Length bound for reducing a column (or a matrix) over ``C[x_1..x_n]``, ``dim C = D``."""
    if parity not in ("even", "odd") or mode not in ("column", "matrix"):
        raise InputError("parity must be even/odd and mode column/matrix")
    if n < 0 or D < 0:
        raise InputError("n and D must be non-negative")
    if r < max(3, D + 2):
        raise InputError(f"r = {r} is below max(3, D + 2)")
    odd = parity == "odd"
    tri = r * (r - 1) // 2
    half = math.ceil((r - 1) / 2)
    monic = 12 * r - 8 if odd else 11 * r - 7
    per_round = tri + half + (9 * r - 2 if odd else 8 * r - 2)
    if mode == "column":
        tail = 9 * r - 8 if odd else 8 * r - 8
    else:
        tail = 11 * r - 9 if odd else 10 * r - 10
    return n * monic + (n * D + tri) * per_round + tail
