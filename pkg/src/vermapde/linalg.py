"""Exact kernels of rational matrices by fraction-free (Bareiss) elimination."""

from __future__ import annotations

import math
from typing import Sequence

from gmpy2 import mpq, mpz


def _integer_rows(rows: Sequence[Sequence]) -> list[list]:
    out = []
    for row in rows:
        row = [mpq(x) for x in row]
        den = math.lcm(*(int(x.denominator) for x in row)) if row else 1
        out.append([mpz(x * den) for x in row])
    return out


def echelon(rows: Sequence[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Fraction-free row echelon form.

    Returns the nonzero integer rows and the pivot column of each.  Every
    division in the Bareiss update is exact.
    """
    m = [r for r in _integer_rows(rows) if any(r)]
    pivots: list[int] = []
    prev = mpz(1)
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        k = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        piv = m[r][c]
        for k in range(r + 1, len(m)):
            a = m[k][c]
            row_k, row_r = m[k], m[r]
            for j in range(c, ncols):
                row_k[j] = (piv * row_k[j] - a * row_r[j]) // prev
        pivots.append(c)
        prev = piv
        r += 1
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[mpq]]:
    """Basis of ``{v : A v = 0}``, one vector per free column, that column set to 1."""
    ech, pivots = echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [mpq(0)] * ncols
        v[fc] = mpq(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            s = sum((ech[r][j] * v[j] for j in range(c + 1, ncols) if v[j]), mpq(0))
            v[c] = -s / ech[r][c]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(echelon(rows, ncols)[1])
