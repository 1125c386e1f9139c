"""Differential operators of sl(n) acting on truncated series.

``apply_eta``, ``apply_d`` and ``apply_zeta`` realise E_{i+1,i}, E_{i,i+1} and
h_i on the polynomial model of the Verma module.  ``apply_eta_power`` gives the
rational powers of eta_i through the falling-factorial expansion, truncated
at a fixed depth when it does not terminate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .series import (
    NEG_INF,
    TruncatedSeries,
    as_rational,
    diagonal_position,
    equal_or_agree,
    euler,
    mul_derivative,
    multiply_monomial,
    nvars,
    series_sum,
)


@dataclass(frozen=True)
class TruncationPolicy:
    """How many expansion indices ``p`` a non-terminating power keeps."""

    depth: int = 24

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("truncation depth must be at least 1")


DEFAULT_POLICY = TruncationPolicy()


def cartan_matrix(n: int) -> list[list[int]]:
    size = n - 1
    return [[2 if l == i else -1 if abs(l - i) == 1 else 0 for i in range(size)] for l in range(size)]


def _check_index(i: int, n: int) -> None:
    if not 1 <= i <= n - 1:
        raise IndexError(f"generator index {i} out of range for n={n}")


def _check_weight(lam: Sequence, n: int) -> tuple:
    if len(lam) != n - 1:
        raise ValueError(f"weight has length {len(lam)}, expected {n - 1}")
    return tuple(as_rational(v) for v in lam)


def _derivation(i: int, f: TruncatedSeries) -> TruncatedSeries:
    # sum_{j<i} x_{i+1,j} d_{i,j}; commutes with x_{i+1,i}
    n = f.n
    parts = [mul_derivative((i + 1, j), (i, j), f) for j in range(1, i)]
    return series_sum(parts, n) if parts else TruncatedSeries._raw(n, {}, f.frontier)


def apply_eta(i: int, f: TruncatedSeries) -> TruncatedSeries:
    _check_index(i, f.n)
    exps = [0] * nvars(f.n)
    exps[diagonal_position(i)] = mpq(1)
    return multiply_monomial(f, tuple(exps)) + _derivation(i, f)


def apply_eta_power(i: int, a, f: TruncatedSeries, policy: TruncationPolicy = DEFAULT_POLICY) -> TruncatedSeries:
    """eta_i^a (f) = sum_p <a>_p / p! * x_{i+1,i}^(a-p) * (sum_j x_{i+1,j} d_{i,j})^p (f).

    The sum stops once the falling factorial vanishes or the derivation
    annihilates what is left.  Otherwise the first ``policy.depth`` indices
    are kept and the frontier on x_{i+1,i} is raised to cover the rest.
    """
    n = f.n
    _check_index(i, n)
    a = as_rational(a)
    pos = diagonal_position(i)
    size = nvars(n)
    coeff = mpq(1)
    g = f
    parts = []
    for p in range(policy.depth):
        exps = [0] * size
        exps[pos] = a - p
        parts.append(multiply_monomial(g, tuple(exps), coeff))
        coeff = coeff * (a - p) / (p + 1)
        if coeff == 0:
            break
        g = _prune_power(_derivation(i, g), pos, f.frontier[i - 1], p + 1)
        if g.is_zero():
            break
    else:
        out = series_sum(parts, n)
        frontier = list(out.frontier)
        cut = a - policy.depth + max(e[pos] for e in g.terms)
        frontier[i - 1] = max(frontier[i - 1], cut)
        return TruncatedSeries._raw(n, out.terms, tuple(frontier))
    return series_sum(parts, n)


def _prune_power(g: TruncatedSeries, pos: int, bound, p: int) -> TruncatedSeries:
    # terms of g whose x_{i+1,i} exponent lies below bound + p can only land
    # below the output frontier bound + a
    if bound == NEG_INF:
        return g
    limit = bound + p
    return TruncatedSeries._raw(g.n, {e: c for e, c in g.terms.items() if e[pos] >= limit}, g.frontier)


def apply_d(i: int, lam: Sequence, f: TruncatedSeries) -> TruncatedSeries:
    n = f.n
    _check_index(i, n)
    lam = _check_weight(lam, n)
    g = mul_derivative(None, (i + 1, i), f)
    parts = [g * lam[i - 1]]
    parts += [euler((j, i), g, -1) for j in range(i + 1, n + 1)]
    parts += [euler((j, i + 1), g) for j in range(i + 2, n + 1)]
    parts += [mul_derivative((i, j), (i + 1, j), f) for j in range(1, i)]
    parts += [mul_derivative((j, i + 1), (j, i), f, -1) for j in range(i + 2, n + 1)]
    return series_sum(parts, n)


def apply_zeta(i: int, lam: Sequence, f: TruncatedSeries) -> TruncatedSeries:
    n = f.n
    _check_index(i, n)
    lam = _check_weight(lam, n)
    parts = [f * lam[i - 1]]
    for p in range(1, i):
        parts.append(euler((i, p), f))
        parts.append(euler((i + 1, p), f, -1))
    for j in range(i + 2, n + 1):
        parts.append(euler((j, i + 1), f))
        parts.append(euler((j, i), f, -1))
    parts.append(euler((i + 1, i), f, -2))
    return series_sum(parts, n)


def apply_raising_composite(i: int, lam: Sequence, f: TruncatedSeries) -> TruncatedSeries:
    """The root vector E_{i,n} as the nested commutator [d_i, [d_{i+1}, ... [d_{n-2}, d_{n-1}]]]."""
    n = f.n
    _check_index(i, n)

    def nested(k: int, g: TruncatedSeries) -> TruncatedSeries:
        if k == n - 1:
            return apply_d(n - 1, lam, g)
        return apply_d(k, lam, nested(k + 1, g)) - nested(k + 1, apply_d(k, lam, g))

    return nested(i, f)


def apply_eta_chain(steps: Sequence[tuple[int, object]], f: TruncatedSeries,
                    policy: TruncationPolicy = DEFAULT_POLICY) -> TruncatedSeries:
    """Apply ``eta_{i_1}^{a_1} ... eta_{i_r}^{a_r}`` to ``f``; the last step acts first."""
    for i, a in reversed(list(steps)):
        f = apply_eta_power(i, a, f, policy)
    return f


def check_pde(lam: Sequence, z: TruncatedSeries) -> list[TruncatedSeries]:
    """Residuals d_1(z), ..., d_{n-1}(z) of the singular-vector system."""
    return [apply_d(i, lam, z) for i in range(1, z.n)]


def residuals_vanish(residuals: Sequence[TruncatedSeries]) -> bool:
    """Zero exactly for exact residuals, zero above frontier otherwise."""
    return all(equal_or_agree(r, TruncatedSeries._raw(r.n, {}, r.frontier)) for r in residuals)


def is_pde_solution(lam: Sequence, z: TruncatedSeries) -> bool:
    return residuals_vanish(check_pde(lam, z))
