"""The symmetric group acting on truncated series, and the singular vectors it produces.

sigma_i sends a weighted series f of weight mu to eta_i^{mu(h_i)+1}(f).  The
orbit of the constant 1 under these operators solves the singular-vector
system; the members that come out as polynomials are exactly the singular
vectors of the Verma module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq

from .operators import DEFAULT_POLICY, TruncationPolicy, apply_eta_power, check_pde, residuals_vanish
from .series import TruncatedSeries, as_weight, is_polynomial, series_sum, weight_of


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured size limit."""


DEFAULT_ORBIT_BUDGET = 40320


@dataclass(frozen=True)
class SingularCertificate:
    word: tuple[int, ...]
    series: TruncatedSeries
    weight: tuple
    polynomial: bool
    residual_norm_zero: bool
    # other canonical words whose sigma(1) is proportional to this one
    duplicates: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {
            "word": list(self.word),
            "weight": [str(w) for w in self.weight],
            "polynomial": self.polynomial,
            "pde_zero": self.residual_norm_zero,
            "series": self.series.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SingularCertificate":
        return cls(
            word=tuple(data["word"]),
            series=TruncatedSeries.from_json(data["series"]),
            weight=as_weight(data["weight"]),
            polynomial=bool(data["polynomial"]),
            residual_norm_zero=bool(data["pde_zero"]),
        )


def decompose_weighted(f: TruncatedSeries, lam: Sequence) -> list[tuple[tuple, TruncatedSeries]]:
    """Split ``f`` into its weight components, sorted by weight.

    Each component keeps the frontier of ``f``.
    """
    lam = as_weight(lam)
    groups: dict[tuple, dict] = {}
    for e, c in f.terms.items():
        groups.setdefault(weight_of(e, lam), {})[e] = c
    return [(mu, TruncatedSeries._raw(f.n, groups[mu], f.frontier)) for mu in sorted(groups)]


def _check_index(i: int, n: int) -> None:
    if not 1 <= i <= n - 1:
        raise IndexError(f"generator index {i} out of range for n={n}")


def apply_sigma(i: int, lam: Sequence, f: TruncatedSeries,
                policy: TruncationPolicy = DEFAULT_POLICY) -> TruncatedSeries:
    _check_index(i, f.n)
    parts = [apply_eta_power(i, mu[i - 1] + 1, part, policy) for mu, part in decompose_weighted(f, lam)]
    if not parts:
        return f
    return series_sum(parts, f.n)


def evaluate_word(word: Sequence[int], lam: Sequence, policy: TruncationPolicy = DEFAULT_POLICY,
                  n: int | None = None) -> TruncatedSeries:
    """sigma_{i_1}(sigma_{i_2}(... sigma_{i_r}(1))) for ``word = [i_1, ..., i_r]``."""
    lam = as_weight(lam)
    n = len(lam) + 1 if n is None else n
    for i in word:
        _check_index(i, n)
    f = TruncatedSeries.one(n)
    for i in reversed(list(word)):
        f = apply_sigma(i, lam, f, policy)
    return f


# -- permutations -------------------------------------------------------------

def word_to_perm(word: Sequence[int], n: int) -> tuple[int, ...]:
    """One-line notation of ``s_{i_1} s_{i_2} ... s_{i_r}`` as a map on {1..n}."""
    perm = list(range(1, n + 1))
    for i in word:
        _check_index(i, n)
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for a, b in itertools.combinations(perm, 2) if a > b)


def is_reduced(word: Sequence[int], n: int) -> bool:
    return len(word) == inversions(word_to_perm(word, n))


def canonical_word(perm: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically smallest reduced word, built by peeling the smallest left descent."""
    perm = list(perm)
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {perm}")
    word = []
    while True:
        where = {v: k for k, v in enumerate(perm)}
        for i in range(1, n):
            if where[i + 1] < where[i]:
                break
        else:
            return tuple(word)
        word.append(i)
        # left multiplication by s_i swaps the values i and i+1
        perm[where[i]], perm[where[i + 1]] = i + 1, i


def longest_word(n: int) -> tuple[int, ...]:
    return canonical_word(tuple(range(n, 0, -1)))


# -- orbit and singular vectors ------------------------------------------------

def certify(word: Sequence[int], lam: Sequence, series: TruncatedSeries) -> SingularCertificate:
    lam = as_weight(lam)
    some = next(iter(series.terms), None)
    weight = weight_of(some, lam) if some is not None else ()
    return SingularCertificate(
        word=tuple(word),
        series=series,
        weight=weight,
        polynomial=is_polynomial(series),
        residual_norm_zero=residuals_vanish(check_pde(lam, series)),
    )


def orbit(lam: Sequence, policy: TruncationPolicy = DEFAULT_POLICY,
          budget: int = DEFAULT_ORBIT_BUDGET) -> list[SingularCertificate]:
    """Certificates for sigma(1), one per permutation, sorted by canonical word."""
    lam = as_weight(lam)
    n = len(lam) + 1
    if math.factorial(n) > budget:
        raise BudgetExceeded(f"{n}! = {math.factorial(n)} words exceeds the orbit budget {budget}")
    words = sorted(canonical_word(p) for p in itertools.permutations(range(1, n + 1)))
    return [certify(w, lam, evaluate_word(w, lam, policy)) for w in words]


def normalized(f: TruncatedSeries) -> TruncatedSeries:
    """Scale so the lexicographically smallest monomial has coefficient 1."""
    if f.is_zero():
        return f
    first = min(f.terms)
    return f * (1 / f.terms[first])


def singular_vectors(lam: Sequence, policy: TruncationPolicy = DEFAULT_POLICY,
                     budget: int = DEFAULT_ORBIT_BUDGET) -> list[SingularCertificate]:
    """Polynomial members of the orbit, one per proportionality class.

    Repeats are folded into ``duplicates`` of the first certificate of the class.
    """
    classes: dict[tuple, SingularCertificate] = {}
    for cert in orbit(lam, policy, budget):
        if not cert.polynomial:
            continue
        key = tuple(sorted(normalized(cert.series).terms.items()))
        if key in classes:
            first = classes[key]
            classes[key] = SingularCertificate(first.word, first.series, first.weight, first.polynomial,
                                               first.residual_norm_zero, first.duplicates + (cert.word,))
        else:
            classes[key] = cert
    return list(classes.values())


def mff_word(i: int, j: int) -> tuple[int, ...]:
    """The palindrome i, i+1, ..., j-1, j, j-1, ..., i."""
    return tuple(range(i, j)) + (j,) + tuple(range(j - 1, i - 1, -1))


def mff_vector(i: int, j: int, lam: Sequence,
               policy: TruncationPolicy = DEFAULT_POLICY) -> tuple[TruncatedSeries, bool]:
    lam = as_weight(lam)
    n = len(lam) + 1
    if not 1 <= i <= j <= n - 1:
        raise IndexError(f"need 1 <= i <= j <= {n - 1}, got i={i}, j={j}")
    f = evaluate_word(mff_word(i, j), lam, policy)
    return f, is_polynomial(f)


def is_positive_integer(x) -> bool:
    x = mpq(x)
    return x.denominator == 1 and x > 0


def is_irreducible(lam: Sequence) -> tuple[bool, list[tuple[int, int, mpq]]]:
    """Irreducibility of M_lambda, with every (i, j, value) that breaks it.

    ``value = j + lambda_i + ... + lambda_{i+j-1}`` for ``1 <= i <= n-1`` and
    ``1 <= j <= n-i``; the module is reducible iff some value is a positive
    integer.
    """
    lam = as_weight(lam)
    n = len(lam) + 1
    witnesses = []
    for i in range(1, n):
        for j in range(1, n - i + 1):
            value = j + sum(lam[i - 1:i - 1 + j], mpq(0))
            if is_positive_integer(value):
                witnesses.append((i, j, value))
    return not witnesses, witnesses
