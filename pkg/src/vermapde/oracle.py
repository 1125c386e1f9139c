"""Brute-force model of the Verma module M_lambda over its PBW basis.

Vectors are finite combinations of E^alpha v_lambda with
E^alpha = E_{2,1}^{a_{2,1}} E_{3,1}^{a_{3,1}} E_{3,2}^{a_{3,2}} E_{4,1}^{a_{4,1}} ...
Exponent vectors alpha are dense integer tuples in that same order, so
``tau`` is the identity on keys.  Singular vectors of a given root degree are
found as the exact common kernel of the raising operators on that weight
space.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from gmpy2 import mpq

from . import linalg
from .series import TruncatedSeries, as_rational, as_weight, is_polynomial, nvars, parse_rational, position, variables
from .weyl import BudgetExceeded

DEFAULT_MAX_DIMENSION = 2000

Alpha = tuple


def _check_index(i: int, n: int) -> None:
    if not 1 <= i <= n - 1:
        raise IndexError(f"generator index {i} out of range for n={n}")


@functools.lru_cache(maxsize=None)
def _contents(n: int) -> tuple[tuple[int, ...], ...]:
    # simple-root content of each negative root vector E_{i,j}: e_j + ... + e_{i-1}
    return tuple(tuple(1 if j <= k < i else 0 for k in range(1, n)) for i, j in variables(n))


def content(alpha: Alpha, n: int) -> tuple[int, ...]:
    return tuple(sum(a * c[k] for a, c in zip(alpha, _contents(n))) for k in range(n - 1))


@dataclass(frozen=True)
class VermaVector:
    n: int
    terms: Mapping  # alpha -> nonzero mpq

    @classmethod
    def make(cls, n: int, terms: Mapping) -> "VermaVector":
        return cls(n, {tuple(a): as_rational(c) for a, c in terms.items() if c != 0})

    @classmethod
    def highest(cls, n: int) -> "VermaVector":
        return cls(n, {(0,) * nvars(n): mpq(1)})

    @classmethod
    def basis_vector(cls, n: int, alpha: Mapping | Alpha) -> "VermaVector":
        if not isinstance(alpha, tuple):
            dense = [0] * nvars(n)
            for (i, j), a in alpha.items():
                dense[position(i, j)] = int(a)
            alpha = tuple(dense)
        return cls(n, {alpha: mpq(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "VermaVector") -> "VermaVector":
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms.get(a, 0) + c
        return VermaVector(self.n, {a: c for a, c in terms.items() if c})

    def __sub__(self, other: "VermaVector") -> "VermaVector":
        return self + other.scaled(-1)

    def scaled(self, c) -> "VermaVector":
        c = as_rational(c)
        return VermaVector(self.n, {a: v * c for a, v in self.terms.items()} if c else {})

    def degrees(self) -> set[tuple[int, ...]]:
        return {content(a, self.n) for a in self.terms}

    def to_json(self) -> dict:
        vs = variables(self.n)
        return {
            "terms": [
                {"alpha": {f"{v.row},{v.col}": int(a) for v, a in zip(vs, alpha) if a},
                 "coeff": str(self.terms[alpha])}
                for alpha in sorted(self.terms)
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping | str, n: int) -> "VermaVector":
        if isinstance(data, str):
            data = json.loads(data)
        terms: dict = {}
        for term in data["terms"]:
            dense = [0] * nvars(n)
            for key, a in term["alpha"].items():
                i, j = (int(x) for x in key.split(","))
                dense[position(i, j)] = int(a)
            terms[tuple(dense)] = terms.get(tuple(dense), 0) + parse_rational(term["coeff"])
        return cls.make(n, terms)


def enumerate_basis(n: int, k: Sequence[int]) -> list[Alpha]:
    """All PBW exponents of root degree ``k``, in lexicographic order."""
    k = tuple(int(x) for x in k)
    if len(k) != n - 1 or any(x < 0 for x in k):
        raise ValueError(f"bad root degree {k} for n={n}")
    cont = _contents(n)
    size = nvars(n)
    out: list[Alpha] = []

    # choose exponents from the last variable backwards; the variable (i, j)
    # touches slots j-1 .. i-2 of the remaining content
    def rec(p: int, remaining: tuple[int, ...], tail: tuple[int, ...]):
        if p < 0:
            if not any(remaining):
                out.append(tail)
            return
        c = cont[p]
        cap = min((remaining[s] for s in range(n - 1) if c[s]), default=0)
        for a in range(cap + 1):
            rec(p - 1, tuple(r - a * x for r, x in zip(remaining, c)), (a,) + tail)

    rec(size - 1, k, ())
    out.sort()
    return out


def lower(i: int, v: VermaVector) -> VermaVector:
    """E_{i+1,i} acting on a PBW combination."""
    n = v.n
    _check_index(i, n)
    target = position(i + 1, i)
    terms: dict = {}
    for alpha, c in v.terms.items():
        new = list(alpha)
        new[target] += 1
        key = tuple(new)
        terms[key] = terms.get(key, 0) + c
        for j in range(1, i):
            a = alpha[position(i, j)]
            if a:
                new = list(alpha)
                new[position(i + 1, j)] += 1
                new[position(i, j)] -= 1
                key = tuple(new)
                terms[key] = terms.get(key, 0) + c * a
    return VermaVector(n, {a: c for a, c in terms.items() if c})


def raise_(i: int, lam: Sequence, v: VermaVector) -> VermaVector:
    """E_{i,i+1} acting on a PBW combination."""
    n = v.n
    _check_index(i, n)
    lam = as_weight(lam)
    terms: dict = {}

    def put(alpha, moves, c):
        new = list(alpha)
        for p, s in moves:
            new[p] += s
        key = tuple(new)
        terms[key] = terms.get(key, 0) + c

    for alpha, c in v.terms.items():
        for j in range(1, i):
            a = alpha[position(i + 1, j)]
            if a:
                put(alpha, ((position(i, j), 1), (position(i + 1, j), -1)), c * a)
        for j in range(i + 2, n + 1):
            a = alpha[position(j, i)]
            if a:
                put(alpha, ((position(j, i + 1), 1), (position(j, i), -1)), -c * a)
        a = alpha[position(i + 1, i)]
        if a:
            factor = (lam[i - 1] + 1
                      - sum(alpha[position(j, i)] for j in range(i + 1, n + 1))
                      + sum(alpha[position(j, i + 1)] for j in range(i + 2, n + 1)))
            put(alpha, ((position(i + 1, i), -1),), c * a * factor)
    return VermaVector(n, {a: c for a, c in terms.items() if c})


def h_action(i: int, lam: Sequence, alpha: Alpha) -> mpq:
    """Eigenvalue of h_i on E^alpha v_lambda."""
    lam = as_weight(lam)
    n = len(lam) + 1
    _check_index(i, n)
    value = lam[i - 1]
    for p in range(1, i):
        value += alpha[position(i, p)] - alpha[position(i + 1, p)]
    for j in range(i + 2, n + 1):
        value += alpha[position(j, i + 1)] - alpha[position(j, i)]
    return value - 2 * alpha[position(i + 1, i)]


def raising_matrix(i: int, lam: Sequence, k: Sequence[int]) -> tuple[list[list[mpq]], list[Alpha], list[Alpha]]:
    """Matrix of E_{i,i+1} from weight space ``k`` to ``k - e_i`` (rows, source basis, target basis)."""
    lam = as_weight(lam)
    n = len(lam) + 1
    source = enumerate_basis(n, k)
    down = list(k)
    down[i - 1] -= 1
    target = enumerate_basis(n, down) if down[i - 1] >= 0 else []
    index = {b: r for r, b in enumerate(target)}
    rows = [[mpq(0)] * len(source) for _ in target]
    for col, alpha in enumerate(source):
        for beta, c in raise_(i, lam, VermaVector(n, {alpha: mpq(1)})).terms.items():
            rows[index[beta]][col] += c
    return rows, source, target


def singular_in_degree(lam: Sequence, k: Sequence[int],
                       max_dimension: int = DEFAULT_MAX_DIMENSION) -> list[VermaVector]:
    """Exact basis of the vectors of root degree ``k`` killed by every E_{i,i+1}."""
    lam = as_weight(lam)
    n = len(lam) + 1
    source = enumerate_basis(n, k)
    if len(source) > max_dimension:
        raise BudgetExceeded(f"weight space {tuple(k)} has dimension {len(source)} > {max_dimension}")
    rows: list[list[mpq]] = []
    for i in range(1, n):
        rows += raising_matrix(i, lam, k)[0]
    return [VermaVector(n, {a: c for a, c in zip(source, v) if c})
            for v in linalg.nullspace(rows, len(source))]


def degrees_up_to(n: int, max_total: int) -> list[tuple[int, ...]]:
    """All nonzero root degrees with total at most ``max_total``, by total then lexicographically."""
    out = []
    for total in range(1, max_total + 1):
        out += sorted(_compositions(total, n - 1), reverse=True)
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def search_singular(lam: Sequence, max_total: int,
                    max_dimension: int = DEFAULT_MAX_DIMENSION) -> list[tuple[tuple[int, ...], list[VermaVector]]]:
    """Every nonzero degree up to ``max_total`` holding a singular vector, with a kernel basis."""
    if max_total < 1:
        raise ValueError("max_total must be at least 1")
    lam = as_weight(lam)
    n = len(lam) + 1
    hits = []
    for k in degrees_up_to(n, max_total):
        basis = singular_in_degree(lam, k, max_dimension)
        if basis:
            hits.append((k, basis))
    return hits


def oracle_report(k: Sequence[int], basis: Sequence[VermaVector]) -> dict:
    return {"degree": list(k), "kernel_dim": len(basis), "basis": [v.to_json() for v in basis]}


def tau(v: VermaVector) -> TruncatedSeries:
    """E^alpha v_lambda -> x^alpha, coefficients unchanged."""
    n = v.n
    diag = {position(k + 1, k) for k in range(1, n)}
    terms = {tuple(mpq(a) if p in diag else int(a) for p, a in enumerate(alpha)): c
             for alpha, c in v.terms.items()}
    return TruncatedSeries(n, terms)


def tau_inverse(f: TruncatedSeries) -> VermaVector:
    if not is_polynomial(f):
        raise ValueError("tau_inverse needs an exact polynomial")
    return VermaVector(f.n, {tuple(int(x) for x in e): c for e, c in f.terms.items()})
