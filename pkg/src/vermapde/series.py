"""Exact sparse arithmetic on truncated-up power series in the variables x_{i,j}.

A series over rank ``n`` lives in the variables ``x_{i,j}`` with
``1 <= j < i <= n``.  The *diagonal* variables ``x_{k+1,k}`` may carry
arbitrary rational exponents; the *interior* variables (``j <= i-2``) carry
nonnegative integer exponents only.

Exponents are stored densely as tuples in the PBW order
``x_{2,1}, x_{3,1}, x_{3,2}, x_{4,1}, ...``.  Each series carries a
*frontier*: one lower bound per diagonal variable.  Terms whose exponent on
diagonal variable ``k`` is ``<= frontier[k]`` may be incomplete; every term
strictly above all frontiers is exact.  A frontier of ``-inf`` means nothing
was discarded in that direction.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from gmpy2 import mpq

NEG_INF = float("-inf")
_ONE = mpq(1)

Exponents = tuple
Weight = tuple  # (lambda_1, ..., lambda_{n-1}) as mpq rationals
WeightVector = tuple


class RankMismatch(ValueError):
    pass


class VarIndex(NamedTuple):
    row: int
    col: int

    @property
    def is_diagonal(self) -> bool:
        return self.col == self.row - 1

    def __str__(self) -> str:
        return f"x_{{{self.row},{self.col}}}"


@functools.lru_cache(maxsize=None)
def variables(n: int) -> tuple[VarIndex, ...]:
    """All variables of rank ``n`` in PBW order."""
    return tuple(VarIndex(i, j) for i in range(2, n + 1) for j in range(1, i))


def position(i: int, j: int) -> int:
    """Index of ``x_{i,j}`` inside a dense exponent tuple."""
    return (i - 1) * (i - 2) // 2 + j - 1


def diagonal_position(k: int) -> int:
    """Index of the diagonal variable ``x_{k+1,k}``."""
    return position(k + 1, k)


@functools.lru_cache(maxsize=None)
def diagonal_positions(n: int) -> tuple[int, ...]:
    return tuple(diagonal_position(k) for k in range(1, n))


def nvars(n: int) -> int:
    return n * (n - 1) // 2


def check_var(n: int, i: int, j: int) -> int:
    if not 1 <= j < i <= n:
        raise IndexError(f"x_{{{i},{j}}} is not a variable for n={n}")
    return position(i, j)


def as_rational(value):
    """Coerce to the exact rational scalar type (``gmpy2.mpq``)."""
    if type(value) is type(_ONE):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use Fraction or a 'p/q' string")
    if isinstance(value, str):
        return parse_rational(value)
    return mpq(value)


def parse_rational(text: str):
    """Parse ``"p"`` or ``"p/q"`` (optional sign); decimals are rejected."""
    text = text.strip()
    num, _, den = text.partition("/")
    try:
        value = mpq(int(num), int(den)) if den else mpq(int(num))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational: {text!r}") from None
    return value


def as_weight(values: Iterable) -> Weight:
    return tuple(as_rational(v) for v in values)


def is_dominant_integral(lam: Sequence) -> bool:
    return all(v.denominator == 1 and v >= 0 for v in map(as_rational, lam))


# -- frontier helpers ---------------------------------------------------------

def _fmax(a, b):
    return a if a >= b else b


def _frontier_max(fa: tuple, fb: tuple) -> tuple:
    return tuple(_fmax(a, b) for a, b in zip(fa, fb))


def _shift(bound, s):
    return bound if bound == NEG_INF else bound + s


def _frontier_str(bound) -> str:
    return "-inf" if bound == NEG_INF else str(bound)


def _frontier_parse(text: str):
    return NEG_INF if text == "-inf" else parse_rational(text)


# -- monomials ----------------------------------------------------------------

@dataclass(frozen=True)
class Monomial:
    """A nonzero rational multiple of ``prod x_{i,j}^{e_{i,j}}``."""

    coeff: mpq
    exps: Exponents

    def __post_init__(self):
        if self.coeff == 0:
            raise ValueError("monomial coefficient must be nonzero")

    @property
    def n(self) -> int:
        m, n = len(self.exps), 1
        while n * (n - 1) // 2 < m:
            n += 1
        return n

    def exps_map(self) -> dict[VarIndex, mpq]:
        """Sparse view: only nonzero exponents appear."""
        return {v: e for v, e in zip(variables(self.n), self.exps) if e != 0}


def make_exponents(n: int, exps: Mapping | None = None) -> Exponents:
    """Dense exponent tuple from a ``{(i, j): e}`` mapping."""
    dense: list = [0] * nvars(n)
    diag = set(diagonal_positions(n))
    for (i, j), e in (exps or {}).items():
        p = check_var(n, i, j)
        e = as_rational(e)
        if p in diag:
            dense[p] = e
        else:
            if e.denominator != 1 or e < 0:
                raise ValueError(f"interior exponent of x_{{{i},{j}}} must be a nonnegative integer, got {e}")
            dense[p] = int(e)
    for p in diag:
        dense[p] = mpq(dense[p])
    return tuple(dense)


@functools.lru_cache(maxsize=None)
def _weight_table(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    # row i-1: (position, coefficient) pairs of the h_i eigenvalue formula
    table = []
    for i in range(1, n):
        row = []
        for p in range(1, i):
            row.append((position(i, p), 1))
            row.append((position(i + 1, p), -1))
        for j in range(i + 2, n + 1):
            row.append((position(j, i + 1), 1))
            row.append((position(j, i), -1))
        row.append((position(i + 1, i), -2))
        table.append(tuple(row))
    return tuple(table)


def weight_of(m: Monomial | Exponents, lam: Sequence) -> WeightVector:
    """Eigenvalues of ``zeta_1, ..., zeta_{n-1}`` on a monomial."""
    exps = m.exps if isinstance(m, Monomial) else m
    n = len(lam) + 1
    if len(exps) != nvars(n):
        raise RankMismatch(f"monomial has {len(exps)} exponents, weight has length {len(lam)}")
    return tuple(
        as_rational(lam[i]) + sum(c * exps[p] for p, c in row)
        for i, row in enumerate(_weight_table(n))
    )


# -- series -------------------------------------------------------------------

class TruncatedSeries:
    """Immutable finite sum of monomials plus a truncation frontier.

    ``terms`` maps dense exponent tuples to nonzero rationals.  The
    constructor drops zero coefficients and anything below the frontier, so
    every instance is canonical.
    """

    __slots__ = ("n", "terms", "frontier")

    def __init__(self, n: int, terms: Mapping | None = None, frontier: Sequence | None = None):
        if n < 2:
            raise ValueError("rank n must be at least 2")
        frontier = tuple(NEG_INF for _ in range(n - 1)) if frontier is None else tuple(frontier)
        if len(frontier) != n - 1:
            raise RankMismatch("frontier length must be n-1")
        clean = {}
        size = nvars(n)
        for exps, c in (terms or {}).items():
            if len(exps) != size:
                raise RankMismatch(f"exponent tuple {exps} does not match n={n}")
            if c != 0:
                clean[exps] = c
        self._init(n, clean, frontier)

    def _init(self, n, terms, frontier):
        if any(f != NEG_INF for f in frontier):
            diag = diagonal_positions(n)
            live = [(p, f) for p, f in zip(diag, frontier) if f != NEG_INF]
            terms = {e: c for e, c in terms.items() if all(e[p] >= f for p, f in live)}
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "frontier", frontier)

    @classmethod
    def _raw(cls, n: int, terms: dict, frontier: tuple) -> "TruncatedSeries":
        # terms must already be free of zeros and correctly sized
        obj = cls.__new__(cls)
        obj._init(n, terms, frontier)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # construction helpers

    @classmethod
    def zero(cls, n: int) -> "TruncatedSeries":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "TruncatedSeries":
        return cls.monomial(n, {})

    @classmethod
    def monomial(cls, n: int, exps: Mapping | None = None, coeff=1) -> "TruncatedSeries":
        return cls(n, {make_exponents(n, exps): as_rational(coeff)})

    @classmethod
    def variable(cls, n: int, i: int, j: int, power=1) -> "TruncatedSeries":
        return cls.monomial(n, {(i, j): power})

    @classmethod
    def from_terms(cls, n: int, pairs: Iterable, frontier: Sequence | None = None) -> "TruncatedSeries":
        """Build from ``(coeff, {(i, j): e})`` pairs, summing repeated monomials."""
        acc: dict = {}
        for coeff, exps in pairs:
            key = make_exponents(n, exps)
            acc[key] = acc.get(key, 0) + as_rational(coeff)
        return cls(n, acc, frontier)

    # basic queries

    @property
    def exact(self) -> bool:
        return all(f == NEG_INF for f in self.frontier)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def monomials(self) -> list[Monomial]:
        """Terms in canonical (lexicographic exponent) order."""
        return [Monomial(self.terms[e], e) for e in sorted(self.terms)]

    def coefficient(self, exps: Mapping | Exponents) -> mpq:
        key = exps if isinstance(exps, tuple) else make_exponents(self.n, exps)
        return self.terms.get(key, mpq(0))

    def max_diagonal_exponent(self, k: int):
        if not self.terms:
            return NEG_INF
        p = diagonal_position(k)
        return max(e[p] for e in self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.n == other.n and self.frontier == other.frontier and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return f"TruncatedSeries(n={self.n}, {self})"

    def __str__(self) -> str:
        return format_series(self)

    # arithmetic

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return add(self, other)
        return add(self, TruncatedSeries.monomial(self.n, {}, other)) if other != 0 else self

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return multiply(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    # serialization

    def to_json(self) -> dict:
        vs = variables(self.n)
        return {
            "terms": [
                {
                    "coeff": str(m.coeff),
                    "exps": {f"{v.row},{v.col}": str(e) for v, e in zip(vs, m.exps) if e != 0},
                }
                for m in self.monomials()
            ],
            "frontier": {str(k): _frontier_str(f) for k, f in enumerate(self.frontier, start=1)},
            "exact": self.exact,
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "TruncatedSeries":
        if isinstance(data, str):
            data = json.loads(data)
        frontier_map = data["frontier"]
        n = len(frontier_map) + 1
        frontier = tuple(_frontier_parse(frontier_map[str(k)]) for k in range(1, n))
        pairs = []
        for term in data["terms"]:
            exps = {tuple(int(x) for x in key.split(",")): parse_rational(v) for key, v in term["exps"].items()}
            pairs.append((parse_rational(term["coeff"]), exps))
        out = cls.from_terms(n, pairs, frontier)
        if out.exact != bool(data["exact"]):
            raise ValueError("'exact' flag disagrees with frontier")
        return out


def _same_rank(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.n != b.n:
        raise RankMismatch(f"rank mismatch: {a.n} vs {b.n}")


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _same_rank(a, b)
    if len(a.terms) < len(b.terms):
        a, b = b, a
    terms = dict(a.terms)
    for e, c in b.terms.items():
        s = terms.get(e)
        if s is None:
            terms[e] = c
        else:
            s += c
            if s:
                terms[e] = s
            else:
                del terms[e]
    return TruncatedSeries._raw(a.n, terms, _frontier_max(a.frontier, b.frontier))


def series_sum(parts: Iterable[TruncatedSeries], n: int) -> TruncatedSeries:
    """Sum of many series; the frontier is the maximum over all parts."""
    terms: dict = {}
    frontier = tuple(NEG_INF for _ in range(n - 1))
    for part in parts:
        if part.n != n:
            raise RankMismatch(f"rank mismatch: {part.n} vs {n}")
        frontier = _frontier_max(frontier, part.frontier)
        for e, c in part.terms.items():
            terms[e] = terms.get(e, 0) + c
    return TruncatedSeries._raw(n, {e: c for e, c in terms.items() if c}, frontier)


def scale(f: TruncatedSeries, c) -> TruncatedSeries:
    c = as_rational(c)
    if c == 0:
        return TruncatedSeries._raw(f.n, {}, f.frontier)
    return TruncatedSeries._raw(f.n, {e: v * c for e, v in f.terms.items()}, f.frontier)


def multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Distributed product.

    If one factor is truncated, the other must be exact: its discarded tail
    is shifted by the largest diagonal exponents of the exact factor.
    """
    _same_rank(a, b)
    n = a.n
    if not a.exact and not b.exact:
        raise ValueError("product of two truncated series has no sound frontier")
    if not a.exact:
        a, b = b, a
    # a is exact here
    if not a.terms:
        return TruncatedSeries._raw(n, {}, tuple(NEG_INF for _ in range(n - 1)))
    frontier = tuple(_shift(f, a.max_diagonal_exponent(k)) for k, f in enumerate(b.frontier, start=1))
    terms: dict = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            terms[e] = terms.get(e, 0) + ca * cb
    return TruncatedSeries._raw(n, {e: c for e, c in terms.items() if c}, frontier)


def multiply_monomial(f: TruncatedSeries, exps: Exponents, coeff=1) -> TruncatedSeries:
    """``coeff * x^exps * f`` with ``exps`` a dense tuple."""
    coeff = as_rational(coeff)
    if coeff == 0:
        return TruncatedSeries._raw(f.n, {}, f.frontier)
    diag = diagonal_positions(f.n)
    frontier = tuple(_shift(fr, exps[p]) for fr, p in zip(f.frontier, diag))
    shifts = [(p, s) for p, s in enumerate(exps) if s != 0]
    if not shifts:
        terms = {e: c * coeff for e, c in f.terms.items()} if coeff != 1 else dict(f.terms)
    elif len(shifts) == 1:
        (p, s), = shifts
        terms = {e[:p] + (e[p] + s,) + e[p + 1:]: c * coeff for e, c in f.terms.items()}
    else:
        terms = {}
        for e, c in f.terms.items():
            new = list(e)
            for p, s in shifts:
                new[p] += s
            terms[tuple(new)] = c * coeff
    return TruncatedSeries._raw(f.n, terms, frontier)


def derivative(v: tuple[int, int], f: TruncatedSeries) -> TruncatedSeries:
    """Partial derivative in ``x_v``; the power rule holds for rational exponents."""
    return mul_derivative(None, v, f)


def mul_derivative(up: tuple[int, int] | None, down: tuple[int, int], f: TruncatedSeries,
                   coeff=1) -> TruncatedSeries:
    """``coeff * x_up * d/dx_down (f)``; ``up=None`` skips the multiplication."""
    n = f.n
    pd = check_var(n, *down)
    pu = None if up is None else check_var(n, *up)
    coeff = as_rational(coeff)
    frontier = list(f.frontier)
    if down[1] == down[0] - 1:
        frontier[down[1] - 1] = _shift(frontier[down[1] - 1], -1)
    if up is not None and up[1] == up[0] - 1:
        frontier[up[1] - 1] = _shift(frontier[up[1] - 1], 1)
    terms: dict = {}
    if coeff:
        for e, c in f.terms.items():
            k = e[pd]
            if k == 0:
                continue
            new = list(e)
            new[pd] = k - 1
            if pu is not None:
                new[pu] += 1
            key = tuple(new)
            terms[key] = terms.get(key, 0) + c * k * coeff
    return TruncatedSeries._raw(n, {e: c for e, c in terms.items() if c}, tuple(frontier))


def euler(v: tuple[int, int], f: TruncatedSeries, coeff=1) -> TruncatedSeries:
    """``coeff * x_v d/dx_v (f)``: scales each term by its exponent on ``x_v``."""
    p = check_var(f.n, *v)
    coeff = as_rational(coeff)
    terms = {e: c * e[p] * coeff for e, c in f.terms.items() if e[p] != 0}
    return TruncatedSeries._raw(f.n, {e: c for e, c in terms.items() if c}, f.frontier)


def is_polynomial(f: TruncatedSeries) -> bool:
    if not f.exact:
        return False
    for e in f.terms:
        for x in e:
            if x < 0 or x.denominator != 1:
                return False
    return True


def _above(e: Exponents, diag: tuple[int, ...], frontier: tuple) -> bool:
    return all(e[p] > f for p, f in zip(diag, frontier))


def agrees_above_frontier(a: TruncatedSeries, b: TruncatedSeries) -> bool:
    """True iff ``a`` and ``b`` coincide on every term strictly above both frontiers."""
    _same_rank(a, b)
    frontier = _frontier_max(a.frontier, b.frontier)
    diag = diagonal_positions(a.n)
    diff = add(a, scale(b, -1))
    return not any(_above(e, diag, frontier) for e in diff.terms)


def comparison_support(a: TruncatedSeries, b: TruncatedSeries) -> int:
    """Number of distinct monomials of ``a`` or ``b`` inside the compared region."""
    frontier = _frontier_max(a.frontier, b.frontier)
    diag = diagonal_positions(a.n)
    return sum(1 for e in set(a.terms) | set(b.terms) if _above(e, diag, frontier))


def equal_or_agree(a: TruncatedSeries, b: TruncatedSeries) -> bool:
    """Exact equality when both sides are exact, agreement above frontier otherwise."""
    if a.exact and b.exact:
        return a.terms == b.terms
    return agrees_above_frontier(a, b)


# -- rendering ----------------------------------------------------------------

def _format_monomial(exps: Exponents, n: int, latex: bool) -> str:
    parts = []
    for v, e in zip(variables(n), exps):
        if e == 0:
            continue
        name = f"x_{{{v.row},{v.col}}}" if latex else f"x{v.row}{v.col}" if n < 10 else f"x[{v.row},{v.col}]"
        if e == 1:
            parts.append(name)
        elif latex:
            parts.append(f"{name}^{{{e}}}")
        elif e > 0 and e.denominator == 1:
            parts.append(f"{name}^{e}")
        else:
            parts.append(f"{name}^({e})")
    return (" " if latex else "*").join(parts)


def _format(f: TruncatedSeries, latex: bool) -> str:
    if not f.terms:
        body = "0"
    else:
        pieces = []
        for m in f.monomials():
            mono = _format_monomial(m.exps, f.n, latex)
            c = m.coeff
            sign = "-" if c < 0 else "+"
            c = abs(c)
            if not mono:
                text = str(c) if not latex or c.denominator == 1 else rf"\frac{{{c.numerator}}}{{{c.denominator}}}"
            elif c == 1:
                text = mono
            elif latex:
                cs = str(c) if c.denominator == 1 else rf"\frac{{{c.numerator}}}{{{c.denominator}}}"
                text = f"{cs} {mono}"
            else:
                text = f"{c}*{mono}"
            pieces.append((sign, text))
        body = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, text in pieces[1:]:
            body += f" {sign} {text}"
    if not f.exact:
        if latex:
            body += r" + \cdots"
        else:
            bounds = ", ".join(f"{k}:{_frontier_str(b)}" for k, b in enumerate(f.frontier, start=1)
                               if b != NEG_INF)
            body += f" + O(frontier {bounds})"
    return body


def format_series(f: TruncatedSeries) -> str:
    return _format(f, latex=False)


def latex_series(f: TruncatedSeries) -> str:
    return _format(f, latex=True)
