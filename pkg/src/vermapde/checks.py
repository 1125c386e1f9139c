"""Randomised identity suites for the operators and the symmetric-group action.

Each suite returns a :class:`CheckResult`.  A case passes when both sides are
equal exactly (both exact) or agree above the joint frontier; when the
expected side is nonzero the compared region must also be nonempty, so a
truncation that swallows everything counts as a failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from gmpy2 import mpq

from . import weyl
from .operators import (
    DEFAULT_POLICY,
    TruncationPolicy,
    apply_d,
    apply_eta,
    apply_eta_power,
    apply_zeta,
    cartan_matrix,
)
from .series import TruncatedSeries, as_weight, comparison_support, equal_or_agree, make_exponents, variables

DEFAULT_SEED = 20240601

_DENOMINATORS = (2, 3, 4, 5, 7)


@dataclass
class CheckResult:
    name: str
    n: int
    cases: int = 0
    passed: int = 0
    exact: int = 0
    truncated: int = 0
    skipped: str | None = None
    first_failure: str | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return self.skipped is not None or self.passed == self.cases

    def record(self, lhs: TruncatedSeries, rhs: TruncatedSeries, context: str,
               require_exact: bool = False) -> bool:
        self.cases += 1
        both_exact = lhs.exact and rhs.exact
        if both_exact:
            self.exact += 1
        else:
            self.truncated += 1
        good = equal_or_agree(lhs, rhs) and (both_exact or not require_exact)
        if good and not both_exact and not rhs.is_zero():
            good = comparison_support(lhs, rhs) > 0
        if good:
            self.passed += 1
        elif self.first_failure is None:
            self.first_failure = context
        return good

    def line(self) -> str:
        if self.skipped:
            return f"SKIP {self.name} (n={self.n}): {self.skipped}"
        status = "PASS" if self.ok else "FAIL"
        text = (f"{status} {self.name} (n={self.n}): {self.passed}/{self.cases} cases "
                f"[{self.exact} exact, {self.truncated} above frontier]")
        if not self.ok:
            text += f"; first failure: {self.first_failure}"
        return text


# -- random inputs ------------------------------------------------------------

def random_rational(rng: random.Random, integer: bool | None = None, low: int = -3, high: int = 3) -> mpq:
    if integer is None:
        integer = rng.random() < 0.5
    if integer:
        return mpq(rng.randint(low, high))
    q = rng.choice(_DENOMINATORS)
    while True:
        p = rng.randint(low * q, high * q)
        if p % q:
            return mpq(p, q)


def random_weight(rng: random.Random, n: int, dominant: bool = False) -> tuple:
    if dominant:
        return tuple(mpq(rng.randint(0, 3)) for _ in range(n - 1))
    return tuple(random_rational(rng) for _ in range(n - 1))


def random_monomial(rng: random.Random, n: int, polynomial: bool = False, coeff=None) -> TruncatedSeries:
    exps = {}
    for v in variables(n):
        if v.is_diagonal:
            exps[v] = mpq(rng.randint(0, 3)) if polynomial else random_rational(rng, low=-2, high=3)
        else:
            exps[v] = rng.randint(0, 1)
    c = coeff if coeff is not None else random_rational(rng, low=-4, high=4) or mpq(1)
    return TruncatedSeries(n, {make_exponents(n, exps): c})


def random_series(rng: random.Random, n: int, polynomial: bool = False, max_terms: int = 3) -> TruncatedSeries:
    out = TruncatedSeries.zero(n)
    for _ in range(rng.randint(1, max_terms)):
        out = out + random_monomial(rng, n, polynomial)
    return out if not out.is_zero() else TruncatedSeries.one(n)


def random_weighted(rng: random.Random, n: int, polynomial: bool = False) -> TruncatedSeries:
    """A weighted series: a monomial, possibly pushed through eta_j^k with k in {1, 2}."""
    f = random_monomial(rng, n, polynomial)
    if rng.random() < 0.5:
        f = apply_eta_power(rng.randint(1, n - 1), rng.randint(1, 2), f)
    return f


def _fmt(*items) -> str:
    return ", ".join(str(x) for x in items)


# -- operator identities ----------------------------------------------------------

def check_sl2_triples(rng: random.Random, n: int, lam: Sequence | None = None, cases: int = 50) -> CheckResult:
    """[d_i, eta_j] = delta_ij zeta_i on random polynomials."""
    res = CheckResult("sl2 triple [d_i, eta_j] = delta_ij zeta_i", n)
    for _ in range(cases):
        w = as_weight(lam) if lam is not None else random_weight(rng, n)
        i, j = rng.randint(1, n - 1), rng.randint(1, n - 1)
        if rng.random() < 0.5:
            j = i
        f = random_series(rng, n)
        lhs = apply_d(i, w, apply_eta(j, f)) - apply_eta(j, apply_d(i, w, f))
        rhs = apply_zeta(i, w, f) if i == j else TruncatedSeries.zero(n)
        res.record(lhs, rhs, _fmt(f"i={i}", f"j={j}", f"lam={w}", f"f={f}"))
    return res


def check_d_eta_power(rng: random.Random, n: int, lam: Sequence | None = None, cases: int = 100,
                      policy: TruncationPolicy = DEFAULT_POLICY) -> CheckResult:
    """[d_l, eta_i^a] = a delta_il eta_i^(a-1) ((1-a) + zeta_i)."""
    res = CheckResult("[d_l, eta_i^a] = a delta eta_i^(a-1)(1 - a + zeta_i)", n)
    for k in range(cases):
        w = as_weight(lam) if lam is not None else random_weight(rng, n)
        i, l = rng.randint(1, n - 1), rng.randint(1, n - 1)
        if rng.random() < 0.5:
            l = i
        a = random_rational(rng, integer=(k % 2 == 0))
        f = random_series(rng, n)
        lhs = apply_d(l, w, apply_eta_power(i, a, f, policy)) - apply_eta_power(i, a, apply_d(l, w, f), policy)
        if i == l:
            inner = f * (1 - a) + apply_zeta(i, w, f)
            rhs = apply_eta_power(i, a - 1, inner, policy) * a
        else:
            rhs = TruncatedSeries.zero(n)
        res.record(lhs, rhs, _fmt(f"i={i}", f"l={l}", f"a={a}", f"lam={w}", f"f={f}"))
    return res


def check_zeta_eta_power(rng: random.Random, n: int, lam: Sequence | None = None, cases: int = 100,
                         policy: TruncationPolicy = DEFAULT_POLICY) -> CheckResult:
    """[zeta_l, eta_i^a] = -a a_{l,i} eta_i^a."""
    res = CheckResult("[zeta_l, eta_i^a] = -a a_li eta_i^a", n)
    cartan = cartan_matrix(n)
    for k in range(cases):
        w = as_weight(lam) if lam is not None else random_weight(rng, n)
        i, l = rng.randint(1, n - 1), rng.randint(1, n - 1)
        a = random_rational(rng, integer=(k % 2 == 0))
        f = random_series(rng, n)
        power = apply_eta_power(i, a, f, policy)
        lhs = apply_zeta(l, w, power) - apply_eta_power(i, a, apply_zeta(l, w, f), policy)
        rhs = power * (-a * cartan[l - 1][i - 1])
        res.record(lhs, rhs, _fmt(f"i={i}", f"l={l}", f"a={a}", f"lam={w}", f"f={f}"))
    return res


def check_eta_braid(rng: random.Random, n: int, cases: int = 100,
                    policy: TruncationPolicy = DEFAULT_POLICY) -> CheckResult:
    """eta_i^a1 eta_{i+1}^(a1+a2) eta_i^a2 = eta_{i+1}^a2 eta_i^(a1+a2) eta_{i+1}^a1."""
    res = CheckResult("eta braid relation", n)
    if n < 3:
        res.skipped = "needs two adjacent generators (n >= 3)"
        return res
    for k in range(cases):
        i = rng.randint(1, n - 2)
        a1 = random_rational(rng, integer=(k % 2 == 0))
        a2 = random_rational(rng, integer=(k % 4 < 2))
        f = random_monomial(rng, n) if rng.random() < 0.7 else random_series(rng, n, max_terms=2)
        ep = apply_eta_power
        lhs = ep(i, a1, ep(i + 1, a1 + a2, ep(i, a2, f, policy), policy), policy)
        rhs = ep(i + 1, a2, ep(i, a1 + a2, ep(i + 1, a1, f, policy), policy), policy)
        res.record(lhs, rhs, _fmt(f"i={i}", f"a1={a1}", f"a2={a2}", f"f={f}"))
    return res


def check_power_group(rng: random.Random, n: int, cases: int = 100,
                      policy: TruncationPolicy = DEFAULT_POLICY) -> CheckResult:
    """eta_i^a1 eta_i^a2 = eta_i^(a1+a2); every other case uses a2 = -a1."""
    res = CheckResult("eta_i^a1 eta_i^a2 = eta_i^(a1+a2)", n)
    for k in range(cases):
        i = rng.randint(1, n - 1)
        a1 = random_rational(rng, integer=(k % 4 < 2))
        a2 = -a1 if k % 2 else random_rational(rng)
        f = random_series(rng, n)
        lhs = apply_eta_power(i, a1, apply_eta_power(i, a2, f, policy), policy)
        rhs = apply_eta_power(i, a1 + a2, f, policy)
        res.record(lhs, rhs, _fmt(f"i={i}", f"a1={a1}", f"a2={a2}", f"f={f}"))
    return res


def check_far_commutation(rng: random.Random, n: int, cases: int = 100,
                          policy: TruncationPolicy = DEFAULT_POLICY) -> CheckResult:
    """eta_r^a eta_s^b = eta_s^b eta_r^a for |r - s| >= 2."""
    res = CheckResult("eta far commutation", n)
    pairs = [(r, s) for r in range(1, n) for s in range(1, n) if abs(r - s) >= 2]
    if not pairs:
        res.skipped = "no generators at distance >= 2 (n < 4)"
        return res
    for k in range(cases):
        r, s = rng.choice(pairs)
        a = random_rational(rng, integer=(k % 2 == 0))
        b = random_rational(rng)
        f = random_series(rng, n)
        lhs = apply_eta_power(r, a, apply_eta_power(s, b, f, policy), policy)
        rhs = apply_eta_power(s, b, apply_eta_power(r, a, f, policy), policy)
        res.record(lhs, rhs, _fmt(f"r={r}", f"s={s}", f"a={a}", f"b={b}", f"f={f}"))
    return res


def check_zeta_commute(rng: random.Random, n: int, lam: Sequence | None = None, cases: int = 50) -> CheckResult:
    res = CheckResult("[zeta_i, zeta_j] = 0", n)
    for _ in range(cases):
        w = as_weight(lam) if lam is not None else random_weight(rng, n)
        i, j = rng.randint(1, n - 1), rng.randint(1, n - 1)
        f = random_series(rng, n)
        lhs = apply_zeta(i, w, apply_zeta(j, w, f))
        rhs = apply_zeta(j, w, apply_zeta(i, w, f))
        res.record(lhs, rhs, _fmt(f"i={i}", f"j={j}", f"lam={w}", f"f={f}"))
    return res


# -- symmetric group ------------------------------------------------------------------

def _sigma_inputs(rng: random.Random, n: int, lam: Sequence | None, k: int,
                  dominant: bool) -> tuple[tuple, TruncatedSeries]:
    """A weight and a weighted input.

    ``dominant`` draws a dominant integral weight and a scaled member of the
    orbit of 1, on which every sigma is a finite computation.  Otherwise even
    cases use a dominant weight, odd cases a non-integral one, and every third
    input is polynomial.
    """
    if lam is not None:
        w = as_weight(lam)
    elif dominant or k % 2 == 0:
        w = random_weight(rng, n, dominant=True)
    else:
        w = tuple(random_rational(rng, integer=False) for _ in range(n - 1))
    if dominant:
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        coeff = random_rational(rng, low=1, high=4)
        return w, weyl.evaluate_word(weyl.canonical_word(perm), w) * coeff
    return w, random_weighted(rng, n, polynomial=k % 3 == 0)


def _suffix(dominant: bool) -> str:
    return " [dominant, orbit input, exact]" if dominant else ""


def check_sigma_involution(rng: random.Random, n: int, lam: Sequence | None = None, cases: int = 50,
                           policy: TruncationPolicy = DEFAULT_POLICY, dominant: bool = False) -> CheckResult:
    res = CheckResult("sigma_i^2 = id" + _suffix(dominant), n)
    for k in range(cases):
        w, f = _sigma_inputs(rng, n, lam, k, dominant)
        i = rng.randint(1, n - 1)
        lhs = weyl.apply_sigma(i, w, weyl.apply_sigma(i, w, f, policy), policy)
        res.record(lhs, f, _fmt(f"i={i}", f"lam={w}", f"f={f}"), require_exact=dominant)
    return res


def check_sigma_braid(rng: random.Random, n: int, lam: Sequence | None = None, cases: int = 50,
                      policy: TruncationPolicy = DEFAULT_POLICY, dominant: bool = False) -> CheckResult:
    res = CheckResult("sigma_i sigma_{i+1} sigma_i = sigma_{i+1} sigma_i sigma_{i+1}" + _suffix(dominant), n)
    if n < 3:
        res.skipped = "needs two adjacent generators (n >= 3)"
        return res
    for k in range(cases):
        w, f = _sigma_inputs(rng, n, lam, k, dominant)
        i = rng.randint(1, n - 2)
        s = weyl.apply_sigma
        lhs = s(i, w, s(i + 1, w, s(i, w, f, policy), policy), policy)
        rhs = s(i + 1, w, s(i, w, s(i + 1, w, f, policy), policy), policy)
        res.record(lhs, rhs, _fmt(f"i={i}", f"lam={w}", f"f={f}"), require_exact=dominant)
    return res


def check_sigma_far_commutation(rng: random.Random, n: int, lam: Sequence | None = None, cases: int = 50,
                                policy: TruncationPolicy = DEFAULT_POLICY, dominant: bool = False) -> CheckResult:
    res = CheckResult("sigma_r sigma_s = sigma_s sigma_r, |r-s| >= 2" + _suffix(dominant), n)
    pairs = [(r, s) for r in range(1, n) for s in range(1, n) if abs(r - s) >= 2]
    if not pairs:
        res.skipped = "no generators at distance >= 2 (n < 4)"
        return res
    for k in range(cases):
        w, f = _sigma_inputs(rng, n, lam, k, dominant)
        r, s = rng.choice(pairs)
        lhs = weyl.apply_sigma(r, w, weyl.apply_sigma(s, w, f, policy), policy)
        rhs = weyl.apply_sigma(s, w, weyl.apply_sigma(r, w, f, policy), policy)
        res.record(lhs, rhs, _fmt(f"r={r}", f"s={s}", f"lam={w}", f"f={f}"), require_exact=dominant)
    return res


def random_reduced_word(rng: random.Random, word: Sequence[int], moves: int = 20) -> tuple[int, ...]:
    """Walk the braid graph from ``word`` by random commutation and braid moves."""
    word = list(word)
    for _ in range(rng.randint(1, moves)):
        options = []
        for p in range(len(word) - 1):
            if abs(word[p] - word[p + 1]) >= 2:
                options.append(("swap", p))
        for p in range(len(word) - 2):
            a, b, c = word[p:p + 3]
            if a == c and abs(a - b) == 1:
                options.append(("braid", p))
        if not options:
            break
        kind, p = rng.choice(options)
        if kind == "swap":
            word[p], word[p + 1] = word[p + 1], word[p]
        else:
            a, b = word[p], word[p + 1]
            word[p:p + 3] = [b, a, b]
    return tuple(word)


def check_word_independence(rng: random.Random, n: int, lam: Sequence | None = None, cases: int = 50,
                            policy: TruncationPolicy = DEFAULT_POLICY, dominant: bool = False) -> CheckResult:
    """sigma(1) for the longest element does not depend on the reduced word."""
    res = CheckResult("longest element word independence" + _suffix(dominant), n)
    if n < 3:
        res.skipped = "the longest element has a single reduced word (n = 2)"
        return res
    canonical = weyl.longest_word(n)
    cache: dict = {}
    for k in range(cases):
        w, _ = _sigma_inputs(rng, n, lam, k, dominant)
        other = canonical
        while other == canonical:
            other = random_reduced_word(rng, canonical)
        key = (w, canonical)
        if key not in cache:
            cache[key] = weyl.evaluate_word(canonical, w, policy)
        lhs = cache[key]
        rhs = weyl.evaluate_word(other, w, policy)
        res.record(lhs, rhs, _fmt(f"words={canonical}/{other}", f"lam={w}"), require_exact=dominant)
    return res


def check_solutions(rng: random.Random, n: int, lam: Sequence | None = None, cases: int = 3,
                    policy: TruncationPolicy = DEFAULT_POLICY) -> CheckResult:
    """Every sigma(1) solves the system; polynomial ones exactly."""
    res = CheckResult("sigma(1) solves d_i z = 0", n)
    weights = [as_weight(lam)] if lam is not None else [random_weight(rng, n, dominant=(k % 2 == 0))
                                                         for k in range(cases)]
    for w in weights:
        for cert in weyl.orbit(w, policy):
            res.cases += 1
            ok = cert.residual_norm_zero and (not cert.polynomial or cert.series.exact)
            if cert.series.exact:
                res.exact += 1
            else:
                res.truncated += 1
            if ok:
                res.passed += 1
            elif res.first_failure is None:
                res.first_failure = _fmt(f"word={cert.word}", f"lam={w}")
    return res


SuiteFn = Callable[..., CheckResult]


def run_suite(n: int, lam: Sequence | None = None, seed: int = DEFAULT_SEED,
              policy: TruncationPolicy = DEFAULT_POLICY, scale: float = 1.0) -> list[CheckResult]:
    """All identity checks at rank ``n``; ``scale`` multiplies the case counts."""
    rng = random.Random(seed)

    def c(count: int) -> int:
        return max(1, int(count * scale))

    return [
        check_sl2_triples(rng, n, lam, cases=c(50)),
        check_zeta_commute(rng, n, lam, cases=c(50)),
        check_d_eta_power(rng, n, lam, cases=c(100), policy=policy),
        check_zeta_eta_power(rng, n, lam, cases=c(100), policy=policy),
        check_eta_braid(rng, n, cases=c(100), policy=policy),
        check_power_group(rng, n, cases=c(100), policy=policy),
        check_far_commutation(rng, n, cases=c(100), policy=policy),
        check_sigma_involution(rng, n, lam, cases=c(50), policy=policy),
        check_sigma_braid(rng, n, lam, cases=c(50), policy=policy),
        check_sigma_far_commutation(rng, n, lam, cases=c(50), policy=policy),
        check_word_independence(rng, n, lam, cases=c(10), policy=policy),
        check_solutions(rng, n, lam, cases=c(3), policy=policy),
    ]
