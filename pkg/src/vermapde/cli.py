"""Command-line entry point.

    vermapde singular --weight 1,1
    vermapde orbit --weight 1/2,1/3 --word 1,2,1
    vermapde oracle --weight 1,1 --max-degree 8
    vermapde irreducible --weight -1/2,-1/2
    vermapde verify --n 4 --weight 1,1,1

Exit codes: 0 success, 1 negative verdict (reducible module, oracle mismatch,
failed identity), 2 bad input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from . import checks, linalg, oracle, weyl
from .operators import TruncationPolicy
from .series import TruncatedSeries, format_series, latex_series, parse_rational
from .weyl import BudgetExceeded

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

FORMATS = ("text", "json", "latex")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    n: int
    weight: tuple | None
    depth: int = 24
    max_degree: int = 8
    format: str = "text"
    seed: int = checks.DEFAULT_SEED
    word: tuple[int, ...] | None = None

    @property
    def policy(self) -> TruncationPolicy:
        return TruncationPolicy(self.depth)


def parse_weight(text: str) -> tuple:
    """``"3,1/2,-2"`` -> exact rationals; decimals are rejected."""
    parts = [p.strip() for p in text.split(",")]
    if not text.strip() or any(not p for p in parts):
        raise UsageError(f"empty entry in weight {text!r}")
    try:
        return tuple(parse_rational(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad weight {text!r}: {exc}") from None


def parse_word(text: str) -> tuple[int, ...]:
    if not text.strip():
        return ()
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"bad word {text!r}: expected comma-separated generator indices") from None


def make_config(args: argparse.Namespace) -> RunConfig:
    weight = parse_weight(args.weight) if args.weight is not None else None
    n = args.n
    if weight is not None:
        if n is None:
            n = len(weight) + 1
        elif len(weight) != n - 1:
            raise UsageError(f"weight has {len(weight)} entries, expected n-1 = {n - 1}")
    elif args.command != "verify":
        raise UsageError("--weight is required")
    if n is None:
        raise UsageError("--n is required when no weight is given")
    if n < 2:
        raise UsageError("n must be at least 2")
    if args.depth < 1:
        raise UsageError("--depth must be at least 1")
    if args.max_degree < 1:
        raise UsageError("--max-degree must be at least 1")
    word = parse_word(args.word) if getattr(args, "word", None) is not None else None
    if word is not None and any(not 1 <= i <= n - 1 for i in word):
        raise UsageError(f"word {word} uses a generator outside 1..{n - 1}")
    return RunConfig(n=n, weight=weight, depth=args.depth, max_degree=args.max_degree,
                     format=args.format, seed=args.seed, word=word)


# -- rendering ------------------------------------------------------------------

def _weight_text(w: Sequence) -> str:
    return "(" + ", ".join(str(x) for x in w) + ")"


def _series_text(f: TruncatedSeries, fmt: str) -> str:
    return latex_series(f) if fmt == "latex" else format_series(f)


def series_degree(f: TruncatedSeries) -> tuple[int, ...] | None:
    """Root degree of a nonzero weighted polynomial, else None."""
    if f.is_zero() or not f.exact:
        return None
    first = next(iter(f.terms))
    if any(x.denominator != 1 for x in first):
        return None
    return oracle.content(tuple(int(x) for x in first), f.n)


def _certificate_block(cert: weyl.SingularCertificate, fmt: str) -> list[str]:
    kind = "polynomial" if cert.polynomial else ("exact series" if cert.series.exact else "truncated series")
    lines = [f"word {list(cert.word)}: weight {_weight_text(cert.weight)}, {kind}, "
             f"residuals {'zero' if cert.residual_norm_zero else 'NONZERO'}, {len(cert.series)} terms"]
    if cert.duplicates:
        lines.append(f"  also from words {[list(w) for w in cert.duplicates]}")
    lines.append("  " + _series_text(cert.series, fmt))
    return lines


def _dump(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


# -- commands -----------------------------------------------------------------------

def cmd_singular(cfg: RunConfig) -> tuple[int, str]:
    certs = weyl.singular_vectors(cfg.weight, cfg.policy)
    if cfg.format == "json":
        return EXIT_OK, _dump({
            "command": "singular", "n": cfg.n, "weight": [str(x) for x in cfg.weight],
            "depth": cfg.depth, "count": len(certs),
            "certificates": [dict(c.to_json(), duplicates=[list(w) for w in c.duplicates]) for c in certs],
        })
    lines = [f"singular vectors of M_lambda, n={cfg.n}, lambda={_weight_text(cfg.weight)}: {len(certs)}"]
    for c in certs:
        lines += _certificate_block(c, cfg.format)
    return EXIT_OK, "\n".join(lines)


def cmd_orbit(cfg: RunConfig) -> tuple[int, str]:
    if cfg.word is not None:
        certs = [weyl.certify(cfg.word, cfg.weight, weyl.evaluate_word(cfg.word, cfg.weight, cfg.policy, cfg.n))]
    else:
        certs = weyl.orbit(cfg.weight, cfg.policy)
    if cfg.format == "json":
        return EXIT_OK, _dump({
            "command": "orbit", "n": cfg.n, "weight": [str(x) for x in cfg.weight],
            "depth": cfg.depth, "certificates": [c.to_json() for c in certs],
        })
    lines = [f"orbit of 1, n={cfg.n}, lambda={_weight_text(cfg.weight)}, depth {cfg.depth}: {len(certs)} words"]
    for c in certs:
        lines += _certificate_block(c, cfg.format)
    return EXIT_OK, "\n".join(lines)


@dataclass
class DegreeComparison:
    degree: tuple[int, ...]
    oracle_dim: int
    orbit_dim: int
    joint_dim: int

    @property
    def status(self) -> str:
        if self.oracle_dim == self.orbit_dim == self.joint_dim:
            return "MATCH"
        return "MISSING" if self.joint_dim > self.orbit_dim else "EXTRA"


def _span_rank(vectors: Sequence[oracle.VermaVector], basis: Sequence) -> int:
    index = {b: k for k, b in enumerate(basis)}
    rows = []
    for v in vectors:
        row = [0] * len(basis)
        for alpha, c in v.terms.items():
            row[index[alpha]] = c
        rows.append(row)
    return linalg.rank(rows, len(basis)) if rows else 0


def compare_with_oracle(lam: Sequence, max_degree: int, policy: TruncationPolicy,
                        max_dimension: int | None = None) -> tuple[list[DegreeComparison], int]:
    """Per-degree span comparison of the oracle kernel against the polynomial orbit.

    Returns the comparisons and the number of orbit polynomials lying beyond
    ``max_degree`` (which the sweep cannot see).
    """
    lam = tuple(lam)
    n = len(lam) + 1
    if max_dimension is None:
        max_dimension = oracle.DEFAULT_MAX_DIMENSION
    found = dict((k, basis) for k, basis in oracle.search_singular(lam, max_degree, max_dimension))
    ours: dict[tuple, list] = {}
    beyond = 0
    for cert in weyl.singular_vectors(lam, policy):
        k = series_degree(cert.series)
        if k is None or not any(k):
            continue
        if sum(k) > max_degree:
            beyond += 1
            continue
        ours.setdefault(k, []).append(oracle.tau_inverse(cert.series))
    out = []
    for k in sorted(set(found) | set(ours), key=lambda d: (sum(d), tuple(-x for x in d))):
        basis = oracle.enumerate_basis(n, k)
        a, b = found.get(k, []), ours.get(k, [])
        out.append(DegreeComparison(k, _span_rank(a, basis), _span_rank(b, basis), _span_rank(a + b, basis)))
    return out, beyond


def cmd_oracle(cfg: RunConfig) -> tuple[int, str]:
    rows, beyond = compare_with_oracle(cfg.weight, cfg.max_degree, cfg.policy)
    ok = all(r.status == "MATCH" for r in rows)
    if cfg.format == "json":
        text = _dump({
            "command": "oracle", "n": cfg.n, "weight": [str(x) for x in cfg.weight],
            "max_degree": cfg.max_degree, "match": ok, "beyond_sweep": beyond,
            "degrees": [{"degree": list(r.degree), "status": r.status, "oracle_dim": r.oracle_dim,
                         "orbit_dim": r.orbit_dim} for r in rows],
        })
    else:
        lines = [f"oracle sweep, n={cfg.n}, lambda={_weight_text(cfg.weight)}, total degree <= {cfg.max_degree}"]
        if not rows:
            lines.append("no singular vectors on either side")
        for r in rows:
            lines.append(f"{r.status} k={r.degree}: oracle kernel dim {r.oracle_dim}, orbit span dim {r.orbit_dim}")
        if beyond:
            lines.append(f"{beyond} orbit polynomial(s) lie beyond the sweep")
        lines.append("full match" if ok else "MISMATCH")
        text = "\n".join(lines)
    return (EXIT_OK if ok else EXIT_NEGATIVE), text


def cmd_irreducible(cfg: RunConfig) -> tuple[int, str]:
    verdict, witnesses = weyl.is_irreducible(cfg.weight)
    if cfg.format == "json":
        text = _dump({
            "command": "irreducible", "n": cfg.n, "weight": [str(x) for x in cfg.weight],
            "irreducible": verdict, "witnesses": [[i, j, str(v)] for i, j, v in witnesses],
        })
    else:
        lines = [f"M_lambda for lambda={_weight_text(cfg.weight)} is {'irreducible' if verdict else 'reducible'}"]
        lines += [f"witness (i={i}, j={j}, value={v})" for i, j, v in witnesses]
        text = "\n".join(lines)
    return (EXIT_OK if verdict else EXIT_NEGATIVE), text


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    results = checks.run_suite(cfg.n, cfg.weight, seed=cfg.seed, policy=cfg.policy)
    failed = [r for r in results if not r.ok]
    lam = _weight_text(cfg.weight) if cfg.weight is not None else "random"
    if cfg.format == "json":
        text = _dump({
            "command": "verify", "n": cfg.n, "weight": [str(x) for x in cfg.weight] if cfg.weight else None,
            "seed": cfg.seed, "depth": cfg.depth, "ok": not failed,
            "first_failure": failed[0].name if failed else None,
            "suites": [{"name": r.name, "cases": r.cases, "passed": r.passed, "exact": r.exact,
                        "truncated": r.truncated, "skipped": r.skipped, "failure": r.first_failure}
                       for r in results],
        })
    else:
        lines = [f"identity suites, n={cfg.n}, lambda={lam}, seed={cfg.seed}, depth {cfg.depth}"]
        lines += [r.line() for r in results]
        lines.append(f"first failing identity: {failed[0].name}" if failed else "all identities hold")
        text = "\n".join(lines)
    return (EXIT_NEGATIVE if failed else EXIT_OK), text


COMMANDS = {
    "singular": cmd_singular,
    "orbit": cmd_orbit,
    "oracle": cmd_oracle,
    "irreducible": cmd_irreducible,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="rank: the algebra is sl(n) (default: from the weight)")
    common.add_argument("--weight", help="comma-separated exact rationals, e.g. 3,1/2,-2")
    common.add_argument("--depth", type=int, default=24, help="truncation depth of fractional powers")
    common.add_argument("--max-degree", type=int, default=8, help="oracle sweep bound on total degree")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--seed", type=int, default=checks.DEFAULT_SEED, help="seed for verify")
    common.add_argument("--output", help="write the report to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="vermapde", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("singular", parents=[common], help="polynomial members of the orbit of 1")
    orbit = sub.add_parser("orbit", parents=[common], help="sigma(1) for every permutation, or one word")
    orbit.add_argument("--word", help="comma-separated generator indices, applied right to left")
    sub.add_parser("oracle", parents=[common], help="compare against brute-force linear algebra")
    sub.add_parser("irreducible", parents=[common], help="irreducibility verdict with witnesses")
    sub.add_parser("verify", parents=[common], help="run the randomised identity suites")
    return parser


def _glue_weight(argv: Sequence[str]) -> list[str]:
    # "--weight -1/2,3" would otherwise read the value as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--weight":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--weight={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_weight(sys.argv[1:] if argv is None else argv))
    try:
        cfg = make_config(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    try:
        status, text = COMMANDS[args.command](cfg)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
