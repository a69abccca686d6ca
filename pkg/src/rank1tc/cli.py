"""Command-line frontend.

Subcommands: gen, complete, rank, sweep, dimgrowth, coupon, adversary.
CSV and completed entries go to standard output (or --output); diagnostics go
to standard error, so sweeps compose with shell pipelines.  All randomness
flows from --seed (default 0), making every run reproducible by default.

Exit codes: 0 success, 1 samples inconsistent with any nonzero rank-1 tensor,
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import contextlib
import sys

import numpy as np

from . import experiments, fileio
from .complete import SampleSet, complete
from .dense import real_rank
from .errors import (
    BadParameter,
    InconsistentMagnitudes,
    InconsistentSigns,
    Rank1Error,
)
from .gf2 import BitMatrix, gf2_rank
from .oracle import all_design_dense, all_design_masks
from .tensor import FactorList, all_indices, make_tensor

MAX_ENUMERATED = 10**6


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rank1tc",
        description="Certified rank-1 tensor completion and sampling experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_shape(p):
        p.add_argument("--d", type=int, required=True, help="mode dimension")
        p.add_argument("--n", type=int, required=True, help="number of modes")

    def add_trials(p):
        p.add_argument("--seed", type=int, default=0, help="master RNG seed")
        p.add_argument("--trials", type=int, required=True)
        p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("gen", help="write a random factor file")
    add_shape(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mag-min", type=float, default=0.1)
    p.add_argument("--mag-max", type=float, default=10.0)
    p.add_argument("--neg-prob", type=float, default=0.5)
    p.add_argument("--output", required=True)

    p = sub.add_parser("complete", help="complete a tensor from observed entries")
    add_shape(p)
    p.add_argument("--input", required=True, help="observed-entries file")
    p.add_argument("--query", default="all", help="all | none | <index file>")
    p.add_argument("--output", help="completed entries file (default: stdout)")

    p = sub.add_parser("rank", help="print formula, GF(2), and real design ranks")
    add_shape(p)

    p = sub.add_parser("sweep", help="certification success rates over draw counts")
    add_shape(p)
    add_trials(p)
    p.add_argument("--m", type=int, help="single draw count")
    p.add_argument("--m-list", help="comma-separated draw counts")

    p = sub.add_parser("dimgrowth", help="hitting times of full sampled rank")
    add_shape(p)
    add_trials(p)

    p = sub.add_parser("coupon", help="parallel coupon collector miss rate")
    add_shape(p)
    add_trials(p)
    p.add_argument("--t", type=int, required=True, help="number of rounds")

    p = sub.add_parser("adversary", help="genie estimator error rate")
    add_shape(p)
    add_trials(p)
    p.add_argument("--rho", type=float, required=True, help="entry magnitude")
    p.add_argument("--m", type=int, required=True, help="number of draws")

    return parser


def _check_shape(d: int, N: int) -> None:
    if d < 1 or N < 1:
        raise BadParameter("--d and --n must be positive")


def _random_factors(d: int, N: int, seed: int, mag_min: float, mag_max: float,
                    neg_prob: float) -> FactorList:
    if not 0 < mag_min <= mag_max:
        raise BadParameter("need 0 < --mag-min <= --mag-max")
    if not 0 <= neg_prob <= 1:
        raise BadParameter("--neg-prob must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    factors = []
    for _ in range(N):
        mags = np.exp(rng.uniform(np.log(mag_min), np.log(mag_max), size=d))
        signs = np.where(rng.random(d) < neg_prob, -1.0, 1.0)
        factors.append(signs * mags)
    return make_tensor(factors)


def _cmd_gen(args) -> int:
    _check_shape(args.d, args.n)
    t = _random_factors(args.d, args.n, args.seed, args.mag_min, args.mag_max,
                        args.neg_prob)
    fileio.write_factor_file(args.output, t)
    return 0


@contextlib.contextmanager
def _open_output(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as handle:
            yield handle


def _cmd_complete(args) -> int:
    _check_shape(args.d, args.n)
    entries = fileio.read_observed_file(args.input, args.n)
    s = SampleSet(args.d, args.n, tuple(entries))
    c = complete(s)
    print(f"certified: {'true' if c.certified else 'false'}", file=sys.stderr)
    if args.query == "none":
        queries = []
    elif args.query == "all":
        if args.d**args.n > MAX_ENUMERATED:
            raise BadParameter("d^N too large for --query all")
        queries = list(all_indices(args.d, args.n))
    else:
        queries = fileio.read_index_file(args.query, args.n)
    with _open_output(args.output) as out:
        fileio.write_entries(out, ((ix, c.query(ix)) for ix in queries))
    return 0


def _cmd_rank(args) -> int:
    _check_shape(args.d, args.n)
    if args.d**args.n > MAX_ENUMERATED:
        raise BadParameter("d^N too large to materialize the design matrix")
    formula = args.d * args.n - (args.n - 1)
    masks = all_design_masks(args.d, args.n)
    f2 = gf2_rank(BitMatrix(args.d * args.n, tuple(masks)))
    real = real_rank(np.array(all_design_dense(args.d, args.n), dtype=float))
    print(f"{formula} {f2} {real}")
    return 0


def _cmd_sweep(args) -> int:
    _check_shape(args.d, args.n)
    if args.m_list:
        m_list = [int(x) for x in args.m_list.split(",") if x.strip()]
    elif args.m is not None:
        m_list = [args.m]
    else:
        raise BadParameter("sweep needs --m or --m-list")
    points = experiments.success_sweep(
        args.d, args.n, m_list, args.trials, seed=args.seed, threads=args.threads
    )
    experiments.write_sweep_csv(sys.stdout, args.d, args.n, args.trials, points)
    return 0


def _cmd_dimgrowth(args) -> int:
    _check_shape(args.d, args.n)
    times = experiments.hitting_time_trials(
        args.d, args.n, args.trials, seed=args.seed, threads=args.threads
    )
    experiments.write_dimgrowth_csv(sys.stdout, args.d, args.n, times)
    return 0


def _cmd_coupon(args) -> int:
    _check_shape(args.d, args.n)
    misses = experiments.coupon_miss_count(
        args.d, args.n, args.t, args.trials, seed=args.seed, threads=args.threads
    )
    experiments.write_coupon_csv(sys.stdout, args.d, args.n, args.t, args.trials, misses)
    return 0


def _cmd_adversary(args) -> int:
    _check_shape(args.d, args.n)
    errors = experiments.adversary_errors(
        args.d, args.n, args.rho, args.m, args.trials,
        seed=args.seed, threads=args.threads,
    )
    floor = args.rho * (args.d ** ((args.n - 1) / 2))
    big = sum(e >= floor for e in errors)
    experiments.write_adversary_csv(
        sys.stdout, args.d, args.n, args.rho, args.m, args.trials, big
    )
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "complete": _cmd_complete,
    "rank": _cmd_rank,
    "sweep": _cmd_sweep,
    "dimgrowth": _cmd_dimgrowth,
    "coupon": _cmd_coupon,
    "adversary": _cmd_adversary,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (InconsistentSigns, InconsistentMagnitudes) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (Rank1Error, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
