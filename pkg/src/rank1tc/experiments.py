"""Monte-Carlo harness for the statistical behavior of random sampling.

Covers four experiment families: certification success sweeps over the draw
count, row-span dimension growth (hitting time of full rank), a parallel
coupon collector with one ball drawn per urn per round, and a sign-guessing
genie adversary that lower-bounds the error of any under-sampled estimator.

Every trial derives its RNG stream from (master seed, trial index), so sweeps
are reproducible and safely parallelizable.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Iterable, NamedTuple, Sequence, TextIO

import numpy as np

from .complete import TrialRecord, full_rank_target
from .errors import BadParameter
from .gf2 import SpanTracker, mask_from_positions
from .tensor import all_indices, design_row


def sufficient_sample_count(d: int, N: int) -> int:
    """Draw count that certifies with probability at least 2/3.

    With r = d*N - (N-1), returns r - 1 + ceil(d * ln(3 * d^(N*r))): enough
    uniform draws that the sampled rows span the full row space in at least
    two thirds of runs (in practice nearly always).
    """
    r = full_rank_target(d, N)
    return r - 1 + math.ceil(d * (math.log(3.0) + N * r * math.log(d)))


def wilson_lower_bound(successes: int, trials: int, z: float = 2.3263478740408408) -> float:
    """One-sided lower confidence bound for a binomial rate (Wilson score).

    The default z is the normal 0.99 quantile, giving a 99% lower bound.
    """
    if trials < 1:
        raise BadParameter("need at least one trial")
    p = successes / trials
    z2 = z * z
    center = p + z2 / (2 * trials)
    margin = z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials))
    return (center - margin) / (1 + z2 / trials)


def _run_trials(worker: Callable, params: tuple, trials: int, threads: int) -> list:
    """Run worker(params, k) for k in range(trials), results in index order."""
    if trials < 1:
        raise BadParameter("need at least one trial")
    fn = partial(worker, params)
    if threads <= 1:
        return [fn(k) for k in range(trials)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        chunk = max(1, trials // (4 * threads))
        return list(pool.map(fn, range(trials), chunksize=chunk))


# ---------------------------------------------------------------------------
# Row-span dimension growth
# ---------------------------------------------------------------------------


def dim_growth_trial(d: int, N: int, seed) -> int:
    """Number of uniform draws until the sampled rows reach full rank.

    Maintains the incremental GF(2) rank of the cumulative draw set; the rank
    is nondecreasing, grows by at most one per draw, and the walk is almost
    surely finite.
    """
    if d < 1 or N < 1:
        raise BadParameter("d and N must be positive")
    rng = np.random.default_rng(seed)
    target = full_rank_target(d, N)
    tracker = SpanTracker(d * N)
    t = 0
    while True:
        ix = rng.integers(1, d + 1, size=N)
        t += 1
        tracker.add(mask_from_positions(design_row(ix, d, N)))
        if tracker.rank == target:
            return t


def _growth_worker(params: tuple, k: int) -> int:
    d, N, seed = params
    return dim_growth_trial(d, N, [seed, k])


def hitting_time_trials(d: int, N: int, trials: int, seed=0, threads: int = 1) -> list[int]:
    """Hitting times for `trials` independent seeded runs."""
    return _run_trials(_growth_worker, (d, N, seed), trials, threads)


# ---------------------------------------------------------------------------
# Certification success sweep
# ---------------------------------------------------------------------------


class SweepPoint(NamedTuple):
    m: int
    successes: int
    rate: float


def _sweep_worker(params: tuple, k: int) -> tuple[bool, ...]:
    d, N, ms, seed = params
    rng = np.random.default_rng([seed, k])
    target = full_rank_target(d, N)
    tracker = SpanTracker(d * N)
    drawn = 0
    outcome = []
    for m in ms:
        extra = m - drawn
        if extra:
            coords = rng.integers(1, d + 1, size=(extra, N))
            for row in coords:
                tracker.add(mask_from_positions(design_row(row, d, N)))
            drawn = m
        outcome.append(tracker.rank == target)
    return tuple(outcome)


def success_sweep(
    d: int, N: int, m_list: Sequence[int], trials: int, seed=0, threads: int = 1
) -> list[SweepPoint]:
    """Fraction of trials whose first m draws certify, for each m.

    Each trial consumes a single draw stream, so within a trial the draws for
    a smaller m are a prefix of those for a larger m; rates are therefore
    nondecreasing in m.
    """
    ms = sorted(set(int(m) for m in m_list))
    if any(m < 0 for m in ms):
        raise BadParameter("draw counts must be nonnegative")
    rows = _run_trials(_sweep_worker, (d, N, tuple(ms), seed), trials, threads)
    successes = {m: 0 for m in ms}
    for row in rows:
        for m, ok in zip(ms, row):
            successes[m] += ok
    return [
        SweepPoint(int(m), successes[int(m)], successes[int(m)] / trials)
        for m in m_list
    ]


# ---------------------------------------------------------------------------
# Parallel coupon collector
# ---------------------------------------------------------------------------


@dataclass
class CouponState:
    """Bookkeeping for N urns of d balls with one ball drawn per urn per round."""

    d: int
    N: int
    seen: list[set] = field(init=False)
    remaining: list[int] = field(init=False)
    total: int = field(init=False)
    draws: int = field(init=False, default=0)

    def __post_init__(self) -> None:
        self.seen = [set() for _ in range(self.N)]
        self.remaining = [self.d] * self.N
        self.total = self.d * self.N

    def step(self, balls: Sequence[int]) -> int:
        """Record one round (ball index per urn); returns newly seen count."""
        assert len(balls) == self.N
        newly = 0
        for i, ball in enumerate(balls):
            if ball not in self.seen[i]:
                self.seen[i].add(ball)
                self.remaining[i] -= 1
                newly += 1
        self.draws += 1
        self.total -= newly
        assert all(0 <= z <= self.d for z in self.remaining)
        assert self.total == sum(self.remaining)
        if self.draws == 1:
            assert self.total == (self.d - 1) * self.N
        return newly


def coupon_trial(d: int, N: int, t_draws: int, seed) -> bool:
    """True iff some ball in some urn is still unseen after t_draws rounds."""
    if t_draws < 0:
        raise BadParameter("t_draws must be nonnegative")
    rng = np.random.default_rng(seed)
    state = CouponState(d, N)
    for _ in range(t_draws):
        state.step(rng.integers(0, d, size=N))
    return state.total > 0


def _coupon_worker(params: tuple, k: int) -> bool:
    d, N, t_draws, seed = params
    return coupon_trial(d, N, t_draws, [seed, k])


def coupon_miss_count(d: int, N: int, t_draws: int, trials: int, seed=0, threads: int = 1) -> int:
    """Number of trials in which at least one ball goes unseen."""
    return sum(_run_trials(_coupon_worker, (d, N, t_draws, seed), trials, threads))


# ---------------------------------------------------------------------------
# Genie adversary
# ---------------------------------------------------------------------------


def genie_error(signs: np.ndarray, collected: np.ndarray, rho: float) -> float:
    """Frobenius error of the genie reconstruction.

    `signs` is the (N, d) array of true factor signs with entries scaled so
    tensor entries are +-rho; the genie knows every collected variable and
    guesses +1 for the rest.
    """
    guesses = np.where(collected, signs, 1)
    truth = signs[0].astype(float)
    approx = guesses[0].astype(float)
    for l in range(1, signs.shape[0]):
        truth = np.multiply.outer(truth, signs[l])
        approx = np.multiply.outer(approx, guesses[l])
    return float(rho * np.linalg.norm((truth - approx).ravel()))


def adversary_trial(d: int, N: int, rho: float, m: int, seed) -> float:
    """Frobenius error suffered by the genie estimator after m draws.

    Draws random sign factors (entries +-1, so tensor entries are +-rho) and
    m uniform indices; a drawn entry collects the N variables it depends on.
    When exactly one variable is missed and its true sign is -1, the error is
    exactly 2 * rho * sqrt(d^(N-1)).
    """
    if rho <= 0:
        raise BadParameter("rho must be positive")
    if d**N > 10**7:
        raise BadParameter("d^N too large to enumerate")
    rng = np.random.default_rng(seed)
    signs = rng.integers(0, 2, size=(N, d)) * 2 - 1
    collected = np.zeros((N, d), dtype=bool)
    if m:
        coords = rng.integers(0, d, size=(m, N))
        for l in range(N):
            collected[l, coords[:, l]] = True
    error = genie_error(signs, collected, rho)
    missed = ~collected
    if missed.sum() == 1 and signs[missed][0] == -1:
        assert error >= rho * math.sqrt(d ** (N - 1)) * (1 - 1e-12)
    return error


def _adversary_worker(params: tuple, k: int) -> float:
    d, N, rho, m, seed = params
    return adversary_trial(d, N, rho, m, [seed, k])


def adversary_errors(
    d: int, N: int, rho: float, m: int, trials: int, seed=0, threads: int = 1
) -> list[float]:
    """Genie errors for `trials` independent seeded runs."""
    return _run_trials(_adversary_worker, (d, N, rho, m, seed), trials, threads)


# ---------------------------------------------------------------------------
# Proper-subspace escape rows
# ---------------------------------------------------------------------------


def min_independent_rows_check(d: int, N: int, trials: int, seed=0) -> bool:
    """Check that any sampled proper row subspace misses many design rows.

    Each trial spans W by 1 <= k < d*N-(N-1) random distinct design rows (so
    dim W is always short of full rank) and counts the design rows outside W
    by exhaustive span membership; returns True iff every trial finds at
    least d^(N-1) such rows.
    """
    if d**N > 4096:
        raise BadParameter("d^N too large to enumerate rows")
    target = full_rank_target(d, N)
    if target < 2:
        raise BadParameter("need d >= 2 so proper subspaces exist")
    masks = [
        mask_from_positions(design_row(ix, d, N)) for ix in all_indices(d, N)
    ]
    floor = d ** (N - 1)
    for k in range(trials):
        rng = np.random.default_rng([seed, k])
        size = int(rng.integers(1, target))
        chosen = rng.choice(len(masks), size=size, replace=False)
        tracker = SpanTracker(d * N)
        for j in chosen:
            tracker.add(masks[j])
        outside = sum(not tracker.contains(mask) for mask in masks)
        if outside < floor:
            return False
    return True


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------


def write_sweep_csv(out: TextIO, d: int, N: int, trials: int, points: Iterable[SweepPoint]) -> None:
    out.write("experiment,d,N,m,trials,successes,rate\n")
    for p in points:
        out.write(f"sweep,{d},{N},{p.m},{trials},{p.successes},{p.rate:.6f}\n")


def write_coupon_csv(out: TextIO, d: int, N: int, t_draws: int, trials: int, misses: int) -> None:
    out.write("experiment,d,N,t,trials,misses,rate\n")
    out.write(f"coupon,{d},{N},{t_draws},{trials},{misses},{misses / trials:.6f}\n")


def write_adversary_csv(
    out: TextIO, d: int, N: int, rho: float, m: int, trials: int, big_error_count: int
) -> None:
    out.write("experiment,d,N,rho,m,trials,big_error_count,rate\n")
    out.write(
        f"adversary,{d},{N},{rho:g},{m},{trials},{big_error_count},"
        f"{big_error_count / trials:.6f}\n"
    )


def write_dimgrowth_csv(out: TextIO, d: int, N: int, times: Sequence[int]) -> None:
    out.write("experiment,d,N,trial,hitting_time\n")
    for k, t in enumerate(times):
        out.write(f"dimgrowth,{d},{N},{k},{t}\n")


__all__ = [
    "CouponState",
    "SweepPoint",
    "TrialRecord",
    "adversary_errors",
    "adversary_trial",
    "coupon_miss_count",
    "coupon_trial",
    "dim_growth_trial",
    "genie_error",
    "hitting_time_trials",
    "min_independent_rows_check",
    "success_sweep",
    "sufficient_sample_count",
    "wilson_lower_bound",
    "write_adversary_csv",
    "write_coupon_csv",
    "write_dimgrowth_csv",
    "write_sweep_csv",
]
