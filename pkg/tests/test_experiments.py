import math
import statistics

import numpy as np
import pytest

from rank1tc.complete import full_rank_target
from rank1tc.errors import BadParameter
from rank1tc.experiments import (
    CouponState,
    adversary_errors,
    adversary_trial,
    coupon_miss_count,
    coupon_trial,
    dim_growth_trial,
    genie_error,
    hitting_time_trials,
    min_independent_rows_check,
    success_sweep,
    sufficient_sample_count,
    wilson_lower_bound,
)
from rank1tc.gf2 import SpanTracker, mask_from_positions
from rank1tc.tensor import design_row


def test_sufficient_sample_count_reference_values():
    # r = 15 at (8, 2); 14 + ceil(8 * ln(3 * 8^30)) = 522.
    assert full_rank_target(8, 2) == 15
    assert sufficient_sample_count(8, 2) == 522
    assert sufficient_sample_count(2, 2) == 2 + math.ceil(2 * math.log(3 * 2**6))


def test_dim_growth_single_column():
    assert dim_growth_trial(1, 1, seed=0) == 1
    assert dim_growth_trial(1, 5, seed=1) == 1


def test_dim_growth_two_coupon_mean():
    times = hitting_time_trials(2, 1, 10_000, seed=13)
    assert abs(statistics.mean(times) - 3.0) <= 0.1


def test_dim_growth_hits_bound_often():
    times = hitting_time_trials(8, 2, 300, seed=14)
    assert sum(t <= sufficient_sample_count(8, 2) for t in times) / 300 >= 2 / 3


def test_rank_growth_steps_bounded():
    rng = np.random.default_rng(15)
    d, N = 4, 2
    target = full_rank_target(d, N)
    tracker = SpanTracker(d * N)
    prev = 0
    for _ in range(200):
        ix = rng.integers(1, d + 1, size=N)
        tracker.add(mask_from_positions(design_row(ix, d, N)))
        assert prev <= tracker.rank <= min(prev + 1, target)
        prev = tracker.rank
    assert tracker.rank == target


def test_success_sweep_zero_draws():
    points = success_sweep(3, 2, [0], trials=20, seed=0)
    assert points[0].successes == 0
    assert points[0].rate == 0.0


def test_success_sweep_monotone_and_deterministic():
    a = success_sweep(4, 2, [2, 10, 40, 120], trials=60, seed=16)
    b = success_sweep(4, 2, [2, 10, 40, 120], trials=60, seed=16)
    assert a == b
    rates = [p.rate for p in a]
    assert rates == sorted(rates)
    assert a[-1].rate >= 2 / 3


def test_success_sweep_threads_match_serial():
    serial = success_sweep(3, 2, [5, 25], trials=24, seed=17, threads=1)
    parallel = success_sweep(3, 2, [5, 25], trials=24, seed=17, threads=2)
    assert serial == parallel


def test_coupon_state_bookkeeping():
    state = CouponState(3, 2)
    assert state.total == 6
    state.step([0, 1])
    assert state.total == (3 - 1) * 2
    assert state.remaining == [2, 2]
    state.step([0, 1])  # nothing new
    assert state.total == 4
    state.step([1, 0])
    state.step([2, 2])
    assert state.total == 0
    assert state.draws == 4


def test_coupon_trial_edges():
    assert coupon_trial(1, 3, 1, seed=0) is False
    assert coupon_trial(3, 2, 0, seed=0) is True


def test_coupon_trial_miss_rate():
    misses = coupon_miss_count(40, 2, 43, trials=300, seed=18)
    assert misses / 300 >= 2 / 3


def test_genie_error_single_missed_negative():
    d, N = 6, 3
    signs = np.ones((N, d), dtype=int)
    signs[0, 2] = -1
    collected = np.ones((N, d), dtype=bool)
    collected[0, 2] = False
    assert genie_error(signs, collected, 1.0) == 2 * math.sqrt(d ** (N - 1))


def test_genie_error_all_collected():
    signs = np.array([[1, -1], [-1, 1]])
    assert genie_error(signs, np.ones((2, 2), dtype=bool), 2.5) == 0.0


def test_adversary_trial_all_collected():
    # Enough draws to collect every variable almost surely.
    assert adversary_trial(2, 2, 1.0, 500, seed=19) == 0.0


def test_adversary_error_rate():
    errors = adversary_errors(6, 3, 1.0, 4, trials=300, seed=20)
    floor = math.sqrt(6 ** 2)
    assert sum(e >= floor for e in errors) / 300 >= 1 / 3


def test_min_independent_rows_small():
    # Spanning by {row(1,1)} leaves 3 of 4 rows outside, which is >= d^(N-1).
    tracker = SpanTracker(4, [mask_from_positions(design_row((1, 1), 2, 2))])
    masks = [
        mask_from_positions(design_row(ix, 2, 2))
        for ix in [(1, 1), (1, 2), (2, 1), (2, 2)]
    ]
    assert sum(not tracker.contains(m) for m in masks) == 3
    assert min_independent_rows_check(2, 2, trials=50, seed=21)
    assert min_independent_rows_check(3, 2, trials=50, seed=22)


def test_min_independent_rows_guards():
    with pytest.raises(BadParameter):
        min_independent_rows_check(1, 2, trials=5, seed=0)


def test_trials_deterministic_by_seed():
    assert hitting_time_trials(3, 2, 20, seed=23) == hitting_time_trials(3, 2, 20, seed=23)
    assert adversary_errors(4, 2, 1.0, 3, 20, seed=24) == adversary_errors(
        4, 2, 1.0, 3, 20, seed=24
    )
    assert coupon_miss_count(5, 2, 3, 50, seed=25) == coupon_miss_count(5, 2, 3, 50, seed=25)


def test_wilson_lower_bound_behaves():
    assert 0.0 < wilson_lower_bound(90, 100) < 0.9
    assert wilson_lower_bound(300, 300) > wilson_lower_bound(100, 100)
    assert wilson_lower_bound(300, 300) > 2 / 3
    with pytest.raises(BadParameter):
        wilson_lower_bound(0, 0)
