import math

import pytest

from shiftlab.blocks import automaton_count_table, even_shift_automaton, sgap_count_table
from shiftlab.entropy import (
    EntropySolveError,
    entropy_bounds_from_counts,
    entropy_slope_diagnostic,
    log2_int,
    solve_sgap_entropy,
)
from shiftlab.props import bsm_estimate
from shiftlab.sgap import parse_sgap_spec

import oracles

PHI = (1.0 + math.sqrt(5.0)) / 2.0


def test_full_shift_exact():
    res = solve_sgap_entropy(parse_sgap_spec("co{}"))
    assert res.lam == 2.0 and res.entropy == 1.0


def test_singleton_exact():
    res = solve_sgap_entropy(parse_sgap_spec("{0}"))
    assert res.lam == 1.0 and res.entropy == 0.0
    assert solve_sgap_entropy(parse_sgap_spec("{7}")).entropy == 0.0


def test_positive_gaps_give_golden_ratio():
    res = solve_sgap_entropy(parse_sgap_spec("co{0}"), tol=1e-10)
    assert abs(res.lam - PHI) < 1e-9
    assert res.residual + res.tail_bound < 1e-10
    assert res.truncation_depth is not None


def test_golden_mean_set():
    # Independent oracle: bisect 1/x + 1/x^2 - 1 directly.
    target = oracles.bisect_decreasing(
        lambda x: 1 / x + 1 / x**2, 1.0 + 1e-9, 2.0, 1.0, 1e-13
    )
    res = solve_sgap_entropy(parse_sgap_spec("{0,1}"), tol=1e-12)
    assert abs(res.lam - target) < 1e-11
    assert abs(res.lam - PHI) < 1e-11


def test_odd_gaps_root_is_sqrt2():
    res = solve_sgap_entropy(parse_sgap_spec("ep:pre=;pat=0,1"), tol=1e-12)
    assert abs(res.lam - math.sqrt(2.0)) < 1e-11


def test_solver_matches_closed_form_series(corpus):
    # The closed geometric form of the series is an independent evaluation
    # route; its bisection root must agree with the truncated-series solver.
    for spec in corpus:
        if spec.size() == 1 or spec.is_full():
            continue
        res = solve_sgap_entropy(spec, tol=1e-11)
        target = oracles.bisect_decreasing(
            lambda x: oracles.closed_series(spec, x), 1.0 + 1e-9, 2.0, 1.0, 1e-13
        )
        assert abs(res.lam - target) < 5e-11, spec


def test_monotone_in_the_gap_set():
    nested = ["{0}", "{0,1}", "{0,1,2}", "{0,1,2,3}", "{0,1,2,3,4}"]
    lams = [solve_sgap_entropy(parse_sgap_spec(s), 1e-12).lam for s in nested]
    assert all(a < b for a, b in zip(lams, lams[1:]))


def test_entropy_result_certificate(corpus):
    for spec in corpus:
        res = solve_sgap_entropy(spec, tol=1e-9)
        assert 1.0 <= res.lam <= 2.0
        assert res.residual + res.tail_bound < 1e-9
        assert res.entropy == pytest.approx(math.log2(res.lam), abs=1e-15)


def test_unreachable_tolerance_raises():
    with pytest.raises((EntropySolveError, ValueError)):
        solve_sgap_entropy(parse_sgap_spec("{0,1}"), tol=0.0)


def test_bounds_full_shift():
    table = sgap_count_table(parse_sgap_spec("co{}"), 8)
    assert entropy_bounds_from_counts(table, 1, 5) == (1.0, 1.0)


def test_bounds_even_shift_sandwich():
    table = automaton_count_table(even_shift_automaton(), 10)
    lower, upper = entropy_bounds_from_counts(table, 4, 10)
    assert upper - lower == pytest.approx(0.2, abs=1e-12)
    assert lower <= math.log2(PHI) <= upper


def test_bounds_positive_gaps_with_estimated_constant():
    spec = parse_sgap_spec("co{0}")
    table = sgap_count_table(spec, 16)
    k_est = bsm_estimate(table, 8).k_estimate
    lower, upper = entropy_bounds_from_counts(table, k_est, 16)
    assert lower <= math.log2(PHI) <= upper


def test_slope_diagnostic_full_shift():
    table = sgap_count_table(parse_sgap_spec("co{}"), 10)
    assert all(v == 1.0 for _, v in entropy_slope_diagnostic(table, 10))


def test_slope_diagnostic_even_shift():
    # Independent oracle: spectral radius of the two-state presentation.
    rho = oracles.spectral_radius_2x2(1, 1, 1, 0)
    h = math.log2(rho)
    assert abs(rho - PHI) < 1e-12
    table = automaton_count_table(even_shift_automaton(), 16)
    slopes = [v for _, v in entropy_slope_diagnostic(table, 16)]
    assert all(v >= h - 1e-12 for v in slopes)
    assert slopes[-1] - h < slopes[0] - h


def test_slope_upper_bounds_solver(corpus):
    for spec in corpus:
        res = solve_sgap_entropy(spec, tol=1e-10)
        table = sgap_count_table(spec, 18)
        for n, v in entropy_slope_diagnostic(table, 18):
            assert v >= res.entropy - 1e-9, (spec, n)


def test_slope_excess_bounded_by_estimated_constant(corpus):
    for spec in corpus:
        res = solve_sgap_entropy(spec, tol=1e-10)
        table = sgap_count_table(spec, 18)
        k_est = bsm_estimate(table, 9).k_estimate
        c = math.log2(float(k_est)) if k_est > 1 else 0.0
        # Window-certified constant: counts(n) <= K * lam^n on the window.
        k_window = max(
            table.counts[j] / res.lam**j for j in range(1, 19)
        )
        k_valid = max(float(k_est), k_window)
        for n in range(1, 19):
            slope = log2_int(table.counts[n]) / n
            assert 0.0 <= slope - res.entropy + 1e-9
            assert slope - res.entropy <= math.log2(k_valid) / n + 1e-9


def test_log2_int_large_values():
    assert log2_int(2**1000) == pytest.approx(1000.0)
    assert log2_int(3**500) == pytest.approx(500 * math.log2(3), rel=1e-12)
