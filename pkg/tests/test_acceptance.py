"""Acceptance gate: one test per published or independently derived target.

Each test prints a single pass/fail line (visible with `pytest -s`) and
enforces its wall-clock budget.
"""

import math
import random
import time
from fractions import Fraction

from shiftlab.beta import (
    BRANCH_AT,
    NOT_A_PREFIX,
    BetaContext,
    ehj_classify,
    enumerate_expansions_of_one,
    greedy_expansion,
    komornik_loreti_constant,
    lazy_expansion,
    max_zero_run_bound,
)
from shiftlab.blocks import (
    automaton_count_table,
    build_sft_automaton,
    count_blocks_automaton,
    count_blocks_sgap,
    even_shift_automaton,
    sgap_count_table,
)
from shiftlab.entropy import (
    entropy_bounds_from_counts,
    entropy_slope_diagnostic,
    solve_sgap_entropy,
)
from shiftlab.props import VERDICT_DECAY, almost_specified_floor, balanced_estimate
from shiftlab.sgap import classify, parse_sgap_spec

import oracles
from conftest import CORPUS_STRINGS

PHI = (1.0 + math.sqrt(5.0)) / 2.0


def _gate(name, limit_seconds, body):
    start = time.perf_counter()
    try:
        body()
    except BaseException:
        print(f"[acceptance] {name}: FAIL")
        raise
    elapsed = time.perf_counter() - start
    print(f"[acceptance] {name}: PASS ({elapsed:.2f}s, limit {limit_seconds}s)")
    assert elapsed < limit_seconds, f"{name} took {elapsed:.2f}s"


def test_criterion_1_four_letter_closed_form():
    def body():
        aut = build_sft_automaton("abcd", ["ac", "ad", "bd", "ca", "cb", "da", "db"])
        assert count_blocks_automaton(aut, 1) == 4
        for n in range(2, 13):
            assert count_blocks_automaton(aut, n) == (n + 7) * 2 ** (n - 2)

    _gate("1 four-letter closed form", 1.0, body)


def test_criterion_2_even_shift_bsm_bound():
    def body():
        counts = automaton_count_table(even_shift_automaton(), 20).counts
        for m in range(1, 11):
            for n in range(1, 11):
                assert counts[m] * counts[n] <= 4 * counts[m + n]

    _gate("2 even-shift K=4 bound", 1.0, body)


def test_criterion_3_golden_entropy_and_slope():
    def body():
        spec = parse_sgap_spec("co{0}")
        res = solve_sgap_entropy(spec, tol=1e-10)
        assert abs(res.lam - PHI) < 1e-9
        table = sgap_count_table(spec, 18)
        slope = entropy_slope_diagnostic(table, 18)[-1][1]
        assert 0.0 <= slope - math.log2(res.lam) < 0.08

    _gate("3 golden entropy + slope", 5.0, body)


def test_criterion_4_komornik_loreti():
    def body():
        lam = komornik_loreti_constant(1e-6)
        assert round(lam, 3) == 1.787
        assert abs(math.log(lam) - 0.580) < 1e-3

    _gate("4 smallest univoque base", 1.0, body)


def test_criterion_5_golden_leaves_classify():
    def body():
        leaves = enumerate_expansions_of_one(BetaContext(PHI), 12, 512)
        assert leaves
        for leaf in leaves:
            assert ehj_classify(leaf.digit_word()).family != NOT_A_PREFIX

    _gate("5 golden-base expansion families", 1.0, body)


def test_criterion_6_balanced_decay_witness():
    def body():
        spec = parse_sgap_spec("{0,1,2,4,8,16,32}")
        rep12 = balanced_estimate(spec, 34, 12)
        assert rep12.verdict == VERDICT_DECAY
        omega, _ = rep12.witness
        assert omega[0] == "1" and set(omega[1:]) <= {"0"}
        rep6 = balanced_estimate(spec, 34, 6)
        assert rep12.b_estimate <= rep6.b_estimate / 4

    _gate("6 unbounded-gap follower decay", 30.0, body)


def test_criterion_7_connector_floor():
    def body():
        for text in CORPUS_STRINGS:
            spec = parse_sgap_spec(text)
            gap_sup = classify(spec).gap_sup
            if gap_sup == 0:
                floor = Fraction(1)
            else:
                table = sgap_count_table(spec, gap_sup)
                floor = almost_specified_floor(table, gap_sup)
            rep = balanced_estimate(spec, max(12, gap_sup + 2), 10)
            assert rep.b_estimate >= floor, text

    _gate("7 connector lower bound", 30.0, body)


def test_criterion_8_oracle_equivalence():
    def body():
        rng = random.Random(20260810)
        for _ in range(200):
            spec = oracles.random_spec(rng)
            for n in range(1, 15):
                assert count_blocks_sgap(spec, n) == oracles.brute_count_sgap(spec, n)

    _gate("8 count vs enumeration oracle", 60.0, body)


def test_criterion_9_property_suite():
    def body():
        rng = random.Random(97)
        for _ in range(500):
            lam = rng.uniform(1.05, 1.95)
            ctx = BetaContext(lam)
            x = rng.uniform(0.0, ctx.interval_right)
            gen = rng.choice((greedy_expansion, lazy_expansion))
            depth = 48
            prefix = gen(x, ctx, depth)

            # Partial-sum identity at orbit-algebra tolerance.
            for k in (1, depth // 2, depth):
                lhs = x - prefix.partial_sum(k)
                rhs = lam**-k * prefix.orbit[k - 1]
                assert abs(lhs - rhs) < 1e-10

            # Absorbing intervals.
            if gen is greedy_expansion:
                entered = False
                for y in prefix.orbit:
                    if entered:
                        assert y < 1.0 + 1e-9
                    if y < 1.0:
                        entered = True
            else:
                threshold = (2.0 - lam) / (lam - 1.0)
                entered = False
                for y in prefix.orbit:
                    if entered:
                        assert y > threshold - 1e-9
                    if y > threshold:
                        entered = True
                # Zero-run bound from the orbit floor.
                if x > 1e-6:
                    delta = min(x, threshold) * (1 - 1e-9)
                    bound = max_zero_run_bound(delta, ctx)
                    assert oracles.max_zero_run(prefix.digit_word()) < bound

            # Count sandwich for a random gap set: the slope upper-bounds
            # the solved entropy, and the window-certified constant closes
            # the lower bound.
            spec = oracles.random_spec(rng)
            res = solve_sgap_entropy(spec, tol=1e-9)
            table = sgap_count_table(spec, 12)
            k_window = max(
                max(table.counts[j] / res.lam**j for j in range(1, 13)), 1.0
            )
            for n in (4, 12):
                lower, upper = entropy_bounds_from_counts(table, k_window, n)
                assert lower <= res.entropy + 1e-9
                assert upper >= res.entropy - 1e-9

    _gate("9 randomized property suite", 60.0, body)
