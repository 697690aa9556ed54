import io

import pytest

from shiftlab.blocks import (
    EmptyShiftError,
    InadmissibleWordError,
    SizeGuardError,
    automaton_count_table,
    build_sft_automaton,
    count_blocks_automaton,
    count_blocks_sgap,
    enumerate_blocks_sgap,
    even_shift_automaton,
    follower_count,
    sgap_count_table,
    word_is_admissible,
)
from shiftlab.sgap import parse_sgap_spec

import oracles

EX31_FORBIDDEN = ["ac", "ad", "bd", "ca", "cb", "da", "db"]


def test_count_single_zero_gap():
    spec = parse_sgap_spec("{0}")
    assert [count_blocks_sgap(spec, n) for n in (1, 2, 5, 9)] == [1, 1, 1, 1]


def test_count_full_shift():
    spec = parse_sgap_spec("co{}")
    assert [count_blocks_sgap(spec, n) for n in (1, 3, 10)] == [2, 8, 1024]


def test_count_gap_one():
    # Oracle first: filter all 2^3 words by the run conditions.
    spec = parse_sgap_spec("{1}")
    assert oracles.brute_words_sgap(spec, 3) == ["010", "101"]
    assert count_blocks_sgap(spec, 3) == 2


def test_enumerate_examples():
    assert enumerate_blocks_sgap(parse_sgap_spec("{1}"), 2) == ["01", "10"]
    assert enumerate_blocks_sgap(parse_sgap_spec("{0}"), 1) == ["1"]
    assert enumerate_blocks_sgap(parse_sgap_spec("co{}"), 2) == ["00", "01", "10", "11"]


def test_enumerate_guard():
    with pytest.raises(SizeGuardError):
        enumerate_blocks_sgap(parse_sgap_spec("co{}"), 23)


def test_follower_examples():
    assert follower_count(parse_sgap_spec("{2}"), "100", 1) == 1
    full = parse_sgap_spec("co{}")
    for r in (1, 3, 7):
        assert follower_count(full, "010", r) == 2**r
    doubling = parse_sgap_spec("{0,1,2,4,8,16,32}")
    assert follower_count(doubling, "1" + "0" * 17, 8) == 1


def test_follower_matches_brute_force(corpus):
    for spec in corpus:
        for omega in ("1", "10", "100", "0", "00", "11", "0110"):
            if not word_is_admissible(spec, omega):
                continue
            for r in (1, 2, 5, 8):
                brute = sum(
                    1
                    for alpha in oracles.brute_words_sgap(spec, r)
                    if oracles.sgap_word_ok(spec, omega + alpha)
                )
                assert follower_count(spec, omega, r) == brute, (spec, omega, r)


def test_follower_requires_admissible_word():
    with pytest.raises(InadmissibleWordError):
        follower_count(parse_sgap_spec("{1}"), "11", 2)


def test_oracle_equivalence_small(corpus):
    for spec in corpus:
        for n in range(1, 11):
            assert count_blocks_sgap(spec, n) == len(enumerate_blocks_sgap(spec, n))


def test_submultiplicativity(corpus):
    for spec in corpus:
        counts = sgap_count_table(spec, 20).counts
        for m in range(1, 20):
            for n in range(1, 21 - m):
                assert counts[m + n] <= counts[m] * counts[n]


def test_follower_decomposition(corpus):
    # Summing follower counts over all length-m words recovers counts(m+n).
    for spec in corpus:
        counts = sgap_count_table(spec, 16).counts
        for m in (1, 3, 6, 8):
            for n in (1, 4, 8):
                total = sum(
                    follower_count(spec, omega, n)
                    for omega in enumerate_blocks_sgap(spec, m)
                )
                assert total == counts[m + n]


def test_build_sft_four_letter_example():
    aut = build_sft_automaton("abcd", EX31_FORBIDDEN)
    assert len(aut.states) == 4
    assert aut.edge_count() == 9


def test_build_sft_no_adjacent_ones():
    aut = build_sft_automaton("01", ["11"])
    assert len(aut.states) == 2
    assert aut.edge_count() == 3


def test_build_sft_empty_shift():
    with pytest.raises(EmptyShiftError):
        build_sft_automaton("01", ["00", "01", "10", "11"])


def test_build_sft_prunes_stranded_states():
    # 'b' only appears as a dead end: ab admissible, but b has no successor.
    aut = build_sft_automaton("ab", ["ba", "bb"])
    assert aut.states == ("a",)
    assert aut.edge_count() == 1


def test_four_letter_closed_form():
    aut = build_sft_automaton("abcd", EX31_FORBIDDEN)
    assert count_blocks_automaton(aut, 1) == 4
    for n in range(2, 13):
        assert count_blocks_automaton(aut, n) == (n + 7) * 2 ** (n - 2)


def test_even_shift_counts():
    aut = even_shift_automaton()
    assert count_blocks_automaton(aut, 1) == 2
    assert count_blocks_automaton(aut, 3) == 7
    assert count_blocks_automaton(aut, 4) == 12


def test_even_shift_matches_brute_force():
    aut = even_shift_automaton()
    for n in range(1, 17):
        assert count_blocks_automaton(aut, n) == oracles.brute_count_even(n)


def test_higher_block_automaton_counts_match_gap_dp():
    # The gap shift of {0,1} forbids 000 and 0011-style runs; as an SFT with
    # forbidden blocks {00} ... use S = {0,1}: zero runs of length <= 1, so
    # the only forbidden block is 00.
    aut = build_sft_automaton("01", ["00"])
    spec = parse_sgap_spec("{0,1}")
    for n in range(1, 14):
        assert count_blocks_automaton(aut, n) == count_blocks_sgap(spec, n)


def test_csv_export():
    table = sgap_count_table(parse_sgap_spec("co{}"), 4)
    buf = io.StringIO()
    table.write_csv(buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "n,count,log2_count,log2_count_over_n"
    assert lines[1] == "1,2,1,1"
    assert lines[4].startswith("4,16,4,")


def test_automaton_table_builder():
    table = automaton_count_table(even_shift_automaton(), 6)
    assert table.counts[4] == 12 and table.counts[6] == 33
