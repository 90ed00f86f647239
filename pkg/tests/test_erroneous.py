from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import X, X_ERR, all_strings, dist, distant, lrec, w2, wins
from specrecon.enumeration import all_strings_chunks, min_window_distance, to_bits
from specrecon.erroneous import (ErecParams, check_erec, consensus, count_erec, erec_mask,
                                 erec_search_state, majority, reconstruct_erec, reconstruct_majority,
                                 striping_ball, w2_oracle, w3_oracle, w3_oracle_detail)
from specrecon.lossy import LrecParams, check_lrec, count_lrec
from specrecon.outcome import ParameterError, ReconstructionError
from specrecon.spectra import Spectrum, apply_errors, multispectrum, sample_erroneous
from specrecon.sweeps import erec_soundness_sweep, majority_soundness_row

U_ERR = ["0011100010", "0111000101", "1100001011", "1100011110", "1000101101", "0001011011", "0010110111"]
W2_ERR = "0011100010110111"


def test_majority():
    assert majority("0110") == "0"
    assert majority(["1", "1", "0"]) == "1"
    assert majority("ab" + "b") == "b"
    with pytest.raises(ValueError):
        majority([])


def test_example_majority_reconstruction():
    out = reconstruct_majority(U_ERR, 3, 1)
    assert out.value == W2_ERR and out.semantics == "W2"
    assert out.details["order"] == U_ERR
    assert dist(out.value, X_ERR) == 1 and out.value[0] != X_ERR[0] and out.value[1:] == X_ERR[1:]
    spec = Spectrum.of(U_ERR, 10, range(1, 8))
    assert w2_oracle(X_ERR, spec) == W2_ERR == w2(X_ERR, 10, list(zip(range(1, 8), U_ERR)))


def test_example_string_distance():
    # the example string is (9,4)-distant; the stronger (9,5) condition fails
    assert distant(X_ERR, 9, 4)
    assert not distant(X_ERR, 9, 5)


def test_example_overlap_distances():
    pre = [u[:9] for u in U_ERR]
    suf = [u[1:] for u in U_ERR]
    assert dist(suf[2], pre[3]) == 2
    for i in range(6):
        assert [j for j in range(7) if j != i and dist(suf[i], pre[j]) <= 2] == [i + 1]
    assert all(dist(pre[0], suf[j]) >= 3 for j in range(1, 7))


def test_majority_parameter_checks():
    with pytest.raises(ParameterError):
        reconstruct_majority(U_ERR, 5, 1)
    with pytest.raises(ReconstructionError):
        reconstruct_majority([], 0, 1)
    with pytest.raises(ReconstructionError) as e:
        reconstruct_majority(multispectrum("0" * 12, 5).reads, 1, 1)
    assert e.value.reason == "no-unique-head"


def _distant_pool(n, L, d):
    out = []
    for chunk in all_strings_chunks(n):
        out.extend(to_bits(int(v), n) for v in chunk[min_window_distance(chunk, n, L) >= d])
    return out


# (9,5)-distant strings of length 12; windows this far apart only exist for long reads
POOL_12_10 = _distant_pool(12, 9, 5)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(POOL_12_10), st.integers(0, 4), st.integers(0, 10**6))
def test_majority_matches_oracle(w, t, seed):
    U = sample_erroneous(w, 10, t, 1, seed)
    assert reconstruct_majority(U.without_provenance(), t, 1).value == w2_oracle(w, U)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(POOL_12_10), st.integers(0, 4), st.integers(0, 10**6))
def test_majority_read_ordering(w, t, seed):
    U = sample_erroneous(w, 10, t, 1, seed)
    reads = [r for _, r in U.by_position()]
    for i, a in enumerate(reads):
        for j, b in enumerate(reads):
            if i != j:
                d = dist(a[1:], b[:-1])
                assert (d <= 2) == (j == i + 1)


def test_majority_row_small():
    row = majority_soundness_row(12, 10, seeds=30)
    assert row.strings > 0 and row.failures == 0


def test_erec_params():
    with pytest.raises(ParameterError):
        ErecParams(16, 8, 4, 1)
    p = ErecParams(18, 10, 2, 1)
    assert p.threshold == 3 and p.search_feasible
    assert not ErecParams(18, 10, 3, 1).search_feasible


def _erec_rows(n):
    return [(L, t) for L in range(3, n + 1) for t in range(L) if 2 * t < L and L - t - 1 >= 1]


@settings(max_examples=300)
@given(st.integers(6, 18).flatmap(lambda n: st.tuples(st.text("01", min_size=n, max_size=n),
                                                       st.sampled_from(_erec_rows(n)),
                                                       st.integers(0, 2))))
def test_check_erec_matches_definition(case):
    w, (L, t), s = case
    assert bool(check_erec(w, L, t, s)) == lrec(w, L, t, thr=2 * s + 1)


def test_count_erec_matches_oracle():
    n = 11
    for L, t in _erec_rows(n):
        for s in (1, 2):
            assert count_erec(n, L, t, s) == sum(lrec(w, L, t, 2 * s + 1) for w in all_strings(n))


def test_zero_radius_is_lrec():
    for n in (12, 14):
        for L in range(3, n + 1):
            for t in range(L):
                if 2 * t < L and LrecParams.admissible(n, L, t):
                    assert count_erec(n, L, t, 0) == count_lrec(n, L, t)


def test_unit_radius_refines_lrec():
    n = 14
    strict = 0
    for L in range(3, n + 1):
        for t in range(L):
            if 2 * t < L and LrecParams.admissible(n, L, t):
                for chunk in all_strings_chunks(n):
                    a = erec_mask(chunk, n, L, t, 1)
                    from specrecon.lossy import lrec_mask
                    b = lrec_mask(chunk, n, L, t)
                    assert not (a & ~b).any()
                    strict += int((b & ~a).any())
    assert strict > 0


def test_check_erec_report():
    assert check_erec(X, 8, 1, 0)
    rep = check_erec(X, 8, 1, 1)
    assert not rep and rep.constraint == 1 and rep.window_len == 7


@settings(max_examples=100)
@given(st.text("01", min_size=2, max_size=14), st.data())
def test_striping_ball(w, data):
    k = data.draw(st.integers(0, len(w) - 1))
    want = {w[i:len(w) - j] for i in range(len(w)) for j in range(len(w)) if i + j <= k}
    assert striping_ball(w, k) == want
    assert all(len(v) >= len(w) - k for v in want)


def test_striping_ball_errors():
    with pytest.raises(ValueError):
        striping_ball("0101", 4)


def test_consensus_views():
    v = consensus([(1, "0110"), (2, "1100"), (3, "1000")])
    assert v.has_consensus and v.value == "011000" and v.first == 1 and v.size == 6
    bad = consensus([(1, "0110"), (2, "0100")])
    assert not bad.has_consensus and bad.value is None and bad.disagreements == [2]
    with pytest.raises(ValueError):
        consensus([(1, "01"), (5, "10")])
    with pytest.raises(ValueError):
        consensus([])


def test_w3_oracle_error_free():
    U = multispectrum(X, 8)
    assert w3_oracle(U, 2) == (frozenset({X}), 9)
    assert w3_oracle_detail(U, 2) == [(X, 1)]


def test_erec_error_free_returns_string():
    w = "011011110001000011"
    out = reconstruct_erec(multispectrum(w, 10).without_provenance(), 1, 1)
    assert out.value == w and out.details["rho"] == 0 and out.semantics == "W3"


def test_erec_corrupted_boundary_read():
    w = "011011110001000011"
    assert check_erec(w, 10, 1, 1)
    U = apply_errors(multispectrum(w, 10), {1: [5]})
    values, size = w3_oracle(U, 1)
    out = reconstruct_erec(U.without_provenance(), 1, 1)
    assert out.value == w[1:] and values == {w[1:]} and size == 8
    assert out.details["rho"] == 1 and out.details["r"] == 2


def test_erec_flip_at_uncovered_end_is_kept():
    # a symbol covered by one read only cannot be outvoted; the full set is still a consensus
    w = "011011110001000011"
    U = apply_errors(multispectrum(w, 10), {1: [1]})
    out = reconstruct_erec(U.without_provenance(), 1, 1)
    assert out.value == "1" + w[1:] and w3_oracle(U, 1) == (frozenset({out.value}), 9)


def test_erec_strict_regime():
    w = "011011110001000011"
    U = multispectrum(w, 10).without_provenance()
    with pytest.raises(ParameterError):
        reconstruct_erec(U, 3, 1)
    assert reconstruct_erec(U, 3, 1, strict=False).value == w


def test_erec_sweep_slice():
    cases = erec_soundness_sweep(((18, 10, 1, 1), (18, 11, 2, 1)), per_row=4, seed=7)
    assert len(cases) == 8
    for c in cases:
        assert c.matches_oracle and c.long_enough and c.central_ok and c.r_ok


def test_erec_output_reads_are_windows():
    rng = random.Random(11)
    pool = [to_bits(int(v), 18) for chunk in all_strings_chunks(18) for v in chunk[erec_mask(chunk, 18, 11, 2, 1)]]
    for w in rng.sample(pool, 6):
        U = sample_erroneous(w, 11, 2, 1, rng.randrange(10**6))
        out = reconstruct_erec(U.without_provenance(), 2, 1)
        ws = set(wins(out.value, 11))
        kept = [r for r in U.reads if r in ws]
        assert len(kept) >= len(U) - 2
        assert len(out.value) >= 18 - 2


def test_search_state_bounds():
    w = "011011110001000011"
    for i in range(1, 10):
        for k in range(1, 11):
            st_ = erec_search_state(apply_errors(multispectrum(w, 10), {i: [k]}).reads, 1)
            assert st_.r <= 3
            assert st_.alpha == 1 - math.ceil((st_.r - 1) / 2) + 1


def test_pairs_for_two_flips():
    w = "011011110001000011"
    for i, j in itertools.combinations(range(1, 10), 2):
        U = apply_errors(multispectrum(w, 10), {i: [5], j: [6]})
        values, _ = w3_oracle(U, 2)
        try:
            out = reconstruct_erec(U.without_provenance(), 2, 1, strict=True)
        except ReconstructionError:
            assert not values
            continue
        assert out.value in values
