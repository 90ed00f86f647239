from __future__ import annotations

import random
from collections import Counter, defaultdict

import pytest
from hypothesis import given, settings, strategies as st

from oracles import X, all_strings, distant, spectrum_key, wins
from specrecon.spectra import (ErrorChannelSpec, LossChannelSpec, Spectrum, apply_errors, apply_losses,
                               enumerate_loss_subsets, is_erroneous_spectrum, is_loss_spectrum,
                               loss_ball_size, multispectrum, sample_erroneous)

S6 = ["010000", "100000", "000001", "000011", "000111", "001110", "011101", "111011", "110111",
      "101111", "011111"]
S8 = ["01000001", "10000011", "00000111", "00001110", "00011101", "00111011", "01110111", "11101111",
      "11011111"]


def test_example_multispectra():
    assert multispectrum(X, 6).reads == tuple(sorted(S6))
    assert multispectrum(X, 8).reads == tuple(sorted(S8))
    assert len(multispectrum(X, 6)) == 11


def test_provenance_matches_windows():
    U = multispectrum(X, 5)
    for p, r in U.by_position():
        assert X[p - 1:p + 4] == r


def test_text_round_trip_and_multiplicity():
    U = multispectrum("0000000", 3)
    assert U.reads == ("000",) * 5
    back = Spectrum.from_text(U.to_text())
    assert back == U.without_provenance()
    shuffled = Spectrum.from_text("L=3\n111\n\n000\n000\n")
    assert shuffled.reads == ("000", "000", "111")


@pytest.mark.parametrize("text", ["", "111\n", "L=x\n01\n", "L=3\n01\n", "L=2\n0a\n"])
def test_text_rejects_bad_input(text):
    with pytest.raises(ValueError):
        Spectrum.from_text(text)


def test_without_provenance_hides_order():
    U = multispectrum(X, 8).without_provenance()
    with pytest.raises(ValueError):
        U.by_position()


def test_channel_specs():
    with pytest.raises(ValueError):
        LossChannelSpec(5, -1)
    with pytest.raises(ValueError):
        ErrorChannelSpec(5, 1, -1)
    assert ErrorChannelSpec(10, 4, 1).reconstructible
    assert not ErrorChannelSpec(10, 5, 1).reconstructible


@settings(max_examples=150)
@given(st.text("01", min_size=2, max_size=24), st.data())
def test_losses_then_readd_restores_spectrum(w, data):
    L = data.draw(st.integers(1, len(w)))
    full = multispectrum(w, L)
    m = len(full)
    drop = data.draw(st.sets(st.integers(1, m), max_size=m))
    U = apply_losses(full, drop)
    dropped = [w[p - 1:p - 1 + L] for p in drop]
    assert Counter(U.reads) + Counter(dropped) == Counter(full.reads)
    assert is_loss_spectrum(U, w, len(drop))
    if drop:
        assert not is_loss_spectrum(U, w, len(drop) - 1)


def test_apply_losses_rejects_unknown_positions():
    with pytest.raises(ValueError):
        apply_losses(multispectrum(X, 8), [10])


def test_loss_ball_enumeration_is_exhaustive():
    subsets = list(enumerate_loss_subsets(X, 8, 3))
    assert len(subsets) == loss_ball_size(16, 8, 3) == 1 + 9 + 36 + 84
    drops = {tuple(sorted(set(range(1, 10)) - set(U.provenance))) for U in subsets}
    assert len(drops) == len(subsets)
    assert all(is_loss_spectrum(U, X, 3) for U in subsets)


def test_loss_ball_sampling_above_cap():
    a = [U.provenance for U in enumerate_loss_subsets(X, 4, 6, cap=50, seed=3)]
    b = [U.provenance for U in enumerate_loss_subsets(X, 4, 6, cap=50, seed=3)]
    assert len(a) == 50 and a == b
    assert all(len(p) >= 13 - 6 for p in a)


def test_apply_errors_flips_only_listed_symbols():
    full = multispectrum(X, 6)
    U = apply_errors(full, {1: [1], 11: [2, 6]})
    pos = dict(U.by_position())
    assert pos[1] == "110000" and pos[11] == "001110"
    assert pos[5] == full.by_position()[4][1]
    with pytest.raises(ValueError):
        apply_errors(full, {1: [7]})


@settings(max_examples=200)
@given(st.text("01", min_size=4, max_size=24), st.data())
def test_sampled_erroneous_spectrum_is_in_ball(w, data):
    L = data.draw(st.integers(1, len(w)))
    t = data.draw(st.integers(0, 4))
    s = data.draw(st.integers(0, 3))
    seed = data.draw(st.integers(0, 10**6))
    U = sample_erroneous(w, L, t, s, seed)
    assert is_erroneous_spectrum(U, w, t, s)
    assert U == sample_erroneous(w, L, t, s, seed)
    if s == 0 or t == 0:
        assert U == multispectrum(w, L)


def test_erroneous_example_membership():
    from oracles import X_ERR
    U = ["0011100010", "0111000101", "1100001011", "1100011110", "1000101101", "0001011011", "0010110111"]
    spec = Spectrum.of(U, 10, range(1, 8))
    assert is_erroneous_spectrum(spec, X_ERR, 3, 1)
    assert not is_erroneous_spectrum(spec, X_ERR, 2, 1)
    bad = [i + 1 for i, (r, c) in enumerate(zip(U, wins(X_ERR, 10))) if r != c]
    assert bad == [1, 3, 4]


def test_random_draws_are_roughly_uniform_over_error_count():
    counts = Counter()
    for seed in range(600):
        U = sample_erroneous(X, 8, 2, 1, seed)
        counts[sum(a != b for a, b in zip(sorted(U.by_position()), multispectrum(X, 8).by_position()))] += 1
    assert set(counts) == {0, 1, 2}
    assert min(counts.values()) > 120


@pytest.mark.parametrize("n,L", [(8, 3), (10, 4), (10, 5)])
def test_unique_strings_have_unique_spectra(n, L):
    groups = defaultdict(list)
    for w in all_strings(n):
        groups[spectrum_key(w, L)].append(w)
    for w in all_strings(n):
        if distant(w, L - 1, 1):
            assert groups[spectrum_key(w, L)] == [w]
    # the library spectrum agrees with the oracle's key
    rng = random.Random(n * L)
    for w in rng.sample(all_strings(n), 20):
        assert multispectrum(w, L).reads == spectrum_key(w, L)


def test_error_draws_do_not_depend_on_the_string():
    from specrecon.spectra import sample_errors
    for seed in range(30):
        edits = sample_errors(9, 8, 3, 2, random.Random(seed))
        for w in (X, X[::-1], "0" * 16):
            assert sample_erroneous(w, 8, 3, 2, seed) == apply_errors(multispectrum(w, 8), edits)
