"""Reconstruction of strings from damaged substring spectra, and a codec into substring-distant strings."""
from __future__ import annotations

from .codec import CodecError, CodecParams, count_distant, dec_dist, enc_dist, ld_decode, ld_encode
from .erroneous import ErecParams, check_erec, reconstruct_erec, reconstruct_majority, w2_oracle, w3_oracle
from .harness import RateSweepConfig, ReadCountSpec, monte_carlo_coverage, rate_sweep, required_reads
from .lossy import LrecParams, check_lrec, count_lrec, max_reconstructible_w1, reconstruct_lossy, stitch
from .outcome import ParameterError, ReconstructionError, ReconstructionOutcome, StitchCycleError
from .spectra import ErrorChannelSpec, LossChannelSpec, Spectrum, apply_errors, apply_losses, multispectrum
from .strings import distance_profile, hamming_distance, is_substring_distant, is_substring_unique

__version__ = "0.1.0"
