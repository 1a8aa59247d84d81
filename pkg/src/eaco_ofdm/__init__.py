"""Baseband simulator for unipolar optical OFDM.

The package models intensity-modulated OFDM links where the transmit
waveform must stay non-negative. Three chains are provided:

* a chord-structured scheme that superimposes several zero-clipped
  OFDM signals and recovers them one chord at a time with decision
  feedback (``eaco``),
* the single-chord special case of the same chain (``aco``),
* a DC-biased chain that buys non-negativity with added bias (``dco``).

Alongside the chains there are analytic power-penalty results, EVM and
bit error metrics, noise calibration against a fixed reference point,
spectral estimation, and a seeded sweep harness with a CLI front end.
"""

from .frames import (
    FrameStream,
    RealFrame,
    SpectrumFrame,
    check_transform_size,
    clip_at_zero,
    concatenate_stream,
    forward_real_transform,
    inverse_real_transform,
    samples_of,
    spectrum_of,
    superimpose,
)
from .qam import (
    SUPPORTED_ORDERS,
    QamConstellation,
    constellation,
    count_bit_errors,
    demap_symbols,
    map_bits,
    slice_labels,
    slice_symbols,
)
from .metrics import (
    MetricSet,
    ber_at_evm,
    compute_evm,
    evm_target_for_ber,
    q_from_evm,
)
from .channel import (
    NoiseModel,
    PowerControl,
    add_awgn,
    calibrate_noise,
    normalize_power,
    sigma_for_snr,
)
from .eaco import (
    ChordPlan,
    ChordResult,
    EacoTxConfig,
    RxReport,
    TxRecord,
    cancel_and_extract,
    gross_bit_rate,
    make_plan,
    read_chord_raw,
    receive,
    spectral_efficiency,
    transmit,
)
from .dco import (
    DcoConfig,
    DcoRxReport,
    DcoTxRecord,
    bias_level,
    dco_receive,
    dco_transmit,
)
from .spectrum import estimate_spectrum, sample_rate_of
from .analytics import (
    LITERATURE_POINTS,
    CostPoint,
    PenaltyTable,
    chord_penalty,
    evm_target_nearest_neighbor,
    penalty_asymptote,
    penalty_for_chord_count,
    snr_cost_curve,
)
from .experiments import (
    CSV_COLUMNS,
    ExperimentSpec,
    ResultRow,
    compare_report,
    derived_seed,
    dco_envelope,
    emit,
    pooled_curve,
    read_rows,
    required_snr,
    run_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "FrameStream", "RealFrame", "SpectrumFrame", "check_transform_size",
    "clip_at_zero", "concatenate_stream", "forward_real_transform",
    "inverse_real_transform", "samples_of", "spectrum_of", "superimpose",
    "SUPPORTED_ORDERS", "QamConstellation", "constellation",
    "count_bit_errors", "demap_symbols", "map_bits", "slice_labels",
    "slice_symbols",
    "MetricSet", "ber_at_evm", "compute_evm", "evm_target_for_ber",
    "q_from_evm",
    "NoiseModel", "PowerControl", "add_awgn", "calibrate_noise",
    "normalize_power", "sigma_for_snr",
    "ChordPlan", "ChordResult", "EacoTxConfig", "RxReport", "TxRecord",
    "cancel_and_extract", "gross_bit_rate", "make_plan", "read_chord_raw",
    "receive", "spectral_efficiency", "transmit",
    "DcoConfig", "DcoRxReport", "DcoTxRecord", "bias_level", "dco_receive",
    "dco_transmit",
    "estimate_spectrum", "sample_rate_of",
    "LITERATURE_POINTS", "CostPoint", "PenaltyTable", "chord_penalty",
    "evm_target_nearest_neighbor", "penalty_asymptote",
    "penalty_for_chord_count", "snr_cost_curve",
    "CSV_COLUMNS", "ExperimentSpec", "ResultRow", "compare_report",
    "derived_seed", "dco_envelope", "emit", "pooled_curve", "read_rows",
    "required_snr", "run_experiment",
    "__version__",
]
