"""Error-vector and bit-error figures of merit.

EVM is reported in dB relative to the mean constellation power, floored
at -120 dB so noiseless runs stay finite. Q is simply -EVM(dB), the
signal-quality axis used throughout the result tables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qam

__all__ = [
    "EVM_FLOOR_DB",
    "MetricSet",
    "compute_evm",
    "q_from_evm",
    "ber_at_evm",
    "evm_target_for_ber",
]

EVM_FLOOR_DB = -120.0


@dataclass
class MetricSet:
    """Per-measurement bundle emitted by the receive chains."""

    evm_db: float
    q_db: float
    ber: float
    clip_fraction: float = 0.0
    mean_optical_power: float = float("nan")


def compute_evm(rx_points: np.ndarray, tx_points: np.ndarray,
                floor_db: float = EVM_FLOOR_DB) -> float:
    """Error power over mean constellation power, in dB."""
    rx = np.asarray(rx_points, dtype=complex).reshape(-1)
    tx = np.asarray(tx_points, dtype=complex).reshape(-1)
    if rx.shape != tx.shape:
        raise ValueError("point sets differ in length")
    if rx.size == 0:
        raise ValueError("empty point set")
    ref = np.mean(np.abs(tx) ** 2)
    if ref <= 0.0:
        raise ValueError("reference constellation has no power")
    err = np.mean(np.abs(rx - tx) ** 2)
    if err == 0.0:
        return floor_db
    return max(float(10.0 * np.log10(err / ref)), floor_db)


def q_from_evm(evm_db: float) -> float:
    return -evm_db


def ber_at_evm(order: int, evm_db: float, n_symbols: int,
               rng: np.random.Generator) -> float:
    """Monte-Carlo BER of Gray QAM under circular Gaussian error vectors."""
    c = qam.constellation(order)
    labels = rng.integers(0, order, n_symbols)
    tx = c.points[labels]
    sigma = 10.0 ** (evm_db / 20.0) / np.sqrt(2.0)
    noise = rng.normal(0.0, sigma, n_symbols) + 1j * rng.normal(0.0, sigma, n_symbols)
    decided = qam.slice_labels(tx + noise, order)
    diff = decided ^ labels
    errors = 0
    for b in range(c.bits_per_symbol):
        errors += int(np.count_nonzero((diff >> b) & 1))
    return errors / (n_symbols * c.bits_per_symbol)


def evm_target_for_ber(order: int, ber: float, n_symbols: int = 400_000,
                       seed: int = 20210) -> float:
    """EVM (dB) at which Gray QAM crosses the requested BER.

    Monte-Carlo bisection with a fixed noise realization per order, so the
    result is deterministic for a given seed and sample count.
    """
    if not 0.0 < ber < 0.5:
        raise ValueError("target BER must sit in (0, 0.5)")
    c = qam.constellation(order)
    rng = np.random.default_rng((seed, order))
    labels = rng.integers(0, order, n_symbols)
    tx = c.points[labels]
    unit = rng.normal(0.0, 1.0, n_symbols) + 1j * rng.normal(0.0, 1.0, n_symbols)

    def measured(evm_db: float) -> float:
        sigma = 10.0 ** (evm_db / 20.0) / np.sqrt(2.0)
        decided = qam.slice_labels(tx + sigma * unit, order)
        diff = decided ^ labels
        errors = 0
        for b in range(c.bits_per_symbol):
            errors += int(np.count_nonzero((diff >> b) & 1))
        return errors / (n_symbols * c.bits_per_symbol)

    lo, hi = -45.0, -1.0
    if measured(lo) > ber:
        raise ValueError("target BER unreachable within the search range")
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if measured(mid) > ber:
            hi = mid
        else:
            lo = mid
        if hi - lo < 5e-4:
            break
    return 0.5 * (lo + hi)
