"""Closed-form power penalties and SNR-cost curves.

Superimposing separately clipped chords raises the mean optical power by
the sum of the square roots of the chord sizes, relative to a single
chord with the same total subcarrier count. At equal optical power that
ratio r costs 10*log10(r) optically and 20*log10(r) in electrical SNR.
Halving chord sizes forever drives r to 1 + sqrt(2), about 7.7 dB
electrical.

The SNR-cost curves compare schemes at a fixed bit rate and unit mean
optical power: cost is the extra receiver SNR a scheme needs to hold a
target BER, relative to 4-QAM on a single odd-subcarrier chord at unity
spectral efficiency. Spectral efficiency is counted in the biased
all-subcarrier system's units: m-QAM on every subcarrier is log2(m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import ndtri

from . import metrics
from .eaco import make_plan

__all__ = [
    "PenaltyTable",
    "CostPoint",
    "chord_penalty",
    "penalty_for_chord_count",
    "penalty_asymptote",
    "evm_target_nearest_neighbor",
    "snr_cost_curve",
    "LITERATURE_POINTS",
]


@dataclass(frozen=True)
class PenaltyTable:
    """Optical-power ratio of chord superposition and its dB penalties."""

    chord_sizes: tuple[int, ...]
    power_ratio: float
    optical_db: float
    electrical_db: float


@dataclass(frozen=True)
class CostPoint:
    scheme: str
    order: int
    spectral_efficiency: float
    cost_db: float


def chord_penalty(chord_sizes: list[int] | tuple[int, ...]) -> PenaltyTable:
    """Penalty of splitting a band into chords of the given sizes."""
    sizes = tuple(int(s) for s in chord_sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("chord sizes must be positive")
    ratio = sum(math.sqrt(s) for s in sizes) / math.sqrt(sum(sizes))
    return PenaltyTable(
        chord_sizes=sizes,
        power_ratio=ratio,
        optical_db=10.0 * math.log10(ratio),
        electrical_db=20.0 * math.log10(ratio),
    )


def penalty_for_chord_count(chord_count: int, band_limit: int = 64) -> PenaltyTable:
    """Penalty for chords 0..chord_count-1 filling a band from the bottom."""
    plans = make_plan(chord_count, band_limit=band_limit)
    return chord_penalty([p.n_bins for p in plans])


def penalty_asymptote() -> float:
    """Electrical penalty limit (dB) for infinitely many halving chords."""
    # sizes N/2, N/4, ...: ratio -> (1/sqrt(2)) / (1 - 1/sqrt(2)) = 1 + sqrt(2)
    return 20.0 * math.log10(1.0 + math.sqrt(2.0))


def evm_target_nearest_neighbor(order: int, ber: float) -> float:
    """Closed-form EVM (dB) for a Gray QAM BER, nearest-neighbor term only.

    Agrees with the Monte-Carlo inversion to about 0.01 dB at 1e-3.
    """
    m = int(round(math.sqrt(order)))
    k = int(round(math.log2(order)))
    if m * m != order:
        raise ValueError("order must be a square")
    scaled = ber * k / (4.0 * (1.0 - 1.0 / m))
    if not 0.0 < scaled < 0.5:
        raise ValueError("BER out of range for this order")
    z = float(ndtri(1.0 - scaled))
    eps = math.sqrt(3.0 / (order - 1)) / z
    return 20.0 * math.log10(eps)


def _noise_budget(scheme: str, order: int, chord_count: int, ber: float,
                  evm_fn) -> tuple[float, float]:
    """(spectral efficiency, tolerable noise density) at fixed bit rate.

    Derivation sketch, all at unit mean optical power and bit rate 1:
    a chord set occupying u complex slots per second with per-slot
    amplitude A has optical power proportional to the sum over chords of
    sqrt(u_c), so A^2 = 4*pi / (sum_c sqrt(u_c))^2 per unit time. The
    post-correction EVM is 4*N0/A^2 (the 2x gain correction doubles the
    noise), so the tolerable N0 is eps^2 * pi / (2*(sum sqrt(u_c))^2).
    """
    if scheme == "pam":
        # unipolar M-level PAM, levels k*d with mean (M-1)d/2 = 1;
        # Gray nearest-neighbor BER and one real decision per dimension
        m = order
        k = math.log2(m)
        if k != int(k) or m < 2:
            raise ValueError("PAM level count must be a power of two")
        z = float(ndtri(1.0 - ber * m * k / (2.0 * (m - 1))))
        n0 = 2.0 / ((m - 1) ** 2 * z * z)
        return k, n0

    eps = 10.0 ** (evm_fn(order, ber) / 20.0)
    k = math.log2(order)
    if scheme == "aco":
        chord_count = 1
    if scheme not in ("aco", "eaco"):
        raise ValueError(f"no closed-form noise budget for scheme '{scheme}'")
    fill = 1.0 - 2.0 ** (-chord_count)
    se = fill * k
    q = sum(2.0 ** (-(c + 1) / 2.0) for c in range(chord_count))
    n0 = eps * eps * math.pi * se / (2.0 * q * q)
    return se, n0


def snr_cost_curve(scheme: str, orders: tuple[int, ...] | None = None, *,
                   chord_count: int = 3, ber: float = 1e-3,
                   dco_required_snr_db: dict[int, float] | None = None,
                   dco_baseline_snr_db: float | None = None,
                   use_monte_carlo: bool = False) -> list[CostPoint]:
    """Extra SNR over the unity-efficiency 4-QAM reference, per order.

    aco, eaco and pam come from the closed noise budget above (or the
    Monte-Carlo QAM requirement when use_monte_carlo is set). dco needs
    measured required SNRs from a bias sweep, plus the measured reference
    requirement on the same noise axis.
    """
    if orders is None:
        orders = (2, 4, 8, 16, 32) if scheme == "pam" else (4, 16, 64, 256, 1024)
    evm_fn = (
        (lambda order, b: metrics.evm_target_for_ber(order, b))
        if use_monte_carlo else evm_target_nearest_neighbor
    )

    if scheme == "dco":
        if dco_required_snr_db is None or dco_baseline_snr_db is None:
            raise ValueError(
                "dco costs need measured required SNRs and the measured baseline"
            )
        return [
            CostPoint("dco", m, math.log2(m), dco_required_snr_db[m] - dco_baseline_snr_db)
            for m in orders
            if m in dco_required_snr_db
        ]

    if scheme not in ("aco", "eaco", "pam"):
        raise ValueError(f"unknown scheme '{scheme}'")
    _, n0_base = _noise_budget("aco", 4, 1, ber, evm_fn)
    out = []
    for m in orders:
        se, n0 = _noise_budget(scheme, m, chord_count, ber, evm_fn)
        out.append(CostPoint(scheme, m, se, 10.0 * math.log10(n0_base / n0)))
    return out


# Reported results for other layered unipolar schemes, for annotating
# cost-versus-efficiency plots. Values are the published sensitivity gaps
# below an optimally biased all-subcarrier system at 87.5% of its
# spectral efficiency.
LITERATURE_POINTS = {
    "eu-ofdm": {64: 1.5, 256: 2.0, 1024: 3.0},
    "see-ofdm": {"note": "lowest reported cost near 3 bit/s/Hz"},
    "ado-ofdm": {"note": "tracks the layered-chord trend with an unsliced-"
                         "cancellation noise penalty"},
}
