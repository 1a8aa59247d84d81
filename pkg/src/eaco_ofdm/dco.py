"""Biased-carrier unipolar OFDM reference chain.

All subcarriers from 1 up to a contiguous limit carry QAM. The bipolar
waveform gets a DC bias B = V_rms * (10^(bias_dB/10) - 1), measured over
the block before clipping, and any residual negative excursions are
clipped at zero. The receiver reads the data bins directly; there is no
deliberate halving, so no 2x gain correction, only the power-control
scale restore.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import metrics, qam
from .frames import FrameStream, check_transform_size, samples_of, spectrum_of

__all__ = [
    "DcoConfig",
    "DcoTxRecord",
    "DcoRxReport",
    "bias_level",
    "dco_transmit",
    "dco_receive",
]


@dataclass(frozen=True)
class DcoConfig:
    """Transmitter settings for one biased-carrier block."""

    n_fft: int = 1024
    n_subcarriers: int = 56
    qam_order: int = 4
    bias_db: float = 6.2
    symbols_per_block: int = 256
    seed: int = 0

    def __post_init__(self):
        check_transform_size(self.n_fft)
        if not 1 <= self.n_subcarriers <= self.n_fft // 2 - 1:
            raise ValueError("subcarrier count does not fit the transform")
        if self.bias_db < 0.0:
            raise ValueError("bias must be non-negative")
        qam.constellation(self.qam_order)

    def occupied_bins(self) -> np.ndarray:
        return np.arange(1, self.n_subcarriers + 1)

    @property
    def bits_per_block(self) -> int:
        k = qam.constellation(self.qam_order).bits_per_symbol
        return self.symbols_per_block * self.n_subcarriers * k


@dataclass
class DcoTxRecord:
    config: DcoConfig
    bits: np.ndarray
    symbols: np.ndarray
    v_rms: float
    b_dc: float
    clip_fraction: float
    mean_optical_power: float


@dataclass
class DcoRxReport:
    constellation: np.ndarray
    decisions: np.ndarray
    bits: np.ndarray
    evm_db: float
    q_db: float
    ber: float


def bias_level(v_rms: float, bias_db: float) -> float:
    """DC level for a bias expressed as 10*log10(1 + B/V_rms)."""
    if v_rms < 0.0:
        raise ValueError("rms level cannot be negative")
    return v_rms * (10.0 ** (bias_db / 10.0) - 1.0)


def dco_transmit(cfg: DcoConfig, bits: np.ndarray | None = None) -> tuple[FrameStream, DcoTxRecord]:
    """Map bits to all contiguous bins, bias the block, clip at zero."""
    if bits is None:
        rng = np.random.default_rng(cfg.seed)
        bits = rng.integers(0, 2, cfg.bits_per_block, dtype=np.int64)
    bits = np.asarray(bits, dtype=np.int64).reshape(-1)
    if bits.size != cfg.bits_per_block:
        raise ValueError(f"expected {cfg.bits_per_block} bits, got {bits.size}")

    s = cfg.symbols_per_block
    symbols = qam.map_bits(bits, cfg.qam_order).reshape(s, cfg.n_subcarriers)
    spec = np.zeros((s, cfg.n_fft // 2 + 1), dtype=complex)
    spec[:, cfg.occupied_bins()] = symbols
    bipolar = samples_of(spec)
    v_rms = float(np.sqrt(np.mean(bipolar ** 2)))
    b_dc = bias_level(v_rms, cfg.bias_db)
    biased = bipolar + b_dc
    waveform = np.maximum(biased, 0.0)
    record = DcoTxRecord(
        config=cfg,
        bits=bits,
        symbols=symbols,
        v_rms=v_rms,
        b_dc=b_dc,
        clip_fraction=float(np.mean(biased < 0.0)),
        mean_optical_power=float(waveform.mean()),
    )
    return FrameStream(waveform), record


def dco_receive(stream: FrameStream, cfg: DcoConfig,
                record: DcoTxRecord) -> DcoRxReport:
    """Read the data bins, undo the power-control scale, score the block."""
    if stream.n_fft != cfg.n_fft:
        raise ValueError("stream and config disagree on transform size")
    spec = spectrum_of(stream.frames)
    points = spec[:, cfg.occupied_bins()] * stream.scales()[:, None]
    decisions = qam.slice_symbols(points, cfg.qam_order)
    rx_bits = qam.demap_symbols(points, cfg.qam_order)
    errors = qam.count_bit_errors(record.bits, rx_bits)
    evm = metrics.compute_evm(points, record.symbols)
    return DcoRxReport(
        constellation=points,
        decisions=decisions,
        bits=rx_bits,
        evm_db=evm,
        q_db=metrics.q_from_evm(evm),
        ber=errors / record.bits.size,
    )
