"""Chord-layered unipolar OFDM: transmitter and cancelling receiver.

Chord c occupies the subcarriers 2^c * h for odd h, up to a band limit.
Each chord's frame is clipped at zero on its own, which exactly halves
the chord's own subcarrier amplitudes and drops all clipping products
onto bins the chord does not use: DC, and even multiples of its
fundamental. Chord 0 therefore lands its distortion on the bins of
chords 1 and up, chord 1 on chords 2 and up, and so on. The clipped
chords are superimposed and sent as one unipolar waveform.

The receiver walks the chords in order. Chord 0's bins are clean, so its
symbols are read (with the 2x clipping-gain correction), hard-decided,
and used to rebuild the exact clipped waveform chord 0 contributed; that
waveform is subtracted from the received samples before chord 1 is read.
With correct decisions the cancellation is exact. A single chord 0 plan
is the plain odd-subcarrier reference system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import metrics, qam
from .frames import FrameStream, RealFrame, check_transform_size, samples_of, spectrum_of

__all__ = [
    "ChordPlan",
    "EacoTxConfig",
    "TxRecord",
    "ChordResult",
    "RxReport",
    "make_plan",
    "build_chord_frame",
    "transmit",
    "cancel_and_extract",
    "read_chord_raw",
    "receive",
    "spectral_efficiency",
    "gross_bit_rate",
]


@dataclass(frozen=True)
class ChordPlan:
    """One chord: a fundamental bin and its odd harmonics within the band."""

    chord_index: int
    band_limit: int = 64
    qam_order: int = 4

    def __post_init__(self):
        if self.chord_index < 0:
            raise ValueError("chord index must be non-negative")
        if self.band_limit < 1:
            raise ValueError("band limit must be positive")
        if self.fundamental_bin > self.band_limit:
            raise ValueError(
                f"chord {self.chord_index} has no bins inside band {self.band_limit}"
            )
        qam.constellation(self.qam_order)  # validates the order

    @property
    def fundamental_bin(self) -> int:
        return 2 ** self.chord_index

    def occupied_bins(self) -> np.ndarray:
        """Bins 2^c * h for odd h, ascending, DC excluded."""
        f = self.fundamental_bin
        return np.arange(f, self.band_limit + 1, 2 * f)

    @property
    def n_bins(self) -> int:
        return len(self.occupied_bins())

    @property
    def bits_per_symbol(self) -> int:
        return self.n_bins * qam.constellation(self.qam_order).bits_per_symbol


def make_plan(chord_count: int, band_limit: int = 64,
              qam_order: int = 4) -> tuple[ChordPlan, ...]:
    """Chords 0..chord_count-1 over a shared band and constellation."""
    if chord_count < 1:
        raise ValueError("need at least one chord")
    return tuple(
        ChordPlan(c, band_limit, qam_order) for c in range(chord_count)
    )


@dataclass(frozen=True)
class EacoTxConfig:
    """Transmitter settings for one block."""

    n_fft: int = 1024
    chords: tuple[ChordPlan, ...] = field(default_factory=lambda: make_plan(3))
    symbols_per_block: int = 256
    seed: int = 0

    def __post_init__(self):
        check_transform_size(self.n_fft)
        if not self.chords:
            raise ValueError("no chords configured")
        idx = [p.chord_index for p in self.chords]
        # ascending order is what makes successive cancellation valid: a
        # chord's clipping products only ever land on higher-indexed bins
        if len(set(idx)) != len(idx) or idx != sorted(idx):
            raise ValueError("chord indices must be distinct and ascending")
        if self.symbols_per_block < 1:
            raise ValueError("need at least one symbol per block")
        top = max(p.occupied_bins().max() for p in self.chords)
        if top > self.n_fft // 2:
            raise ValueError("band limit exceeds the transform's one-sided bins")

    @property
    def bits_per_block(self) -> int:
        return self.symbols_per_block * sum(p.bits_per_symbol for p in self.chords)


@dataclass
class TxRecord:
    """Everything the receiver and the metrics need to score a block."""

    config: EacoTxConfig
    bits: np.ndarray
    chord_symbols: dict[int, np.ndarray]
    clip_fraction: float
    mean_optical_power: float


@dataclass
class ChordResult:
    chord_index: int
    constellation: np.ndarray   # gain-corrected points, pre-decision
    decisions: np.ndarray
    evm_db: float
    q_db: float
    ber: float
    residual_bin_energy: float  # at this chord's bins, after its cancellation


@dataclass
class RxReport:
    chords: list[ChordResult]
    bits: np.ndarray
    ber: float
    evm_db: float
    q_db: float


def build_chord_frame(plan: ChordPlan, payload_symbols: np.ndarray,
                      n_fft: int, symbol_index: int = 0) -> RealFrame:
    """Bipolar frame carrying one chord's symbols (clip it to transmit)."""
    symbols = np.asarray(payload_symbols, dtype=complex).reshape(-1)
    bins = plan.occupied_bins()
    if symbols.shape != bins.shape:
        raise ValueError("payload length must match the chord's bin count")
    spec = np.zeros(n_fft // 2 + 1, dtype=complex)
    spec[bins] = symbols
    return RealFrame(samples_of(spec)[0], symbol_index)


def _chord_bit_counts(cfg: EacoTxConfig) -> list[int]:
    return [p.bits_per_symbol * cfg.symbols_per_block for p in cfg.chords]


def transmit(cfg: EacoTxConfig, bits: np.ndarray | None = None) -> tuple[FrameStream, TxRecord]:
    """Map bits onto all chords, clip each chord, superimpose.

    Bit order: chords ascending; within a chord, symbol by symbol, then
    bin by bin. When bits is None a seeded generator supplies them.
    """
    if bits is None:
        rng = np.random.default_rng(cfg.seed)
        bits = rng.integers(0, 2, cfg.bits_per_block, dtype=np.int64)
    bits = np.asarray(bits, dtype=np.int64).reshape(-1)
    if bits.size != cfg.bits_per_block:
        raise ValueError(
            f"expected {cfg.bits_per_block} bits, got {bits.size}"
        )

    s = cfg.symbols_per_block
    waveform = np.zeros((s, cfg.n_fft))
    chord_symbols: dict[int, np.ndarray] = {}
    offset = 0
    clipped_away = 0
    for plan, nbits in zip(cfg.chords, _chord_bit_counts(cfg)):
        chunk = bits[offset:offset + nbits]
        offset += nbits
        symbols = qam.map_bits(chunk, plan.qam_order).reshape(s, plan.n_bins)
        chord_symbols[plan.chord_index] = symbols
        spec = np.zeros((s, cfg.n_fft // 2 + 1), dtype=complex)
        spec[:, plan.occupied_bins()] = symbols
        x = samples_of(spec)
        clipped_away += int(np.count_nonzero(x < 0.0))
        waveform += np.maximum(x, 0.0)

    stream = FrameStream(waveform)
    record = TxRecord(
        config=cfg,
        bits=bits,
        chord_symbols=chord_symbols,
        clip_fraction=clipped_away / (len(cfg.chords) * waveform.size),
        mean_optical_power=float(waveform.mean()),
    )
    return stream, record


def _chord_points(residual: np.ndarray, plan: ChordPlan,
                  scales: np.ndarray) -> np.ndarray:
    """Gain-corrected constellation read off the residual stream."""
    spec = spectrum_of(residual)
    return spec[:, plan.occupied_bins()] * (2.0 * scales[:, None])


def _rebuild_clipped(plan: ChordPlan, points: np.ndarray, n_fft: int,
                     scales: np.ndarray) -> np.ndarray:
    """Clipped chord waveform that full-scale points would have produced."""
    spec = np.zeros((points.shape[0], n_fft // 2 + 1), dtype=complex)
    spec[:, plan.occupied_bins()] = points
    rebuilt = np.maximum(samples_of(spec), 0.0)
    return rebuilt / scales[:, None]


def cancel_and_extract(stream: FrameStream, cfg: EacoTxConfig, chord_index: int,
                       slicing: bool = True) -> tuple[np.ndarray, FrameStream]:
    """Read one chord and subtract its rebuilt clipped waveform.

    Returns the gain-corrected pre-decision points and the residual
    stream for the next chord. With slicing on the rebuild uses hard
    decisions; off, it reuses the raw noisy points, which keeps the
    cancellation linear in the noise.
    """
    plans = {p.chord_index: p for p in cfg.chords}
    if chord_index not in plans:
        raise ValueError(f"chord {chord_index} is not configured")
    plan = plans[chord_index]
    scales = stream.scales()
    points = _chord_points(stream.frames, plan, scales)
    basis = qam.slice_symbols(points, plan.qam_order) if slicing else points
    residual = stream.frames - _rebuild_clipped(plan, basis, cfg.n_fft, scales)
    return points, FrameStream(residual, stream.cp_length, stream.power_scales)


def read_chord_raw(stream: FrameStream, cfg: EacoTxConfig,
                   chord_index: int) -> np.ndarray:
    """Gain-corrected points of one chord with no cancellation at all."""
    plans = {p.chord_index: p for p in cfg.chords}
    if chord_index not in plans:
        raise ValueError(f"chord {chord_index} is not configured")
    return _chord_points(stream.frames, plans[chord_index], stream.scales())


def receive(stream: FrameStream, cfg: EacoTxConfig, record: TxRecord,
            slicing: bool = True) -> RxReport:
    """Successively extract every chord and score it against the record."""
    if stream.n_fft != cfg.n_fft:
        raise ValueError("stream and config disagree on transform size")
    scales = stream.scales()
    residual = stream
    results: list[ChordResult] = []
    decoded_parts: list[np.ndarray] = []
    err_power = 0.0
    ref_power = 0.0
    bit_errors = 0

    offset = 0
    for plan, nbits in zip(cfg.chords, _chord_bit_counts(cfg)):
        tx_symbols = record.chord_symbols[plan.chord_index]
        points, residual = cancel_and_extract(residual, cfg, plan.chord_index,
                                              slicing=slicing)
        decisions = qam.slice_symbols(points, plan.qam_order)
        rx_bits = qam.demap_symbols(points, plan.qam_order)
        tx_bits = record.bits[offset:offset + nbits]
        offset += nbits
        errors = qam.count_bit_errors(tx_bits, rx_bits)
        bit_errors += errors
        decoded_parts.append(rx_bits)

        evm = metrics.compute_evm(points, tx_symbols)
        leftover = spectrum_of(residual.frames)[:, plan.occupied_bins()]
        leftover *= scales[:, None]
        results.append(ChordResult(
            chord_index=plan.chord_index,
            constellation=points,
            decisions=decisions,
            evm_db=evm,
            q_db=metrics.q_from_evm(evm),
            ber=errors / nbits,
            residual_bin_energy=float(np.mean(np.abs(leftover) ** 2)),
        ))
        err_power += np.sum(np.abs(points - tx_symbols) ** 2)
        ref_power += np.sum(np.abs(tx_symbols) ** 2)

    total = 10.0 * np.log10(err_power / ref_power) if err_power > 0.0 else metrics.EVM_FLOOR_DB
    total = max(float(total), metrics.EVM_FLOOR_DB)
    return RxReport(
        chords=results,
        bits=np.concatenate(decoded_parts),
        ber=bit_errors / record.bits.size,
        evm_db=total,
        q_db=metrics.q_from_evm(total),
    )


def spectral_efficiency(chords: tuple[ChordPlan, ...]) -> Fraction:
    """Occupied bins over available bins, as an exact fraction."""
    if not chords:
        raise ValueError("no chords")
    band = chords[0].band_limit
    if any(p.band_limit != band for p in chords):
        raise ValueError("chords disagree on the band limit")
    return Fraction(sum(p.n_bins for p in chords), band)


def gross_bit_rate(chords: tuple[ChordPlan, ...], slot_rate_hz: float) -> float:
    """Gross bit rate when the band's slot rate (symbols/s) is given."""
    band = chords[0].band_limit
    bits_per_use = sum(
        p.n_bins * qam.constellation(p.qam_order).bits_per_symbol for p in chords
    )
    return slot_rate_hz * bits_per_use / band
