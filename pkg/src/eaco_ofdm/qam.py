"""Square QAM with per-axis reflected-binary Gray labels.

Constellations are normalized to unit average symbol power. A label's
first half of bits selects the in-phase level, the second half the
quadrature level; the all-zeros label maps to the most positive corner,
so 4-QAM bits 00 give (+1+1j)/sqrt(2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "QamConstellation",
    "map_bits",
    "slice_symbols",
    "demap_symbols",
    "count_bit_errors",
]

SUPPORTED_ORDERS = (4, 16, 64, 256, 1024)


def _gray_decode_scalar_table(m: int) -> np.ndarray:
    out = np.zeros(m, dtype=int)
    for g in range(m):
        n, gg = 0, g
        while gg:
            n ^= gg
            gg >>= 1
        out[g] = n
    return out


@dataclass(frozen=True)
class QamConstellation:
    """Lookup tables for one square QAM order."""

    order: int
    bits_per_symbol: int
    levels_per_axis: int
    axis_scale: float          # divide raw odd-integer levels by this
    points: np.ndarray         # complex point per integer label
    axis_amplitudes: np.ndarray  # normalized level per per-axis Gray label

    @classmethod
    def square(cls, order: int) -> "QamConstellation":
        if order not in SUPPORTED_ORDERS:
            raise ValueError(f"unsupported QAM order {order}")
        m = int(round(np.sqrt(order)))
        k = int(round(np.log2(order)))
        scale = np.sqrt(2.0 * (m * m - 1) / 3.0)
        decode = _gray_decode_scalar_table(m)
        # per-axis Gray label g sits at level index decode[g]; level index 0
        # is the most positive amplitude
        amps = ((m - 1) - 2.0 * decode) / scale
        labels = np.arange(order)
        gi = labels >> (k // 2)
        gq = labels & (m - 1)
        pts = amps[gi] + 1j * amps[gq]
        return cls(order, k, m, scale, pts, amps)

    def mean_power(self) -> float:
        return float(np.mean(np.abs(self.points) ** 2))


_CACHE: dict[int, QamConstellation] = {}


def constellation(order: int) -> QamConstellation:
    if order not in _CACHE:
        _CACHE[order] = QamConstellation.square(order)
    return _CACHE[order]


def map_bits(bits: np.ndarray, order: int) -> np.ndarray:
    """Pack bits (one per entry, first bit most significant) into symbols."""
    c = constellation(order)
    bits = np.asarray(bits, dtype=np.int64).reshape(-1)
    if bits.size % c.bits_per_symbol:
        raise ValueError("bit count is not a multiple of bits per symbol")
    if bits.size and (bits.min() < 0 or bits.max() > 1):
        raise ValueError("bits must be 0 or 1")
    groups = bits.reshape(-1, c.bits_per_symbol)
    weights = 1 << np.arange(c.bits_per_symbol - 1, -1, -1, dtype=np.int64)
    labels = groups @ weights
    return c.points[labels]


def _slice_axis_labels(values: np.ndarray, c: QamConstellation) -> np.ndarray:
    """Nearest level per axis; a tie picks the more negative level."""
    m = c.levels_per_axis
    # level index from amplitude; floor(u + 0.5) rounds half toward the
    # larger index, i.e. the smaller amplitude
    u = ((m - 1) - values * c.axis_scale) / 2.0
    idx = np.floor(u + 0.5).astype(np.int64)
    np.clip(idx, 0, m - 1, out=idx)
    return idx ^ (idx >> 1)  # level index back to Gray label


def slice_labels(symbols: np.ndarray, order: int) -> np.ndarray:
    """Hard-decide integer labels for noisy symbols."""
    c = constellation(order)
    z = np.asarray(symbols, dtype=complex)
    gi = _slice_axis_labels(z.real, c)
    gq = _slice_axis_labels(z.imag, c)
    return (gi << (c.bits_per_symbol // 2)) | gq


def slice_symbols(symbols: np.ndarray, order: int) -> np.ndarray:
    """Replace each noisy symbol with its nearest constellation point."""
    c = constellation(order)
    return c.points[slice_labels(symbols, order)]


def demap_symbols(symbols: np.ndarray, order: int) -> np.ndarray:
    """Hard-decision bits for noisy symbols, inverse of map_bits."""
    c = constellation(order)
    labels = slice_labels(symbols, order)
    shifts = np.arange(c.bits_per_symbol - 1, -1, -1, dtype=np.int64)
    return ((labels.reshape(-1)[:, None] >> shifts) & 1).reshape(-1)


def count_bit_errors(tx_bits: np.ndarray, rx_bits: np.ndarray) -> int:
    tx = np.asarray(tx_bits).reshape(-1)
    rx = np.asarray(rx_bits).reshape(-1)
    if tx.shape != rx.shape:
        raise ValueError("bit streams differ in length")
    return int(np.count_nonzero(tx != rx))
