"""Averaged-periodogram spectrum estimation for transmitted streams.

Rectangular window, 50% overlap; the resolution bandwidth fixes the
segment length as sample_rate / rbw (the equivalent noise bandwidth of a
rectangular window). Feeding several independently generated streams
averages their periodograms together.
"""

from __future__ import annotations

import numpy as np

from .frames import FrameStream, concatenate_stream

__all__ = ["sample_rate_of", "estimate_spectrum"]

_PSD_FLOOR = 1e-30


def sample_rate_of(n_fft: int, slot_rate_hz: float, band_limit: int) -> float:
    """Simulation sample rate implied by the band's slot rate.

    band_limit slots per symbol period at slot_rate_hz symbols/s total
    gives a symbol period band_limit/slot_rate_hz and n_fft samples in it.
    """
    if slot_rate_hz <= 0 or band_limit < 1:
        raise ValueError("slot rate and band limit must be positive")
    return n_fft * slot_rate_hz / band_limit


def estimate_spectrum(streams: FrameStream | list[FrameStream],
                      sample_rate: float,
                      resolution_bw: float) -> tuple[np.ndarray, np.ndarray]:
    """One-sided PSD in dB, averaged over 50%-overlapped segments.

    Returns (freq_hz, psd_db). psd is power per Hz; an arbitrary-but-fixed
    reference, so curves are comparable to each other.
    """
    if isinstance(streams, FrameStream):
        streams = [streams]
    if not streams:
        raise ValueError("no streams to analyze")
    if resolution_bw <= 0 or sample_rate <= 0:
        raise ValueError("sample rate and resolution bandwidth must be positive")
    seg = int(round(sample_rate / resolution_bw))
    if seg < 8:
        raise ValueError("resolution bandwidth too wide for this sample rate")

    accum = None
    count = 0
    for stream in streams:
        x = concatenate_stream(stream)
        if len(x) < seg:
            raise ValueError("stream shorter than one segment")
        hop = seg // 2
        n_segs = 1 + (len(x) - seg) // hop
        idx = hop * np.arange(n_segs)[:, None] + np.arange(seg)[None, :]
        segs = x[idx]
        spec = np.fft.rfft(segs, axis=1)
        # one-sided power per Hz: interior bins carry both sides
        p = (np.abs(spec) ** 2) / (seg * sample_rate)
        p[:, 1:-1] *= 2.0
        total = p.sum(axis=0)
        accum = total if accum is None else accum + total
        count += n_segs

    psd = accum / count
    freq = np.fft.rfftfreq(seg, d=1.0 / sample_rate)
    return freq, 10.0 * np.log10(psd + _PSD_FLOOR)
