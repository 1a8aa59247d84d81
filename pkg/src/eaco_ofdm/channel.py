"""Optical power control, additive receiver noise, and noise calibration.

The channel model is deliberately plain: the unipolar waveform is scaled
to unit mean optical power in windows of 32 symbols (an automatic power
control), then white Gaussian noise of fixed per-sample deviation is
added to every received sample. The noise axis is calibrated so that the
single-chord odd-subcarrier reference system measures an EVM of 0 dB at
an indicated SNR of 0 dB with 4-QAM; every other system is then read
against that axis at equal optical power.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass

import numpy as np

from .frames import FrameStream

__all__ = [
    "PowerControl",
    "NoiseModel",
    "normalize_power",
    "add_awgn",
    "sigma_for_snr",
    "calibrate_noise",
    "calibration_key",
]

DEFAULT_WINDOW = 32


@dataclass(frozen=True)
class PowerControl:
    """Windowed mean-power normalizer settings."""

    window: int = DEFAULT_WINDOW


@dataclass(frozen=True)
class NoiseModel:
    """Receiver noise: per-sample deviation anchored at the calibrated axis."""

    sigma_ref: float
    snr_db: float = 0.0
    seed: int = 0

    @property
    def sigma(self) -> float:
        return sigma_for_snr(self.sigma_ref, self.snr_db)


def sigma_for_snr(sigma_ref: float, snr_db: float) -> float:
    """Per-sample noise deviation at an indicated SNR."""
    return sigma_ref * 10.0 ** (-snr_db / 20.0)


def normalize_power(stream: FrameStream, window: int = DEFAULT_WINDOW) -> FrameStream:
    """Divide each window of frames by its mean so optical power is one.

    The applied divisors compose with any previous normalization and are
    recorded per frame in the returned stream.
    """
    if window < 1:
        raise ValueError("window must be at least one frame")
    frames = stream.frames
    divisors = np.empty(stream.n_frames)
    for start in range(0, stream.n_frames, window):
        stop = min(start + window, stream.n_frames)
        mean = frames[start:stop].mean()
        if mean <= 0.0:
            raise ValueError("cannot normalize a windowed mean that is not positive")
        divisors[start:stop] = mean
    out = frames / divisors[:, None]
    return FrameStream(out, stream.cp_length, stream.scales() * divisors)


def add_awgn(stream: FrameStream, noise: NoiseModel) -> FrameStream:
    """Add white Gaussian noise of deviation noise.sigma to every sample."""
    rng = np.random.default_rng(noise.seed)
    noisy = stream.frames + rng.normal(0.0, noise.sigma, stream.frames.shape)
    return FrameStream(noisy, stream.cp_length, stream.power_scales)


# ---------------------------------------------------------------------------
# calibration against the single-chord reference system
# ---------------------------------------------------------------------------

def calibration_key(n_fft: int, band_limit: int, qam_order: int,
                    symbols: int, seed: int, tol_db: float) -> str:
    """Stable digest of the calibration configuration."""
    text = json.dumps(
        {
            "n_fft": n_fft,
            "band_limit": band_limit,
            "qam_order": qam_order,
            "symbols": symbols,
            "seed": seed,
            "tol_db": tol_db,
        },
        sort_keys=True,
    )
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def calibrate_noise(n_fft: int = 1024, band_limit: int = 64, qam_order: int = 4,
                    symbols: int = 2048, seed: int = 424242,
                    tol_db: float = 0.01, cache_path: str | None = None) -> float:
    """Per-sample noise deviation that reads as 0 dB EVM at 0 dB SNR.

    The reference is a single-chord odd-subcarrier system at unit mean
    optical power. Bisection runs over a fixed noise realization, so the
    measured EVM is exactly monotone in sigma and the result is
    deterministic; tol_db bounds the final EVM misfit.
    """
    from . import eaco  # local import: eaco pulls in no channel state

    key = calibration_key(n_fft, band_limit, qam_order, symbols, seed, tol_db)
    if cache_path and os.path.exists(cache_path):
        with open(cache_path) as fh:
            cache = json.load(fh)
        if key in cache:
            return float(cache[key]["sigma_ref"])

    cfg = eaco.EacoTxConfig(
        n_fft=n_fft,
        chords=eaco.make_plan(1, band_limit=band_limit, qam_order=qam_order),
        symbols_per_block=symbols,
        seed=seed,
    )
    stream, record = eaco.transmit(cfg)
    stream = normalize_power(stream)
    unit = np.random.default_rng((seed, 1)).normal(0.0, 1.0, stream.frames.shape)

    def evm_at(sigma: float) -> float:
        rx = FrameStream(stream.frames + sigma * unit, stream.cp_length,
                         stream.power_scales)
        report = eaco.receive(rx, cfg, record)
        return report.chords[0].evm_db

    lo, hi = 1e-6, 1e6
    if evm_at(lo) > 0.0 or evm_at(hi) < 0.0:
        raise RuntimeError("calibration target is outside the search bracket")
    sigma = 1.0
    for _ in range(80):
        sigma = np.sqrt(lo * hi)
        evm = evm_at(sigma)
        if abs(evm) <= tol_db:
            break
        if evm > 0.0:
            hi = sigma
        else:
            lo = sigma
    else:
        raise RuntimeError("calibration bisection failed to converge")

    if cache_path:
        cache = {}
        if os.path.exists(cache_path):
            with open(cache_path) as fh:
                cache = json.load(fh)
        cache[key] = {
            "sigma_ref": float(sigma),
            "n_fft": n_fft,
            "band_limit": band_limit,
            "qam_order": qam_order,
            "symbols": symbols,
            "seed": seed,
        }
        with open(cache_path, "w") as fh:
            json.dump(cache, fh, indent=2, sort_keys=True)
    return float(sigma)
