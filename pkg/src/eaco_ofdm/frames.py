"""Real-valued multicarrier frames and the transforms between domains.

A frame is one block of n_fft real samples. Its one-sided spectrum holds
n_fft/2 + 1 complex bins, scaled so that a bin value equals the complex
amplitude of that subcarrier: a pure cosine of amplitude A at bin k
transforms to bin value A. The DC and Nyquist bins are real by
construction and must stay real for the inverse to exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RealFrame",
    "SpectrumFrame",
    "FrameStream",
    "forward_real_transform",
    "inverse_real_transform",
    "clip_at_zero",
    "superimpose",
    "concatenate_stream",
]

# DC/Nyquist bins may pick up a vanishing imaginary part from upstream
# complex arithmetic; anything above this (relative) is a real error.
_REAL_BIN_TOL = 1e-12


def check_transform_size(n_fft: int) -> None:
    """Reject transform sizes that are not powers of two >= 4."""
    if n_fft < 4 or (n_fft & (n_fft - 1)) != 0:
        raise ValueError(f"transform size must be a power of two >= 4, got {n_fft}")


@dataclass
class RealFrame:
    """One block of real time-domain samples."""

    samples: np.ndarray
    symbol_index: int = 0

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        if self.samples.ndim != 1:
            raise ValueError("frame samples must be one-dimensional")
        check_transform_size(len(self.samples))

    @property
    def n_fft(self) -> int:
        return len(self.samples)


@dataclass
class SpectrumFrame:
    """One-sided spectrum of a real frame, bin value = subcarrier amplitude."""

    bins: np.ndarray
    symbol_index: int = 0

    def __post_init__(self):
        self.bins = np.asarray(self.bins, dtype=complex)
        if self.bins.ndim != 1:
            raise ValueError("spectrum bins must be one-dimensional")
        check_transform_size(2 * (len(self.bins) - 1))

    @property
    def n_fft(self) -> int:
        return 2 * (len(self.bins) - 1)


@dataclass
class FrameStream:
    """A block of frames, row per symbol, plus optional power-control state.

    power_scales records the per-frame divisor applied by power
    normalization; receivers need it to restore constellation scale.
    """

    frames: np.ndarray
    cp_length: int = 0
    power_scales: np.ndarray | None = field(default=None)

    def __post_init__(self):
        self.frames = np.atleast_2d(np.asarray(self.frames, dtype=float))
        check_transform_size(self.frames.shape[1])
        if self.cp_length < 0 or self.cp_length >= self.frames.shape[1]:
            raise ValueError("cyclic prefix length out of range")
        if self.power_scales is not None:
            self.power_scales = np.asarray(self.power_scales, dtype=float)
            if self.power_scales.shape != (self.frames.shape[0],):
                raise ValueError("power_scales must hold one entry per frame")

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    @property
    def n_fft(self) -> int:
        return self.frames.shape[1]

    def scales(self) -> np.ndarray:
        """Per-frame power divisor, unity when no normalization ran."""
        if self.power_scales is None:
            return np.ones(self.n_frames)
        return self.power_scales


# ---------------------------------------------------------------------------
# batched kernels: the chains work on (n_frames, n_fft) arrays; the public
# per-frame operations below are thin wrappers over the same math.
# ---------------------------------------------------------------------------

def spectrum_of(samples: np.ndarray) -> np.ndarray:
    """One-sided amplitude spectrum of real rows (batched rfft)."""
    samples = np.atleast_2d(samples)
    n = samples.shape[-1]
    x = np.fft.rfft(samples, axis=-1)
    x[..., 1:-1] *= 2.0 / n
    x[..., 0] /= n
    x[..., -1] /= n
    # rfft leaves an exact zero imaginary part here; pin it anyway so the
    # real-bin invariant survives later arithmetic
    x[..., 0] = x[..., 0].real
    x[..., -1] = x[..., -1].real
    return x


def samples_of(bins: np.ndarray) -> np.ndarray:
    """Real rows whose amplitude spectrum equals the given bins."""
    bins = np.atleast_2d(bins)
    n = 2 * (bins.shape[-1] - 1)
    y = np.array(bins, dtype=complex)
    y[..., 1:-1] *= n / 2.0
    y[..., 0] *= n
    y[..., -1] *= n
    return np.fft.irfft(y, n=n, axis=-1)


def forward_real_transform(frame: RealFrame) -> SpectrumFrame:
    """Time samples to one-sided amplitude spectrum."""
    return SpectrumFrame(spectrum_of(frame.samples)[0], frame.symbol_index)


def inverse_real_transform(spectrum: SpectrumFrame) -> RealFrame:
    """Amplitude spectrum back to time samples.

    Rejects spectra whose DC or Nyquist bin carries an imaginary part: no
    real frame has one.
    """
    bins = spectrum.bins
    limit = _REAL_BIN_TOL * max(1.0, float(np.max(np.abs(bins))))
    if abs(bins[0].imag) > limit or abs(bins[-1].imag) > limit:
        raise ValueError("DC and Nyquist bins must be real")
    return RealFrame(samples_of(bins)[0], spectrum.symbol_index)


def clip_at_zero(frame: RealFrame) -> RealFrame:
    """Zero every negative sample, the unipolar (intensity) constraint."""
    return RealFrame(np.maximum(frame.samples, 0.0), frame.symbol_index)


def superimpose(frames: list[RealFrame]) -> RealFrame:
    """Sample-wise sum of equally sized frames."""
    if not frames:
        raise ValueError("nothing to superimpose")
    n = frames[0].n_fft
    if any(f.n_fft != n for f in frames):
        raise ValueError("superimposed frames must share a transform size")
    total = np.zeros(n)
    for f in frames:
        total += f.samples
    return RealFrame(total, frames[0].symbol_index)


def concatenate_stream(stream: FrameStream) -> np.ndarray:
    """Serialize a stream to one sample vector, cyclic prefixes included."""
    if stream.cp_length == 0:
        return stream.frames.reshape(-1)
    with_cp = np.concatenate(
        [stream.frames[:, -stream.cp_length:], stream.frames], axis=1
    )
    return with_cp.reshape(-1)
