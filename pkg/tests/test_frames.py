import numpy as np
import pytest

from eaco_ofdm import frames


def test_transform_size_validation():
    for good in (4, 8, 64, 1024):
        frames.check_transform_size(good)
    for bad in (0, 1, 2, 3, 12, 100, -8):
        with pytest.raises(ValueError):
            frames.check_transform_size(bad)


def test_single_bin_is_cosine_amplitude():
    n = 64
    bins = np.zeros(n // 2 + 1, dtype=complex)
    bins[5] = 2.0 - 1.5j
    x = frames.samples_of(bins)[0]
    t = np.arange(n)
    expected = 2.0 * np.cos(2 * np.pi * 5 * t / n) + 1.5 * np.sin(2 * np.pi * 5 * t / n)
    np.testing.assert_allclose(x, expected, atol=1e-12)


def test_round_trip_random_frame():
    rng = np.random.default_rng(11)
    x = rng.normal(size=(7, 256))
    back = frames.samples_of(frames.spectrum_of(x))
    assert np.max(np.abs(back - x)) < 1e-12


def test_round_trip_random_spectrum():
    rng = np.random.default_rng(12)
    n = 128
    bins = rng.normal(size=(5, n // 2 + 1)) + 1j * rng.normal(size=(5, n // 2 + 1))
    bins[:, 0] = bins[:, 0].real
    bins[:, -1] = bins[:, -1].real
    back = frames.spectrum_of(frames.samples_of(bins))
    assert np.max(np.abs(back - bins)) < 1e-12


def test_inverse_rejects_complex_endpoints():
    bins = np.zeros(33, dtype=complex)
    bins[0] = 1j
    with pytest.raises(ValueError):
        frames.inverse_real_transform(
            frames.SpectrumFrame(bins=bins, symbol_index=0))


def test_forward_inverse_frame_objects():
    rng = np.random.default_rng(13)
    frame = frames.RealFrame(samples=rng.normal(size=512), symbol_index=3)
    spec = frames.forward_real_transform(frame)
    assert spec.symbol_index == 3
    back = frames.inverse_real_transform(spec)
    np.testing.assert_allclose(back.samples, frame.samples, atol=1e-12)


def test_odd_bins_give_antiperiodic_waveform():
    # only odd-indexed bins: second half of the frame mirrors the first
    # with opposite sign
    rng = np.random.default_rng(14)
    n = 1024
    bins = np.zeros(n // 2 + 1, dtype=complex)
    odd = np.arange(1, n // 2, 2)
    bins[odd] = rng.normal(size=odd.size) + 1j * rng.normal(size=odd.size)
    x = frames.samples_of(bins)[0]
    assert np.max(np.abs(x[n // 2:] + x[:n // 2])) < 1e-12


def test_clipping_halves_odd_bins_and_spares_them_distortion():
    rng = np.random.default_rng(15)
    n = 1024
    bins = np.zeros(n // 2 + 1, dtype=complex)
    odd = np.arange(1, n // 2, 2)
    bins[odd] = rng.normal(size=odd.size) + 1j * rng.normal(size=odd.size)
    frame = frames.RealFrame(frames.samples_of(bins)[0])
    clipped = frames.clip_at_zero(frame)
    spec = frames.forward_real_transform(clipped).bins
    np.testing.assert_allclose(spec[odd], bins[odd] / 2.0, rtol=1e-10, atol=1e-12)
    # distortion exists but only away from the odd bins
    even = np.arange(0, n // 2 + 1, 2)
    assert np.sum(np.abs(spec[even]) ** 2) > 0


def test_clip_at_zero_statistics():
    # clipping a zero-mean Gaussian keeps the positive half: the mean of
    # the result approaches sigma / sqrt(2*pi)
    rng = np.random.default_rng(16)
    sigma = 1.7
    frame = frames.RealFrame(rng.normal(scale=sigma, size=2 ** 20))
    clipped = frames.clip_at_zero(frame)
    assert np.all(clipped.samples >= 0)
    expected = sigma / np.sqrt(2 * np.pi)
    assert abs(np.mean(clipped.samples) - expected) / expected < 0.01


def test_superimpose_matches_scalar_loop():
    rng = np.random.default_rng(17)
    parts = [frames.RealFrame(rng.normal(size=32)) for _ in range(3)]
    total = frames.superimpose(parts)
    for j in range(32):
        expected = sum(p.samples[j] for p in parts)
        assert total.samples[j] == expected


def test_superimpose_rejects_mismatched_shapes():
    with pytest.raises(ValueError):
        frames.superimpose([frames.RealFrame(np.zeros(8)),
                            frames.RealFrame(np.zeros(16))])
    with pytest.raises(ValueError):
        frames.superimpose([])


def test_concatenate_stream_with_cyclic_prefix():
    rng = np.random.default_rng(18)
    blocks = rng.normal(size=(4, 16))
    stream = frames.FrameStream(frames=blocks, cp_length=4)
    serial = frames.concatenate_stream(stream)
    assert serial.shape == (4 * 20,)
    # each emitted frame starts with a copy of its own tail
    first = serial[:20]
    np.testing.assert_allclose(first[:4], blocks[0, -4:])
    np.testing.assert_allclose(first[4:], blocks[0])


def test_frame_stream_default_scales():
    stream = frames.FrameStream(frames=np.ones((3, 8)))
    np.testing.assert_allclose(stream.scales(), np.ones(3))
