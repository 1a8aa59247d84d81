import numpy as np
import pytest

from eaco_ofdm import channel, eaco, frames, spectrum


def test_sample_rate_of():
    assert spectrum.sample_rate_of(1024, 10e9, 64) == 160e9
    with pytest.raises(ValueError):
        spectrum.sample_rate_of(1024, -1.0, 64)


def test_pure_tone_lands_on_its_bin():
    fs = 1000.0
    t = np.arange(8192) / fs
    x = np.cos(2 * np.pi * 125.0 * t)
    stream = frames.FrameStream(x.reshape(8, 1024))
    rbw = fs / 256
    freq, psd = spectrum.estimate_spectrum(stream, fs, rbw)
    peak = freq[np.argmax(psd)]
    assert abs(peak - 125.0) <= rbw


def test_psd_integrates_to_mean_power():
    rng = np.random.default_rng(50)
    x = rng.normal(size=(16, 1024))
    stream = frames.FrameStream(x)
    freq, psd_db = spectrum.estimate_spectrum(stream, 1.0e6, 1.0e6 / 128)
    df = freq[1] - freq[0]
    total = np.sum(10.0 ** (psd_db / 10.0)) * df
    assert abs(total - np.mean(x ** 2)) / np.mean(x ** 2) < 0.05


def test_rbw_validation():
    stream = frames.FrameStream(np.zeros((2, 64)))
    with pytest.raises(ValueError):
        spectrum.estimate_spectrum(stream, 1000.0, 500.0)  # segment < 8
    with pytest.raises(ValueError):
        spectrum.estimate_spectrum(stream, 1000.0, 1.0)  # segment > stream


def test_chord_spectrum_dips_between_occupied_groups():
    # with three chords on a 64-slot band the bins at multiples of 8 carry
    # no data; clipping distortion from all three chords partly refills
    # them, so the PSD dips there instead of nulling
    streams = []
    for i in range(8):
        c = eaco.EacoTxConfig(symbols_per_block=64, seed=8 + i)
        streams.append(channel.normalize_power(eaco.transmit(c)[0]))
    slot_rate = 10e9
    fs = spectrum.sample_rate_of(1024, slot_rate, 64)
    spacing = slot_rate / 64  # subcarrier spacing in Hz
    # rbw of one subcarrier spacing puts subcarrier k on psd index k
    freq, psd = spectrum.estimate_spectrum(streams, fs, spacing)
    assert abs(freq[1] - spacing) < 1e-6
    empty = [psd[k] for k in range(8, 64, 8)]
    chord2 = [psd[k] for k in range(4, 64, 8)]
    inband = [psd[k] for k in range(1, 64)]
    outband = psd[80:200]
    assert np.median(empty) < np.median(chord2) - 1.0
    assert np.median(outband) < np.median(inband) - 15.0
