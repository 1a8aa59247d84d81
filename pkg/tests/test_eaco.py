from fractions import Fraction

import numpy as np
import pytest

from eaco_ofdm import channel, eaco, frames, qam


def test_plan_bins_and_counts():
    plans = eaco.make_plan(3)
    assert [p.fundamental_bin for p in plans] == [1, 2, 4]
    assert [p.n_bins for p in plans] == [32, 16, 8]
    np.testing.assert_array_equal(plans[0].occupied_bins()[:3], [1, 3, 5])
    np.testing.assert_array_equal(plans[1].occupied_bins()[:3], [2, 6, 10])
    np.testing.assert_array_equal(plans[2].occupied_bins()[:3], [4, 12, 20])
    assert all(p.occupied_bins().max() <= 64 for p in plans)


def test_plans_are_disjoint():
    plans = eaco.make_plan(5, band_limit=64)
    seen = set()
    for p in plans:
        bins = set(p.occupied_bins().tolist())
        assert not bins & seen
        seen |= bins


def test_config_validation():
    with pytest.raises(ValueError):
        eaco.EacoTxConfig(chords=(eaco.ChordPlan(0), eaco.ChordPlan(0)))
    with pytest.raises(ValueError):
        eaco.EacoTxConfig(n_fft=64, chords=eaco.make_plan(1, band_limit=64))
    with pytest.raises(ValueError):
        eaco.EacoTxConfig(symbols_per_block=0)


def test_build_chord_frame_places_symbols():
    plan = eaco.ChordPlan(1, band_limit=64)
    payload = qam.constellation(4).points[
        np.arange(plan.n_bins) % 4]
    frame = eaco.build_chord_frame(plan, payload, n_fft=256)
    assert frame.samples.shape == (256,)
    spec = frames.spectrum_of(frame.samples)[0]
    np.testing.assert_allclose(spec[plan.occupied_bins()], payload, atol=1e-12)


def test_transmit_is_unipolar_and_seeded():
    cfg = eaco.EacoTxConfig(symbols_per_block=16, seed=5)
    stream, record = eaco.transmit(cfg)
    assert np.all(stream.frames >= 0.0)
    assert 0.0 < record.clip_fraction < 1.0
    assert record.mean_optical_power > 0.0
    assert record.bits.size == cfg.bits_per_block
    again, record2 = eaco.transmit(cfg)
    np.testing.assert_array_equal(stream.frames, again.frames)
    np.testing.assert_array_equal(record.bits, record2.bits)


def test_transmit_rejects_wrong_bit_count():
    cfg = eaco.EacoTxConfig(symbols_per_block=4)
    with pytest.raises(ValueError):
        eaco.transmit(cfg, bits=np.zeros(3, dtype=int))


def test_single_chord_clipping_halves_its_bins():
    cfg = eaco.EacoTxConfig(chords=eaco.make_plan(1), symbols_per_block=8,
                            seed=2)
    stream, record = eaco.transmit(cfg)
    spec = frames.spectrum_of(stream.frames)
    bins = cfg.chords[0].occupied_bins()
    np.testing.assert_allclose(spec[:, bins],
                               record.chord_symbols[0] / 2.0,
                               rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("order", [4, 16, 1024])
def test_noiseless_loopback_all_chords(order):
    cfg = eaco.EacoTxConfig(
        chords=eaco.make_plan(3, qam_order=order),
        symbols_per_block=32,
        seed=3,
    )
    stream, record = eaco.transmit(cfg)
    stream = channel.normalize_power(stream)
    report = eaco.receive(stream, cfg, record)
    assert report.ber == 0.0
    for chord in report.chords:
        assert chord.evm_db <= -100.0
        assert chord.residual_bin_energy < 1e-20
    np.testing.assert_array_equal(report.bits, record.bits)


def test_noiseless_loopback_without_slicing():
    # raw-point cancellation is exact when there is no noise at all
    cfg = eaco.EacoTxConfig(symbols_per_block=16, seed=4)
    stream, record = eaco.transmit(cfg)
    stream = channel.normalize_power(stream)
    report = eaco.receive(stream, cfg, record, slicing=False)
    assert report.ber == 0.0
    assert report.evm_db <= -100.0


def test_read_chord_raw_matches_first_chord():
    cfg = eaco.EacoTxConfig(symbols_per_block=8, seed=6)
    stream, record = eaco.transmit(cfg)
    stream = channel.normalize_power(stream)
    points = eaco.read_chord_raw(stream, cfg, 0)
    np.testing.assert_allclose(points, record.chord_symbols[0], atol=1e-10)
    with pytest.raises(ValueError):
        eaco.read_chord_raw(stream, cfg, 9)


def test_cancellation_removes_decided_chord_exactly():
    # slicing with correct decisions removes the chord exactly even after
    # power normalization rescaled the waveform
    cfg = eaco.EacoTxConfig(
        chords=eaco.make_plan(2, qam_order=16),
        symbols_per_block=16,
        seed=7,
    )
    stream, record = eaco.transmit(cfg)
    stream = channel.normalize_power(stream)
    _, residual = eaco.cancel_and_extract(stream, cfg, 0)
    spec = frames.spectrum_of(residual.frames) * stream.scales()[:, None]
    c0_bins = cfg.chords[0].occupied_bins()
    assert np.max(np.abs(spec[:, c0_bins])) < 1e-10
    # the second chord is still there, half amplitude
    c1_bins = cfg.chords[1].occupied_bins()
    np.testing.assert_allclose(spec[:, c1_bins] * 2.0,
                               record.chord_symbols[1], atol=1e-9)


def test_receive_checks_transform_size():
    cfg = eaco.EacoTxConfig(symbols_per_block=4)
    stream, record = eaco.transmit(cfg)
    wrong = frames.FrameStream(np.zeros((4, 512)))
    with pytest.raises(ValueError):
        eaco.receive(wrong, cfg, record)


def test_spectral_efficiency_fractions():
    assert eaco.spectral_efficiency(eaco.make_plan(1)) == Fraction(1, 2)
    assert eaco.spectral_efficiency(eaco.make_plan(2)) == Fraction(3, 4)
    assert eaco.spectral_efficiency(eaco.make_plan(3)) == Fraction(7, 8)


def test_gross_bit_rate_exact():
    chords = eaco.make_plan(3)
    assert eaco.gross_bit_rate(chords, 10e9) == 17.5e9
