import numpy as np
import pytest

from eaco_ofdm import channel, dco


def test_bias_level_formula():
    assert abs(dco.bias_level(2.0, 10.0) - 18.0) < 1e-12
    assert dco.bias_level(3.0, 0.0) == 0.0


def test_config_validation():
    with pytest.raises(ValueError):
        dco.DcoConfig(n_subcarriers=512)
    with pytest.raises(ValueError):
        dco.DcoConfig(bias_db=-1.0)
    with pytest.raises(ValueError):
        dco.DcoConfig(n_fft=100)


def test_transmit_is_unipolar_and_records_levels():
    cfg = dco.DcoConfig(symbols_per_block=32, seed=1)
    stream, record = dco.dco_transmit(cfg)
    assert np.all(stream.frames >= 0.0)
    assert record.v_rms > 0.0
    expected = dco.bias_level(record.v_rms, cfg.bias_db)
    assert abs(record.b_dc - expected) < 1e-12
    assert 0.0 <= record.clip_fraction < 1.0


def test_clip_fraction_falls_with_bias():
    low = dco.dco_transmit(dco.DcoConfig(bias_db=4.0, symbols_per_block=32,
                                         seed=2))[1]
    high = dco.dco_transmit(dco.DcoConfig(bias_db=8.0, symbols_per_block=32,
                                          seed=2))[1]
    assert high.clip_fraction < low.clip_fraction


def test_noiseless_loopback_at_generous_bias():
    # at 13 dB bias the Gaussian waveform essentially never clips
    cfg = dco.DcoConfig(bias_db=13.0, symbols_per_block=64, seed=3)
    stream, record = dco.dco_transmit(cfg)
    stream = channel.normalize_power(stream)
    report = dco.dco_receive(stream, cfg, record)
    assert report.ber == 0.0
    assert report.evm_db < -100.0


def test_low_bias_has_a_clipping_floor():
    cfg = dco.DcoConfig(bias_db=4.0, symbols_per_block=256, seed=4)
    stream, record = dco.dco_transmit(cfg)
    stream = channel.normalize_power(stream)
    report = dco.dco_receive(stream, cfg, record)
    # noiseless error comes from clipping alone; measured floor near -18 dB
    assert -20.0 < report.evm_db < -16.0


def test_transmit_determinism():
    cfg = dco.DcoConfig(symbols_per_block=16, seed=5)
    a, _ = dco.dco_transmit(cfg)
    b, _ = dco.dco_transmit(cfg)
    np.testing.assert_array_equal(a.frames, b.frames)
