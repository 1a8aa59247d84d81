import json

import numpy as np
import pytest

from eaco_ofdm import channel, eaco, frames, metrics

# Monte-Carlo EVM targets at BER 1e-3, frozen from a 10^7-symbol run of
# an independent Gray-QAM slicer implementation.
EVM_TARGETS_DB = {4: -9.788, 16: -16.538, 64: -22.547, 256: -28.413,
                  1024: -34.261}


def test_compute_evm_matches_two_pass_oracle():
    rng = np.random.default_rng(40)
    tx = rng.normal(size=300) + 1j * rng.normal(size=300)
    rx = tx + 0.1 * (rng.normal(size=300) + 1j * rng.normal(size=300))
    err = sum(abs(a - b) ** 2 for a, b in zip(rx, tx)) / 300
    ref = sum(abs(b) ** 2 for b in tx) / 300
    expected = 10.0 * np.log10(err / ref)
    assert abs(metrics.compute_evm(rx, tx) - expected) < 1e-9


def test_compute_evm_floor_and_validation():
    tx = np.ones(8, dtype=complex)
    assert metrics.compute_evm(tx, tx) == metrics.EVM_FLOOR_DB
    with pytest.raises(ValueError):
        metrics.compute_evm(tx, tx[:-1])
    with pytest.raises(ValueError):
        metrics.compute_evm(np.array([]), np.array([]))
    with pytest.raises(ValueError):
        metrics.compute_evm(tx, np.zeros(8, dtype=complex))


def test_q_is_negated_evm():
    assert metrics.q_from_evm(-17.5) == 17.5


def test_ber_at_low_evm_is_zero():
    rng = np.random.default_rng(41)
    assert metrics.ber_at_evm(4, -60.0, 10_000, rng) == 0.0


def test_evm_targets_match_frozen_oracle():
    for order, frozen in EVM_TARGETS_DB.items():
        got = metrics.evm_target_for_ber(order, 1e-3)
        assert abs(got - frozen) < 0.15, (order, got, frozen)


def test_evm_target_tightens_with_order():
    targets = [metrics.evm_target_for_ber(m, 1e-3) for m in (4, 16, 64)]
    assert targets[0] > targets[1] > targets[2]


def test_evm_target_rejects_silly_ber():
    with pytest.raises(ValueError):
        metrics.evm_target_for_ber(4, 0.7)


def test_sigma_for_snr_scaling():
    assert abs(channel.sigma_for_snr(5.0, 20.0) - 0.5) < 1e-12
    assert channel.sigma_for_snr(5.0, np.inf) == 0.0
    model = channel.NoiseModel(sigma_ref=5.0, snr_db=20.0, seed=0)
    assert abs(model.sigma - 0.5) < 1e-12


def test_awgn_variance_and_determinism():
    stream = frames.FrameStream(np.zeros((1024, 1024)))
    noise = channel.NoiseModel(sigma_ref=0.7, snr_db=0.0, seed=5)
    out = channel.add_awgn(stream, noise)
    measured = np.var(out.frames - stream.frames)
    assert abs(measured - 0.49) / 0.49 < 0.01
    again = channel.add_awgn(stream, noise)
    np.testing.assert_array_equal(out.frames, again.frames)
    other = channel.add_awgn(stream, channel.NoiseModel(0.7, 0.0, 6))
    assert np.any(other.frames != out.frames)


def test_awgn_infinite_snr_is_identity():
    rng = np.random.default_rng(42)
    stream = frames.FrameStream(rng.normal(size=(4, 64)))
    noise = channel.NoiseModel(sigma_ref=5.0, snr_db=np.inf, seed=1)
    out = channel.add_awgn(stream, noise)
    np.testing.assert_array_equal(out.frames, stream.frames)


def test_normalize_power_windows_and_scales():
    rng = np.random.default_rng(43)
    blocks = np.abs(rng.normal(size=(64, 128))) + 0.1
    stream = frames.FrameStream(blocks)
    out = channel.normalize_power(stream, window=32)
    assert abs(out.frames[:32].mean() - 1.0) < 1e-12
    assert abs(out.frames[32:].mean() - 1.0) < 1e-12
    # recorded divisors undo the normalization
    np.testing.assert_allclose(out.frames * out.scales()[:, None], blocks)
    with pytest.raises(ValueError):
        channel.normalize_power(frames.FrameStream(np.zeros((4, 8))))


def test_normalize_power_composes_scales():
    stream = frames.FrameStream(np.full((4, 8), 2.0))
    once = channel.normalize_power(stream)
    twice = channel.normalize_power(once)
    np.testing.assert_allclose(twice.scales(), once.scales())
    np.testing.assert_allclose(twice.frames, 1.0)


@pytest.fixture(scope="module")
def sigma_ref():
    return channel.calibrate_noise()


def _reference_evm(sigma_ref, snr_db, seed=9090):
    cfg = eaco.EacoTxConfig(
        chords=eaco.make_plan(1),
        symbols_per_block=2048,
        seed=seed,
    )
    stream, record = eaco.transmit(cfg)
    stream = channel.normalize_power(stream)
    noise = channel.NoiseModel(sigma_ref=sigma_ref, snr_db=snr_db, seed=seed + 1)
    report = eaco.receive(channel.add_awgn(stream, noise), cfg, record)
    return report.chords[0].evm_db


def test_calibrated_reference_reads_zero_evm_at_zero_snr(sigma_ref):
    assert abs(_reference_evm(sigma_ref, 0.0)) < 0.05


def test_calibrated_reference_is_linear_in_snr(sigma_ref):
    assert abs(_reference_evm(sigma_ref, 20.0) + 20.0) < 0.1


def test_calibration_cache_round_trip(tmp_path, sigma_ref):
    path = tmp_path / "cal.json"
    first = channel.calibrate_noise(cache_path=str(path))
    assert abs(first - sigma_ref) < 1e-12
    # tamper with the cache; a hit must return the tampered value, which
    # proves the second call does not recalibrate
    blob = json.loads(path.read_text())
    key = next(iter(blob))
    blob[key]["sigma_ref"] = 1.25
    path.write_text(json.dumps(blob))
    assert channel.calibrate_noise(cache_path=str(path)) == 1.25


def test_calibration_key_tracks_settings():
    a = channel.calibration_key(1024, 64, 4, 2048, 1, 0.01)
    b = channel.calibration_key(1024, 64, 4, 2048, 2, 0.01)
    assert a != b and len(a) == 16
