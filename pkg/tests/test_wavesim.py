import math

import numpy as np
import pytest
from scipy import stats

from ftnshare import PulseSpectrum, psd
from ftnshare.wavesim import (FtnWaveformConfig, _pulse_matrix, _time_grid, estimate_snr_density,
                              generate_ftn, impulse_response, synthesize_pulse)


class TestImpulseResponse:
    def test_sinc_peak(self):
        assert impulse_response(PulseSpectrum.sinc(2.0), 0.0) == pytest.approx(math.sqrt(2.0))

    def test_sinc_nulls(self):
        h = impulse_response(PulseSpectrum.sinc(), np.arange(1, 6))
        assert np.max(np.abs(h)) < 1e-15

    @pytest.mark.parametrize("alpha", [0.1, 0.25, 0.5, 1.0])
    def test_rrc_continuous_at_singular_points(self, alpha):
        p = PulseSpectrum.rrc(alpha)
        for t0 in (0.0, 1 / (4 * alpha)):
            near = impulse_response(p, np.array([t0 - 1e-6, t0 + 1e-6]))
            assert impulse_response(p, np.array([t0]))[0] == pytest.approx(near.mean(), abs=1e-6)

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0])
    def test_rrc_energy(self, alpha):
        t, h = synthesize_pulse(PulseSpectrum.rrc(alpha), 8.0, 64.0)
        assert np.sum(np.abs(h) ** 2) * (t[1] - t[0]) == pytest.approx(1.0, abs=1e-3)

    def test_sinc_energy_long_window(self):
        t, h = synthesize_pulse(PulseSpectrum.sinc(), 4.0, 2000.0)
        assert np.sum(np.abs(h) ** 2) * (t[1] - t[0]) == pytest.approx(1.0, abs=1e-3)

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0])
    def test_spectrum_matches_psd(self, alpha):
        p = PulseSpectrum.rrc(alpha)
        t, h = synthesize_pulse(p, 8.0, 64.0)
        f = np.linspace(-p.A, p.A, 201)
        H = (np.exp(-2j * np.pi * f[:, None] * t[None, :]) @ h) * (t[1] - t[0])
        rms = np.sqrt(np.mean((np.abs(H) ** 2 - psd(p, f)) ** 2))
        assert rms <= 1e-3

    def test_zero_phase(self):
        t, h = synthesize_pulse(PulseSpectrum.rrc(0.3), 8.0, 40.0)
        assert np.all(h.imag == 0)
        np.testing.assert_allclose(h.real, h.real[::-1], atol=1e-15)

    def test_synthesis_validation(self):
        with pytest.raises(ValueError):
            synthesize_pulse(PulseSpectrum.rrc(0.5), 8.0, 10.0)
        with pytest.raises(ValueError):
            synthesize_pulse(PulseSpectrum.rrc(0.5), 2.0, 64.0)


class TestWaveform:
    cfg = FtnWaveformConfig(PulseSpectrum.rrc(0.5), 0.7, 64, seed=3)

    def test_single_symbol_is_shifted_pulse(self):
        sym = np.zeros(64, complex)
        sym[5] = 2 - 1j
        t, s = generate_ftn(self.cfg, sym)
        expected = (2 - 1j) * impulse_response(self.cfg.pulse, t - 5 * 0.7)
        expected[np.abs(t - 5 * 0.7) > self.cfg.span / 2] = 0
        np.testing.assert_allclose(s, expected, atol=1e-14)

    def test_linear_in_symbols(self):
        rng = np.random.default_rng(1)
        a, b = rng.standard_normal((2, 64)) + 1j * rng.standard_normal((2, 64))
        _, sa = generate_ftn(self.cfg, a)
        _, sb = generate_ftn(self.cfg, b)
        _, sab = generate_ftn(self.cfg, a + 3 * b)
        np.testing.assert_allclose(sab, sa + 3 * sb, atol=1e-12)

    def test_zero_power(self):
        cfg = FtnWaveformConfig(PulseSpectrum.rrc(0.5), 1.0, 64, P=0.0)
        _, s = generate_ftn(cfg)
        assert np.all(s == 0)

    def test_deterministic(self):
        _, s1 = generate_ftn(self.cfg, trial=4)
        _, s2 = generate_ftn(self.cfg, trial=4)
        _, s3 = generate_ftn(self.cfg, trial=5)
        np.testing.assert_array_equal(s1, s2)
        assert not np.allclose(s1, s3)

    def test_mean_power_matches_overlap_sum(self):
        # E|S(t)|^2 = P sum_k h(t - k tau T)^2
        cfg = FtnWaveformConfig(PulseSpectrum.rrc(0.5), 0.7, 64, P=2.0, seed=11)
        t = _time_grid(cfg)
        oracle = cfg.P * np.sum(_pulse_matrix(cfg, t) ** 2, axis=1)
        mid = (t > 10) & (t < 30)
        per_trial = np.array([np.mean(np.abs(generate_ftn(cfg, trial=i)[1][mid]) ** 2) for i in range(300)])
        sem = per_trial.std(ddof=1) / math.sqrt(per_trial.size)
        assert abs(per_trial.mean() - oracle[mid].mean()) <= 4 * sem


class TestConfig:
    @pytest.mark.parametrize("kw", [dict(tau=0.0), dict(tau=1.2), dict(L=32), dict(P=-1.0),
                                    dict(span=16.0), dict(sample_rate=2.0)])
    def test_rejects(self, kw):
        args = dict(pulse=PulseSpectrum.rrc(0.5), tau=0.7, L=128) | kw
        with pytest.raises(ValueError):
            FtnWaveformConfig(**args)

    def test_defaults(self):
        cfg = FtnWaveformConfig(PulseSpectrum.rrc(0.5, W=2.0), 0.8, 128)
        assert cfg.fs == pytest.approx(12.0)
        assert cfg.T == 0.5

    def test_estimator_validation(self):
        cfg = FtnWaveformConfig(PulseSpectrum.rrc(0.5), 0.7, 64)
        with pytest.raises(ValueError):
            estimate_snr_density(cfg, 1.0, 50, [0.0])
        with pytest.raises(ValueError):
            estimate_snr_density(cfg, 0.0, 100, [0.0])


@pytest.fixture(scope="module")
def tau_estimates():
    freqs = np.linspace(-0.64, 0.64, 16)
    pulse = PulseSpectrum.rrc(0.5)
    return freqs, {tau: estimate_snr_density(FtnWaveformConfig(pulse, tau, 512, seed=20 + i), 1.0, 500, freqs)
                   for i, tau in enumerate((1.0, 0.7, 0.5))}


class TestSnrDensity:
    def test_dc_within_three_sigma(self):
        cfg = FtnWaveformConfig(PulseSpectrum.rrc(0.5), 1.0, 512, seed=0)
        est = estimate_snr_density(cfg, 1.0, 500, [0.0])
        assert abs(est.estimate[0] - 1.0) <= 3 * est.std_err[0]

    def test_out_of_band_negligible(self):
        cfg = FtnWaveformConfig(PulseSpectrum.rrc(0.5), 0.7, 256, seed=2)
        est = estimate_snr_density(cfg, 1.0, 100, [0.8, 1.0, -0.9])
        assert np.all(est.estimate < 1e-6)

    def test_scales_with_power_and_noise(self):
        base = FtnWaveformConfig(PulseSpectrum.rrc(0.5), 0.7, 128, seed=5)
        hot = FtnWaveformConfig(PulseSpectrum.rrc(0.5), 0.7, 128, P=4.0, seed=5)
        a = estimate_snr_density(base, 1.0, 100, [0.1, 0.5])
        b = estimate_snr_density(hot, 2.0, 100, [0.1, 0.5])
        np.testing.assert_allclose(b.estimate, 2 * a.estimate, rtol=1e-12)

    def test_reproducible(self):
        cfg = FtnWaveformConfig(PulseSpectrum.rrc(0.5), 0.7, 128, seed=9)
        a = estimate_snr_density(cfg, 1.0, 100, [0.2])
        b = estimate_snr_density(cfg, 1.0, 100, [0.2])
        assert a.estimate[0] == b.estimate[0]

    def test_unbiased_jointly(self, tau_estimates):
        # per-trial values are exponential, so chi-square on all frequencies jointly
        freqs, ests = tau_estimates
        truth = psd(PulseSpectrum.rrc(0.5), freqs)
        z = np.concatenate([(e.estimate - truth) / e.std_err for e in ests.values()])
        assert stats.chi2.sf(np.sum(z ** 2), z.size) > 1e-3

    def test_tau_independent(self, tau_estimates):
        _, ests = tau_estimates
        z = np.concatenate([(ests[1.0].estimate - ests[t].estimate) / np.hypot(ests[1.0].std_err, ests[t].std_err)
                            for t in (0.7, 0.5)])
        assert stats.chi2.sf(np.sum(z ** 2), z.size) > 1e-3
