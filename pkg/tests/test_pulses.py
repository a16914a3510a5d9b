import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from ftnshare import ChannelParams, PulseSpectrum, absolute_bandwidth, psd, snr_density


def rrc_branch(alpha, W, f):
    """Direct evaluation of the three-branch RRC spectrum, one point at a time."""
    af = abs(f)
    if af <= (1 - alpha) * W / 2:
        return 1 / W
    if af <= (1 + alpha) * W / 2:
        return (1 + math.cos(math.pi / (alpha * W) * (af - (1 - alpha) * W / 2))) / (2 * W)
    return 0.0


class TestPsd:
    def test_flat_branch(self, rrc_half):
        assert psd(rrc_half, 0.0) == 1.0

    def test_band_edge_is_zero(self, rrc_half):
        assert psd(rrc_half, 0.75) == pytest.approx(0.0, abs=1e-16)

    def test_half_power_at_nyquist_edge(self, rrc_half):
        assert psd(rrc_half, 0.5) == pytest.approx(0.5, abs=1e-15)

    def test_sinc_is_brick_wall(self):
        s = PulseSpectrum.sinc(W=2.0)
        np.testing.assert_array_equal(psd(s, [0.0, 0.99, 1.0, 1.01, -3.0]), [0.5, 0.5, 0.5, 0.0, 0.0])

    def test_zero_rolloff_matches_sinc(self):
        f = np.linspace(-1, 1, 401)
        np.testing.assert_array_equal(psd(PulseSpectrum.rrc(0.0), f), psd(PulseSpectrum.sinc(), f))

    @pytest.mark.parametrize("alpha", [0.1, 0.3, 0.77, 1.0])
    def test_matches_branch_formula(self, alpha):
        f = np.linspace(-1.2, 1.2, 97)
        expected = [rrc_branch(alpha, 1.3, x) for x in f]
        np.testing.assert_allclose(psd(PulseSpectrum.rrc(alpha, 1.3), f), expected, rtol=0, atol=1e-15)

    @pytest.mark.parametrize("alpha", np.round(np.linspace(0, 1, 11), 10))
    @pytest.mark.parametrize("W", [0.5, 1.0, 2.0])
    def test_unit_energy(self, alpha, W):
        p = PulseSpectrum.rrc(alpha, W)
        pts = p.breakpoints()
        total = sum(integrate.quad(lambda f: float(psd(p, f)), a, b, epsabs=1e-14, epsrel=1e-13)[0]
                    for a, b in zip(pts[:-1], pts[1:]))
        assert abs(total - 1.0) <= 1e-10

    @given(st.floats(0, 1), st.floats(-5, 5))
    def test_even_and_non_negative(self, alpha, f):
        p = PulseSpectrum.rrc(alpha)
        assert psd(p, f) == psd(p, -f)
        assert psd(p, f) >= 0

    @given(st.floats(0.01, 1), st.floats(0.2, 5))
    def test_branch_continuity(self, alpha, W):
        p = PulseSpectrum.rrc(alpha, W)
        for edge in (p.flat_edge, p.A / 2):
            below, above = psd(p, np.nextafter(edge, 0)), psd(p, np.nextafter(edge, np.inf))
            assert abs(below - above) <= 1e-12 / W + 1e-12

    @given(st.floats(0.01, 1))
    def test_half_power_point(self, alpha):
        assert psd(PulseSpectrum.rrc(alpha, 2.0), 1.0) == pytest.approx(0.25, abs=1e-14)

    def test_invalid_rolloff(self):
        with pytest.raises(ValueError):
            PulseSpectrum.rrc(1.5)
        with pytest.raises(ValueError):
            PulseSpectrum.rrc(0.5, W=0.0)


@pytest.mark.parametrize("pulse, expected", [
    (PulseSpectrum.rrc(0.5, 1.0), 1.5),
    (PulseSpectrum.rrc(0.0, 2.0), 2.0),
    (PulseSpectrum.sinc(1.0), 1.0),
])
def test_absolute_bandwidth(pulse, expected):
    assert absolute_bandwidth(pulse) == expected
    assert pulse.A == expected


class TestSnrDensity:
    def test_peak(self, rrc_half):
        assert snr_density(rrc_half, ChannelParams(P=1.0, N0=1.0), 0.0) == 1.0

    def test_zero_power(self, rrc_half):
        assert np.all(snr_density(rrc_half, ChannelParams(P=0.0), np.linspace(-1, 1, 11)) == 0)

    def test_rolloff_branch(self):
        p = PulseSpectrum.rrc(0.25)
        ch = ChannelParams(P=2.0, N0=0.5)
        assert snr_density(p, ch, 0.5) == pytest.approx(2.0 / 0.5 * rrc_branch(0.25, 1.0, 0.5), rel=1e-14)

    def test_rho(self):
        ch = ChannelParams(P=6.0, N0=0.5, W=2.0)
        assert ch.rho == 6.0
        assert ChannelParams.from_snr_db(10.0).rho == pytest.approx(10.0)

    def test_channel_validation(self):
        with pytest.raises(ValueError):
            ChannelParams(P=-1.0)
        with pytest.raises(ValueError):
            ChannelParams(P=1.0, N0=0.0)
