"""Cross-validation suite behind ``ftnshare validate``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .pulses import ChannelParams, PulseSpectrum
from .sharing import (Case, SharingConfig, case_interval, mac_rate_cases, mac_rate_closed_BW,
                      mac_rate_quadrature, sharing_upper_bound, spectral_efficiency)
from .singleuser import RateResult, ftn_capacity_closed, ftn_capacity_quadrature
from .wavesim import FtnWaveformConfig, estimate_snr_density

ALPHAS = tuple(np.round(np.linspace(0.0, 1.0, 11), 10))
RHOS = (0.01, 0.1, 1.0, 10.0, 100.0, 1000.0)


@dataclass
class Check:
    name: str
    passed: bool
    max_deviation: float
    tolerance: float
    metric: str = "max deviation"

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.name}: {self.metric} {self.max_deviation:.3e} (tol {self.tolerance:.1e})"


def _certified(x: RateResult, y: RateResult) -> float:
    """Relative disagreement, floored by the quadrature error estimates.

    Agreement is only certified to the accuracy the numerical side can vouch
    for, so a tolerance tighter than the quadrature error bound fails.
    """
    scale = max(abs(x.value), abs(y.value))
    if scale == 0:
        return 0.0
    return max(abs(x.value - y.value), x.err_estimate, y.err_estimate) / scale


def closed_vs_quadrature(tol: float = 1e-8) -> Check:
    dev = 0.0
    for a in ALPHAS:
        for rho in RHOS:
            ch = ChannelParams.from_snr(rho)
            dev = max(dev, _certified(ftn_capacity_closed(a, ch),
                                      ftn_capacity_quadrature(PulseSpectrum.rrc(a), ch)))
    return Check("single-user closed form vs quadrature", dev <= tol, dev, tol)


def offset_w_triple(tol: float = 1e-8) -> Check:
    dev = 0.0
    for a in ALPHAS:
        for rho in RHOS:
            ch = ChannelParams.from_snr(rho)
            cfg = SharingConfig(PulseSpectrum.rrc(a), 1.0)
            closed = mac_rate_closed_BW(a, ch)
            case2 = mac_rate_cases(cfg, ch, case=Case.COSINE_ONLY)
            quad = mac_rate_quadrature(cfg, ch)
            dev = max(dev, _certified(closed, case2), _certified(closed, quad))
    return Check("B=W closed form vs case formula vs quadrature", dev <= tol, dev, tol)


def case_grid(alphas=(0.0, 0.1, 0.25, 1 / 3, 0.5, 0.75, 1.0), points: int = 5):
    """(alpha, B) pairs spread through every case range present for each alpha."""
    out = []
    for a in alphas:
        for case in Case:
            lo, hi = case_interval(case, a)
            if case is Case.NO_OVERLAP:
                hi = lo + 0.5
            if hi < lo:
                continue
            out.extend((a, float(B)) for B in np.linspace(lo, hi, points))
    return out


def cases_vs_quadrature(tol: float = 1e-8, rhos=(0.01, 1.0, 10.0, 1e3)) -> Check:
    dev = 0.0
    for a, B in case_grid():
        cfg = SharingConfig(PulseSpectrum.rrc(a), B)
        for rho in rhos:
            ch = ChannelParams.from_snr(rho)
            dev = max(dev, _certified(mac_rate_cases(cfg, ch), mac_rate_quadrature(cfg, ch)))
    return Check("case formulas vs quadrature", dev <= tol, dev, tol)


def case_edges(alpha: float, W: float = 1.0) -> list[tuple[float, Case, Case]]:
    """Every interior case edge as (B, upper case, lower case)."""
    edges = [((1 + alpha) * W, Case.NO_OVERLAP, Case.COSINE_ONLY),
             (W, Case.COSINE_ONLY, Case.COSINE_OVER_FLAT)]
    lo3 = case_interval(Case.COSINE_OVER_FLAT, alpha, W)[0]
    if alpha <= 1 / 3:
        edges.append((lo3, Case.COSINE_OVER_FLAT, Case.FLAT_OVERLAP))
    return edges


def boundary_continuity(tol: float = 1e-8, rhos=(0.01, 1.0, 10.0, 1e3)) -> Check:
    dev = 0.0
    for a in (0.0, 0.1, 0.25, 1 / 3, 0.5, 1.0):
        for B, upper, lower in case_edges(a):
            cfg = SharingConfig(PulseSpectrum.rrc(a), B)
            for rho in rhos:
                ch = ChannelParams.from_snr(rho)
                dev = max(dev, _certified(mac_rate_cases(cfg, ch, case=upper),
                                          mac_rate_cases(cfg, ch, case=lower)))
    return Check("case-edge continuity", dev <= tol, dev, tol)


def random_sharing_configs(n: int = 200, seed: int = 0):
    """Seeded random (config, channel) pairs with B >= A/2 and finite odd K."""
    rng = np.random.default_rng(seed)
    for _ in range(n):
        a = float(rng.uniform(0.0, 1.0))
        A = 1.0 + a
        B = float(rng.uniform(A / 2, 1.5 * A))
        K = int(rng.choice([1, 3, 5, 7, 9]))
        rho = float(10 ** rng.uniform(-2, 3))
        yield SharingConfig(PulseSpectrum.rrc(a), B, users=K), ChannelParams.from_snr(rho)


def bound_dominance(n: int = 200, seed: int = 0, slack: float = 1e-9) -> Check:
    worst = np.inf
    for cfg, ch in random_sharing_configs(n, seed):
        eta = spectral_efficiency(cfg, ch).value
        worst = min(worst, sharing_upper_bound(cfg, ch) - eta)
    # equality case: sinc pulses, A = B = W, equal powers
    eq = 0.0
    for K in (1, 3, 7):
        for rho in RHOS:
            cfg = SharingConfig(PulseSpectrum.sinc(), 1.0, users=K)
            ch = ChannelParams.from_snr(rho)
            eq = max(eq, abs(sharing_upper_bound(cfg, ch) - spectral_efficiency(cfg, ch).value))
    ok = worst >= -slack and eq <= slack
    return Check("sinc upper bound dominance and equality", ok, max(-worst, eq, 0.0), slack)


def tau_z_scores(seed: int = 0, L: int = 512, trials: int = 500, taus=(1.0, 0.7),
                 freqs=None, alpha: float = 0.5) -> np.ndarray:
    """Pairwise z-scores between SNR-density estimates at different tau.

    Each tau gets its own derived seed so the estimates are independent.
    Returns an array of shape (pairs, frequencies).
    """
    pulse = PulseSpectrum.rrc(alpha)
    freqs = np.linspace(-0.64, 0.64, 16) if freqs is None else np.asarray(freqs)
    ests = [estimate_snr_density(FtnWaveformConfig(pulse, tau, L, seed=seed + i), 1.0, trials, freqs)
            for i, tau in enumerate(taus)]
    rows = []
    for i in range(len(ests)):
        for j in range(i + 1, len(ests)):
            a, b = ests[i], ests[j]
            rows.append((a.estimate - b.estimate) / np.hypot(a.std_err, b.std_err))
    return np.array(rows)


def tau_independence(seed: int = 0, L: int = 512, trials: int = 500,
                     taus=(1.0, 0.7), p_min: float = 1e-3) -> Check:
    """Chi-square test that the tau-pair z-scores are standard normal.

    A max-|z| rule over many frequencies fails by chance far more often than
    its nominal level, so the suite tests the z-scores jointly.
    """
    z = tau_z_scores(seed, L, trials, taus)
    p = float(stats.chi2.sf(np.sum(z ** 2), df=z.size))
    return Check(f"Monte-Carlo SNR density independent of tau (chi2 p-value, max |z| {np.abs(z).max():.2f})",
                 p >= p_min, p, p_min, metric="p-value")


def run_all(tol: float = 1e-8, seed: int = 0, monte_carlo: bool = True) -> list[Check]:
    checks = [closed_vs_quadrature(tol), offset_w_triple(tol), cases_vs_quadrature(tol),
              boundary_continuity(tol), bound_dominance(seed=seed)]
    if monte_carlo:
        checks.append(tau_independence(seed=seed))
    return checks

