"""Time-domain FTN waveforms and a Monte-Carlo estimate of the SNR density.

Pulses are zero-phase (real, even h(t)), with the closed-form RRC impulse
response truncated to ``span`` symbol periods. Symbols are i.i.d. proper
complex Gaussian. The SNR density is estimated per trial as
|FT of the waveform|^2 / (L N0), evaluated by a direct (windowless)
discrete-time Fourier sum at the requested frequencies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pulses import PulseSpectrum

MIN_SPAN = 32.0


@dataclass(frozen=True)
class FtnWaveformConfig:
    pulse: PulseSpectrum
    tau: float
    L: int
    P: float = 1.0
    sample_rate: float | None = None  # default 4 A
    seed: int = 0
    span: float = 64.0  # pulse truncation, in symbol periods

    def __post_init__(self):
        if not 0.0 < self.tau <= 1.0:
            raise ValueError(f"tau must lie in (0, 1], got {self.tau}")
        if self.L < 64:
            raise ValueError(f"need at least 64 symbols, got {self.L}")
        if self.P < 0:
            raise ValueError("symbol variance must be non-negative")
        if self.span < MIN_SPAN:
            raise ValueError(f"pulse span must cover at least {MIN_SPAN} symbol periods")
        if self.fs < 2.0 * self.pulse.A:
            raise ValueError(f"sample rate {self.fs} aliases a pulse of bandwidth {self.pulse.A}")

    @property
    def T(self) -> float:
        return 1.0 / self.pulse.W

    @property
    def fs(self) -> float:
        return 4.0 * self.pulse.A if self.sample_rate is None else float(self.sample_rate)

    @property
    def dt(self) -> float:
        return 1.0 / self.fs


@dataclass(frozen=True)
class SnrEstimate:
    freqs: np.ndarray
    estimate: np.ndarray
    std_err: np.ndarray
    trials: int


def impulse_response(pulse: PulseSpectrum, t):
    """Unit-energy zero-phase impulse response h(t) whose |H(f)|^2 is ``psd``."""
    t = np.asarray(t, dtype=float)
    T = 1.0 / pulse.W
    a = pulse.alpha
    x = t / T
    if a == 0.0:
        return np.sinc(x) / math.sqrt(T)

    h = np.empty_like(x)
    at_zero = np.abs(x) < 1e-9
    at_pole = np.abs(np.abs(x) - 1.0 / (4.0 * a)) < 1e-9
    rest = ~(at_zero | at_pole)
    xr = x[rest]
    num = np.sin(np.pi * xr * (1 - a)) + 4 * a * xr * np.cos(np.pi * xr * (1 + a))
    den = np.pi * xr * (1.0 - (4.0 * a * xr) ** 2)
    h[rest] = num / den
    h[at_zero] = 1.0 - a + 4.0 * a / np.pi
    h[at_pole] = a / math.sqrt(2.0) * ((1 + 2 / np.pi) * math.sin(np.pi / (4 * a))
                                       + (1 - 2 / np.pi) * math.cos(np.pi / (4 * a)))
    return h / math.sqrt(T)


def synthesize_pulse(pulse: PulseSpectrum, sample_rate: float,
                     duration: float) -> tuple[np.ndarray, np.ndarray]:
    """Samples of h(t) on a grid symmetric about t=0 covering ``duration`` seconds.

    Returned as complex to match waveform samples; the imaginary part is zero.
    """
    T = 1.0 / pulse.W
    if duration < MIN_SPAN * T:
        raise ValueError(f"duration {duration} shorter than {MIN_SPAN} symbol periods")
    if sample_rate < 2.0 * pulse.A:
        raise ValueError(f"sample rate {sample_rate} below twice the bandwidth {pulse.A}")
    n = int(math.floor(duration / 2.0 * sample_rate))
    t = np.arange(-n, n + 1) / sample_rate
    return t, impulse_response(pulse, t).astype(complex)


def _time_grid(cfg: FtnWaveformConfig) -> np.ndarray:
    half = cfg.span * cfg.T / 2.0
    n0 = math.floor(-half * cfg.fs)
    n1 = math.ceil(((cfg.L - 1) * cfg.tau * cfg.T + half) * cfg.fs)
    return np.arange(n0, n1 + 1) / cfg.fs


def _pulse_matrix(cfg: FtnWaveformConfig, t: np.ndarray) -> np.ndarray:
    """G[n, k] = h(t_n - k tau T), zero outside the truncation window."""
    delays = np.arange(cfg.L) * cfg.tau * cfg.T
    rel = t[:, None] - delays[None, :]
    G = impulse_response(cfg.pulse, rel)
    G[np.abs(rel) > cfg.span * cfg.T / 2.0] = 0.0
    return G


def _apply(G: np.ndarray, symbols: np.ndarray) -> np.ndarray:
    # real pulse matrix: two real products avoid a complex copy of G
    return G @ symbols.real + 1j * (G @ symbols.imag)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent generator for one trial, derived from the run seed."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def draw_symbols(rng: np.random.Generator, L: int, P: float) -> np.ndarray:
    """i.i.d. proper complex Gaussian symbols with variance ``P``."""
    scale = math.sqrt(P / 2.0)
    return scale * (rng.standard_normal(L) + 1j * rng.standard_normal(L))


def generate_ftn(cfg: FtnWaveformConfig, symbols: np.ndarray | None = None,
                 trial: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Sampled S(t) = sum_k B[k] h(t - k tau T).

    Symbols are drawn from ``trial_rng(cfg.seed, trial)`` unless given.
    Returns ``(t, samples)``.
    """
    if symbols is None:
        symbols = draw_symbols(trial_rng(cfg.seed, trial), cfg.L, cfg.P)
    else:
        symbols = np.asarray(symbols, dtype=complex)
        if symbols.shape != (cfg.L,):
            raise ValueError(f"expected {cfg.L} symbols, got shape {symbols.shape}")
    t = _time_grid(cfg)
    G = _pulse_matrix(cfg, t)
    return t, _apply(G, symbols)


def estimate_snr_density(cfg: FtnWaveformConfig, N0: float, trials: int, freqs,
                         batch: int = 100) -> SnrEstimate:
    """Ensemble average of |X_L(f)|^2 / (L N0) over independent waveforms.

    X_L is the Fourier transform of the finite waveform, approximated by
    dt * sum_n s(t_n) exp(-j 2 pi f t_n); the waveform is band-limited and
    sampled above its Nyquist rate so the sum is alias-free.
    """
    if trials < 100:
        raise ValueError(f"need at least 100 trials, got {trials}")
    if not N0 > 0:
        raise ValueError("noise density must be positive")
    freqs = np.atleast_1d(np.asarray(freqs, dtype=float))
    t = _time_grid(cfg)
    G = _pulse_matrix(cfg, t)
    E = np.exp(-2j * np.pi * freqs[:, None] * t[None, :]) * cfg.dt

    gamma = np.empty((trials, freqs.size))
    for start in range(0, trials, batch):
        idx = range(start, min(start + batch, trials))
        symbols = np.stack([draw_symbols(trial_rng(cfg.seed, i), cfg.L, cfg.P) for i in idx], axis=1)
        waves = _apply(G, symbols)
        X = E @ waves
        gamma[start:start + len(idx)] = (np.abs(X) ** 2 / cfg.L / N0).T

    mean = gamma.mean(axis=0)
    sem = gamma.std(axis=0, ddof=1) / math.sqrt(trials)
    return SnrEstimate(freqs, mean, sem, trials)
