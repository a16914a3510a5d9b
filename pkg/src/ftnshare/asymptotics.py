"""Low- and high-SNR behaviour of the sharing efficiency, offset optimisation and gaps."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .pulses import ChannelParams, PulseSpectrum
from .quadrature import DEFAULT_QUAD, QuadratureSettings
from .sharing import PowerMode, SharingConfig, spectral_efficiency

LOG2_E = 1.0 / math.log(2.0)
DB_PER_BIT = 10.0 * math.log10(2.0)

LOW_SNR = 0.01
HIGH_SNR = 1e4


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"roll-off must lie in [0, 1], got {alpha}")


def low_snr_eta(B: float, ch: ChannelParams) -> float:
    """Wideband approximation (P / (B N0)) log2(e)."""
    if not B > 0:
        raise ValueError(f"offset must be positive, got {B}")
    return ch.P / (B * ch.N0) * LOG2_E


def high_snr_eta(alpha: float, B: float, ch: ChannelParams) -> float:
    """Pre-log approximation ((2B - A) / B) log2(rho) for A/2 <= B <= A."""
    _check_alpha(alpha)
    A = (1.0 + alpha) * ch.W
    tol = 1e-12 * ch.W
    if not (A / 2.0 - tol <= B <= A + tol):
        raise ValueError(f"B={B} outside [{A / 2}, {A}]")
    return (2.0 * B - A) / B * math.log2(ch.rho)


def high_snr_gap(alpha: float) -> float:
    """Additive gap 4a/(1+a) below log2(rho) for interference-free RRC sharing."""
    _check_alpha(alpha)
    return 4.0 * alpha / (1.0 + alpha)


def high_snr_gap_normalized(alpha: float) -> float:
    """The same gap once the transmit power per Hz is held at P/W."""
    _check_alpha(alpha)
    return 4.0 * alpha / (1.0 + alpha) - math.log2(1.0 + alpha)


def gap_to_db(gap: float) -> float:
    """Energy-efficiency loss in dB for a high-SNR gap in bits/s/Hz."""
    if gap < 0:
        raise ValueError(f"gap must be non-negative, got {gap}")
    return gap * DB_PER_BIT


def offset_grid(alpha: float, W: float = 1.0, steps: int = 200) -> np.ndarray:
    A = (1.0 + alpha) * W
    return np.linspace(A / 2.0, A, steps)


def optimize_offset(alpha: float, ch: ChannelParams,
                    power_mode: PowerMode = PowerMode.PER_USER,
                    grid: Sequence[float] | None = None,
                    q: QuadratureSettings = DEFAULT_QUAD,
                    tie_rtol: float = 1e-12) -> tuple[float, float]:
    """Grid search for the offset maximising asymptotic spectral efficiency.

    ``grid`` defaults to 200 points on [A/2, A]. Values within ``tie_rtol``
    of the best count as ties and resolve to the largest offset.
    """
    _check_alpha(alpha)
    grid = offset_grid(alpha, ch.W) if grid is None else np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("empty offset grid")
    A = (1.0 + alpha) * ch.W
    if grid.min() < A / 2.0 - 1e-12 * ch.W or grid.max() > A + 1e-12 * ch.W:
        raise ValueError(f"offset grid must lie within [{A / 2}, {A}]")

    pulse = PulseSpectrum.rrc(alpha, ch.W)
    etas = np.array([
        spectral_efficiency(SharingConfig(pulse, float(B), power_mode=power_mode), ch, q).value
        for B in grid
    ])
    best = etas.max()
    ties = np.flatnonzero(etas >= best - tie_rtol * abs(best))
    i = ties[np.argmax(grid[ties])]
    return float(grid[i]), float(etas[i])


class Regime(enum.Enum):
    LOW = "low"
    HIGH = "high"


@dataclass(frozen=True)
class SnrRegimeReport:
    regime: Regime
    approx_value: float
    exact_value: float

    @property
    def deviation(self) -> float:
        return abs(self.approx_value - self.exact_value)


def regime_report(cfg: SharingConfig, ch: ChannelParams,
                  q: QuadratureSettings = DEFAULT_QUAD,
                  low: float = LOW_SNR, high: float = HIGH_SNR) -> SnrRegimeReport:
    """Compare the exact asymptotic-K efficiency with the matching approximation.

    The approximations use the configured per-user power, so density mode is
    handled by rescaling before either side is evaluated.
    """
    if cfg.users is not None:
        raise ValueError("regime approximations describe the asymptotic system")
    eff = ChannelParams(P=cfg.user_power(ch), N0=ch.N0, W=ch.W)
    exact = spectral_efficiency(cfg, ch, q).value
    if eff.rho <= low:
        return SnrRegimeReport(Regime.LOW, low_snr_eta(cfg.B, eff), exact)
    if eff.rho >= high:
        return SnrRegimeReport(Regime.HIGH, high_snr_eta(cfg.pulse.alpha, cfg.B, eff), exact)
    raise ValueError(f"rho={eff.rho:g} lies between the low ({low:g}) and high ({high:g}) thresholds")
