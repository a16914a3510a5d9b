"""Pulse energy spectral densities and the per-frequency SNR density.

Everything here is complex baseband. Spectra are the energy spectral
densities |H(f)|^2 of unit-energy pulses, so they integrate to one.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class PulseKind(enum.Enum):
    RRC = "rrc"
    SINC = "sinc"


@dataclass(frozen=True)
class PulseSpectrum:
    """Energy spectral density of a root-raised-cosine or sinc pulse.

    ``W`` is the Nyquist (3 dB) bandwidth in Hz. A sinc pulse behaves as an
    RRC pulse with zero roll-off.
    """

    kind: PulseKind
    alpha: float = 0.0
    W: float = 1.0

    def __post_init__(self):
        if not (self.W > 0 and math.isfinite(self.W)):
            raise ValueError(f"W must be positive and finite, got {self.W}")
        if self.kind is PulseKind.SINC:
            if self.alpha != 0.0:
                raise ValueError("sinc pulses have no roll-off")
        elif not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"roll-off must lie in [0, 1], got {self.alpha}")

    @classmethod
    def rrc(cls, alpha: float, W: float = 1.0) -> PulseSpectrum:
        return cls(PulseKind.RRC, float(alpha), float(W))

    @classmethod
    def sinc(cls, W: float = 1.0) -> PulseSpectrum:
        return cls(PulseKind.SINC, 0.0, float(W))

    @property
    def A(self) -> float:
        """Absolute (two-sided) bandwidth."""
        return absolute_bandwidth(self)

    @property
    def flat_edge(self) -> float:
        """Frequency where the flat part of the spectrum ends."""
        return (1.0 - self.alpha) * self.W / 2.0

    def breakpoints(self, center: float = 0.0) -> list[float]:
        """Frequencies where the spectrum changes branch, sorted."""
        pts = {center - self.A / 2, center - self.flat_edge,
               center + self.flat_edge, center + self.A / 2}
        return sorted(pts)


def absolute_bandwidth(pulse: PulseSpectrum) -> float:
    return (1.0 + pulse.alpha) * pulse.W


def psd(pulse: PulseSpectrum, f):
    """|H(f)|^2 in 1/Hz.

    Accepts scalars or arrays. Boundary frequencies go to the inner branch;
    the spectrum is continuous there so the choice does not change values.
    """
    f = np.asarray(f, dtype=float)
    af = np.abs(f)
    W, alpha = pulse.W, pulse.alpha
    flat = pulse.flat_edge
    edge = pulse.A / 2.0

    out = np.zeros_like(af)
    out[af <= flat] = 1.0 / W
    if alpha > 0.0:
        roll = (af > flat) & (af <= edge)
        out[roll] = (1.0 + np.cos(np.pi / (alpha * W) * (af[roll] - flat))) / (2.0 * W)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class ChannelParams:
    """Per-user symbol power ``P`` (W), noise density ``N0`` (W/Hz) and the
    reference Nyquist bandwidth ``W`` (Hz)."""

    P: float
    N0: float = 1.0
    W: float = 1.0

    def __post_init__(self):
        if self.P < 0:
            raise ValueError(f"power must be non-negative, got {self.P}")
        if not self.N0 > 0:
            raise ValueError(f"noise density must be positive, got {self.N0}")
        if not self.W > 0:
            raise ValueError(f"bandwidth must be positive, got {self.W}")

    @classmethod
    def from_snr(cls, rho: float, W: float = 1.0, N0: float = 1.0) -> ChannelParams:
        return cls(P=float(rho) * W * N0, N0=N0, W=W)

    @classmethod
    def from_snr_db(cls, snr_db: float, W: float = 1.0, N0: float = 1.0) -> ChannelParams:
        return cls.from_snr(10.0 ** (snr_db / 10.0), W=W, N0=N0)

    @property
    def rho(self) -> float:
        """SNR ratio P / (W N0)."""
        return self.P / (self.W * self.N0)

    def with_power(self, P: float) -> ChannelParams:
        return ChannelParams(P=P, N0=self.N0, W=self.W)


def snr_density(pulse: PulseSpectrum, ch: ChannelParams, f):
    """SNR(f) = P |H(f)|^2 / N0. Independent of the FTN compression factor."""
    return ch.P * psd(pulse, f) / ch.N0
