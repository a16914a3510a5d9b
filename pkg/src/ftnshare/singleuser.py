"""Single-user FTN capacity: AWGN baseline, capacity integral and the RRC closed form."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .pulses import ChannelParams, PulseSpectrum, snr_density
from .quadrature import DEFAULT_QUAD, QuadratureSettings, integrate_panels, log2_1p

LN2 = math.log(2.0)


class Method(enum.Enum):
    CLOSED_FORM = "closed-form"
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte-carlo"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class RateResult:
    """A rate in bits/s (or an efficiency in bits/s/Hz) with its provenance."""

    value: float
    method: Method
    err_estimate: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "err_estimate", float(self.err_estimate))
        if self.value < 0 or self.err_estimate < 0:
            raise ValueError(f"negative rate or error estimate: {self}")

    def __float__(self):
        return float(self.value)


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"roll-off must lie in [0, 1], got {alpha}")


def awgn_capacity(ch: ChannelParams) -> RateResult:
    """Shannon capacity W log2(1 + P/(W N0)) of the band-limited AWGN channel."""
    return RateResult(ch.W * log2_1p(ch.rho), Method.CLOSED_FORM)


def log_cos_integral(a: float, b: float) -> float:
    """Closed form of the integral of ln(a + b cos x) over [0, pi].

    Valid for a >= |b| > 0.
    """
    if b == 0 or a < abs(b):
        raise ValueError(f"log-cosine identity needs a >= |b| > 0, got a={a}, b={b}")
    # (a - |b|)(a + |b|) avoids cancellation when a is close to |b|
    root = math.sqrt((a - abs(b)) * (a + abs(b)))
    return math.pi * math.log((a + root) / 2.0)


def rolloff_log_term(rho: float) -> float:
    """log2((1 + rho/2 + sqrt(1 + rho)) / 2), the roll-off band contribution per Hz.

    Written as log1p of an exact rearrangement so tiny ``rho`` keeps full
    relative precision.
    """
    excess = rho / 2.0 + rho / (1.0 + math.sqrt(1.0 + rho))
    return math.log1p(excess / 2.0) / LN2


def ftn_capacity_closed(alpha: float, ch: ChannelParams) -> RateResult:
    """Capacity of FTN signaling with an RRC pulse of roll-off ``alpha``."""
    _check_alpha(alpha)
    rho = ch.rho
    value = (1.0 - alpha) * ch.W * log2_1p(rho) + 2.0 * alpha * ch.W * rolloff_log_term(rho)
    return RateResult(value, Method.CLOSED_FORM)


def ftn_capacity_quadrature(pulse: PulseSpectrum, ch: ChannelParams,
                            q: QuadratureSettings = DEFAULT_QUAD) -> RateResult:
    """Integrate log2(1 + SNR(f)) over the pulse support."""
    half = pulse.A / 2.0

    def integrand(f):
        return log2_1p(snr_density(pulse, ch, f))

    value, err = integrate_panels(integrand, -half, half, pulse.breakpoints(), q)
    return RateResult(max(value, 0.0), Method.QUADRATURE, err)


def high_snr_prelog(alpha: float, W: float = 1.0) -> float:
    """Limit of C_FTN / log2(rho) as rho grows: the absolute bandwidth."""
    _check_alpha(alpha)
    return (1.0 + alpha) * W
