"""Spectrum sharing between users of a Gaussian multiaccess channel.

User ``k`` is centred at ``k * B``. All users share the same pulse and the
same power. Interference is treated as noise, so each user's information
rate is the integral of log2(1 + SINR(f)) across its own band.

Users are either a finite odd count ``K`` (indices ``-(K-1)/2 .. (K-1)/2``)
or an asymptotically large system, in which case rates refer to an interior
user with neighbours on both sides.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .pulses import ChannelParams, PulseSpectrum, psd
from .quadrature import DEFAULT_QUAD, QuadratureSettings, integrate_panels, log2_1p
from .singleuser import Method, RateResult, ftn_capacity_closed, rolloff_log_term


class PowerMode(enum.Enum):
    PER_USER = "per-user"
    DENSITY = "density"


class Case(enum.IntEnum):
    NO_OVERLAP = 1
    COSINE_ONLY = 2
    COSINE_OVER_FLAT = 3
    FLAT_OVERLAP = 4


@dataclass(frozen=True)
class BRegion:
    case: Case
    on_boundary: bool = False


@dataclass(frozen=True)
class SharingConfig:
    """Spectrum-sharing layout.

    ``users=None`` selects the asymptotic (large-K) system. In ``DENSITY``
    mode every user transmits ``ref_density * B`` watts; ``ref_density``
    defaults to ``P / W`` of the channel the config is evaluated with.
    """

    pulse: PulseSpectrum
    B: float
    users: int | None = None
    power_mode: PowerMode = PowerMode.PER_USER
    ref_density: float | None = None

    def __post_init__(self):
        if not (self.B >= 0 and math.isfinite(self.B)):
            raise ValueError(f"spectral offset must be finite and >= 0, got {self.B}")
        if self.users is not None and (self.users < 1 or self.users % 2 == 0):
            raise ValueError(f"user count must be a positive odd integer, got {self.users}")
        if self.ref_density is not None and self.ref_density < 0:
            raise ValueError("reference power density must be non-negative")

    @property
    def asymptotic(self) -> bool:
        return self.users is None

    def user_indices(self) -> range:
        if self.users is None:
            raise ValueError("an asymptotic system has no finite user list")
        h = (self.users - 1) // 2
        return range(-h, h + 1)

    def user_power(self, ch: ChannelParams) -> float:
        if self.power_mode is PowerMode.DENSITY:
            density = ch.P / ch.W if self.ref_density is None else self.ref_density
            return density * self.B
        return ch.P

    def total_bandwidth(self) -> float:
        """Occupied bandwidth: A + (K-1)B, or B per user when asymptotic."""
        if self.users is None:
            return self.B
        return self.pulse.A + (self.users - 1) * self.B

    def interferer_offsets(self, user: int = 0) -> np.ndarray:
        """Centre offsets, relative to ``user``, of every overlapping interferer."""
        A = self.pulse.A
        if self.users is None:
            if self.B == 0:
                raise ValueError("an asymptotic system with B=0 has unbounded co-channel interference")
            m = np.arange(1, math.ceil(A / self.B) + 1)
            m = np.concatenate([-m[::-1], m])
        else:
            if user not in self.user_indices():
                raise ValueError(f"user {user} not in system of {self.users}")
            m = np.array([k - user for k in self.user_indices() if k != user])
        offsets = m * self.B
        return offsets[np.abs(offsets) < A]


def _effective_channel(cfg: SharingConfig, ch: ChannelParams) -> ChannelParams:
    return ChannelParams(P=cfg.user_power(ch), N0=ch.N0, W=cfg.pulse.W)


def received_psd(cfg: SharingConfig, ch: ChannelParams, f):
    """N0 + sum_k P |H(f - kB)|^2 over every user whose band covers ``f``."""
    f = np.asarray(f, dtype=float)
    P = cfg.user_power(ch)
    half = cfg.pulse.A / 2.0
    if cfg.users is not None:
        ks = cfg.user_indices()
    elif cfg.B == 0:
        raise ValueError("an asymptotic system with B=0 has unbounded received power")
    else:
        ks = range(math.floor((f.min() - half) / cfg.B), math.ceil((f.max() + half) / cfg.B) + 1)
    total = np.full_like(f, ch.N0)
    for k in ks:
        total = total + P * psd(cfg.pulse, f - k * cfg.B)
    return total[()] if total.ndim == 0 else total


def sinr(cfg: SharingConfig, ch: ChannelParams, f, user: int = 0):
    """SINR at frequency ``f`` (relative to the user's centre), interference as noise."""
    f = np.asarray(f, dtype=float)
    P = cfg.user_power(ch)
    interference = np.zeros_like(f)
    for off in cfg.interferer_offsets(user):
        interference = interference + psd(cfg.pulse, f - off)
    return P * psd(cfg.pulse, f) / (ch.N0 + P * interference)


def mac_rate_quadrature(cfg: SharingConfig, ch: ChannelParams,
                        q: QuadratureSettings = DEFAULT_QUAD, user: int = 0) -> RateResult:
    """Rate of one user by direct quadrature of log2(1 + SINR) over its band.

    Works for any offset, including B < A/2 where several interferers
    overlap at once.
    """
    pulse = cfg.pulse
    half = pulse.A / 2.0
    offsets = cfg.interferer_offsets(user)
    points = list(pulse.breakpoints())
    for off in offsets:
        points.extend(pulse.breakpoints(center=off))

    def integrand(f):
        return log2_1p(sinr(cfg, ch, f, user))

    value, err = integrate_panels(integrand, -half, half, points, q)
    return RateResult(max(value, 0.0), Method.QUADRATURE, err)


def _close(x: float, y: float, scale: float) -> bool:
    return abs(x - y) <= 1e-12 * scale


def case_interval(case: Case, alpha: float, W: float = 1.0) -> tuple[float, float]:
    """Closed range of offsets covered by one case formula."""
    A = (1.0 + alpha) * W
    if case is Case.NO_OVERLAP:
        return A, math.inf
    if case is Case.COSINE_ONLY:
        return W, A
    if case is Case.COSINE_OVER_FLAT:
        return max((1.0 - alpha) * W, A / 2.0), W
    return A / 2.0, (1.0 - alpha) * W


def classify_region(alpha: float, B: float, W: float = 1.0) -> BRegion:
    """Which case formula applies at offset ``B``.

    Edge values belong to both neighbouring cases; the lower-numbered one is
    returned with ``on_boundary`` set.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"roll-off must lie in [0, 1], got {alpha}")
    A = (1.0 + alpha) * W
    if B < A / 2.0 and not _close(B, A / 2.0, W):
        raise ValueError(f"B={B} is below A/2={A / 2}; several interferers overlap "
                         "and only the quadrature path applies")
    for case in Case:
        lo, hi = case_interval(case, alpha, W)
        if B >= lo or _close(B, lo, W):
            edges = (lo, hi) if case is not Case.NO_OVERLAP else (lo,)
            return BRegion(case, any(_close(B, e, W) for e in edges))
    raise AssertionError("unreachable: FLAT_OVERLAP starts at A/2")


def _cos_term(x, alpha: float, W: float):
    """1 + cos(pi x / (alpha W)), the raised-cosine shape in its local coordinate."""
    return 1.0 + np.cos(np.pi * x / (alpha * W))


def mac_rate_cases(cfg: SharingConfig, ch: ChannelParams,
                   q: QuadratureSettings = DEFAULT_QUAD, case: Case | None = None) -> RateResult:
    """Interior-user rate from the case-specific expressions.

    Each case reduces the SINR integral to a flat (closed) part plus
    one-sided integrals over the overlap intervals, which are evaluated
    numerically. ``case`` forces a particular formula; ``B`` must then lie
    in its closed range (used for continuity checks at case edges).
    """
    if cfg.users is not None and cfg.users < 3:
        raise ValueError("case formulas describe a user with neighbours on both sides")
    pulse = cfg.pulse
    alpha, W, B = pulse.alpha, pulse.W, cfg.B
    A = pulse.A
    if case is None:
        case = classify_region(alpha, B, W).case
    else:
        case = Case(case)
        lo, hi = case_interval(case, alpha, W)
        if not ((B >= lo or _close(B, lo, W)) and (B <= hi or _close(B, hi, W))):
            raise ValueError(f"B={B} is outside the range [{lo}, {hi}] of case {case.name}")

    eff = _effective_channel(cfg, ch)
    rho = eff.rho

    def integral(fn, lo, hi):
        return integrate_panels(fn, lo, hi, (), q)

    if case is Case.NO_OVERLAP:
        return ftn_capacity_closed(alpha, eff)

    parts: list[tuple[float, float]] = []
    if case is Case.COSINE_ONLY:
        flat = (1.0 - alpha) * W * log2_1p(rho)
        parts.append(integral(lambda f: log2_1p(rho / 2.0 * _cos_term(f, alpha, W)),
                              0.0, B - W))
        parts.append(integral(
            lambda f: log2_1p(rho * _cos_term(f, alpha, W)
                              / (2.0 + rho * _cos_term(f - B + (1.0 - alpha) * W, alpha, W))),
            B - W, alpha * W))
    else:
        flat = (2.0 * B - A) * log2_1p(rho)
        desired_flat_vs_tail = lambda f: log2_1p(  # noqa: E731
            2.0 * rho / (2.0 + rho * _cos_term(f - alpha * W, alpha, W)))
        desired_tail_vs_flat = lambda f: log2_1p(  # noqa: E731
            rho * _cos_term(f + B - W, alpha, W) / (2.0 + 2.0 * rho))
        if case is Case.COSINE_OVER_FLAT:
            parts.append(integral(desired_flat_vs_tail, 0.0, W - B))
            parts.append(integral(
                lambda f: log2_1p(rho * _cos_term(f + B - W, alpha, W)
                                  / (2.0 + rho * _cos_term(f - alpha * W, alpha, W))),
                W - B, alpha * W))
            parts.append(integral(desired_tail_vs_flat, alpha * W, A - B))
        else:
            parts.append(integral(desired_flat_vs_tail, 0.0, alpha * W))
            flat += 2.0 * ((1.0 - alpha) * W - B) * log2_1p(rho / (1.0 + rho))
            parts.append(integral(desired_tail_vs_flat, W - B, A - B))

    value = flat + 2.0 * sum(v for v, _ in parts)
    err = 2.0 * sum(e for _, e in parts)
    method = Method.QUADRATURE if any(e > 0 for _, e in parts) else Method.CLOSED_FORM
    return RateResult(max(value, 0.0), method, err)


def mac_rate_closed_BW(alpha: float, ch: ChannelParams) -> RateResult:
    """Interior-user rate at offset B = W in closed form."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"roll-off must lie in [0, 1], got {alpha}")
    rho = ch.rho
    value = (1.0 + alpha) * ch.W * log2_1p(rho) - 2.0 * alpha * ch.W * rolloff_log_term(rho)
    return RateResult(max(value, 0.0), Method.CLOSED_FORM)


def spectral_efficiency(cfg: SharingConfig, ch: ChannelParams,
                        q: QuadratureSettings = DEFAULT_QUAD,
                        method: str = "quadrature") -> RateResult:
    """Sum rate per occupied Hz (bits/s/Hz).

    Asymptotic systems divide the interior-user rate by ``B``. Finite systems
    divide the sum of all ``K`` user rates (edge users included) by
    ``A + (K-1) B``. ``method="cases"`` uses the case formulas and requires
    an asymptotic system.
    """
    if method not in ("quadrature", "cases"):
        raise ValueError(f"unknown method {method!r}")
    if cfg.users is None:
        if cfg.B == 0:
            raise ZeroDivisionError("asymptotic spectral efficiency is undefined at B=0")
        rate = mac_rate_cases(cfg, ch, q) if method == "cases" else mac_rate_quadrature(cfg, ch, q)
        return RateResult(rate.value / cfg.B, rate.method, rate.err_estimate / cfg.B)
    if method == "cases":
        raise ValueError("case formulas only describe the interior user of an asymptotic system")

    total, err = 0.0, 0.0
    for j in range(0, (cfg.users - 1) // 2 + 1):
        r = mac_rate_quadrature(cfg, ch, q, user=j)
        weight = 1 if j == 0 else 2  # users j and -j see mirrored interference
        total += weight * r.value
        err += weight * r.err_estimate
    bw = cfg.total_bandwidth()
    return RateResult(total / bw, Method.QUADRATURE, err / bw)


def sinc_upper_bound(P_tot: float, B_tot: float, N0: float) -> float:
    """log2(1 + P_tot / (B_tot N0)): no pulse, offset or receiver does better."""
    if not (B_tot > 0 and N0 > 0) or P_tot < 0:
        raise ValueError("need B_tot > 0, N0 > 0 and P_tot >= 0")
    return float(log2_1p(P_tot / (B_tot * N0)))


def sharing_upper_bound(cfg: SharingConfig, ch: ChannelParams) -> float:
    """The sinc bound with total power and bandwidth matched to ``cfg``."""
    P = cfg.user_power(ch)
    if cfg.users is None:
        if cfg.B == 0:
            raise ZeroDivisionError("asymptotic power density is undefined at B=0")
        return sinc_upper_bound(P, cfg.B, ch.N0)
    return sinc_upper_bound(cfg.users * P, cfg.total_bandwidth(), ch.N0)
