"""Capacity and spectral efficiency of faster-than-Nyquist signaling with
root-raised-cosine and sinc pulses when neighbouring users share spectrum."""

__version__ = "0.1.0"

from .pulses import ChannelParams, PulseKind, PulseSpectrum, absolute_bandwidth, psd, snr_density
from .quadrature import ConvergenceError, QuadratureSettings
from .singleuser import (Method, RateResult, awgn_capacity, ftn_capacity_closed,
                         ftn_capacity_quadrature, high_snr_prelog, log_cos_integral)
from .sharing import (BRegion, Case, PowerMode, SharingConfig, classify_region, mac_rate_cases,
                      mac_rate_closed_BW, mac_rate_quadrature, received_psd, sharing_upper_bound,
                      sinc_upper_bound, sinr, spectral_efficiency)
from .asymptotics import (SnrRegimeReport, gap_to_db, high_snr_eta, high_snr_gap,
                          high_snr_gap_normalized, low_snr_eta, optimize_offset, regime_report)
