"""Piecewise adaptive quadrature over pre-split panels.

Each panel is integrated with QUADPACK's adaptive Gauss-Kronrod rule
(``scipy.integrate.quad``). Integrands in this package are smooth between
spectrum breakpoints, so splitting there first keeps every panel easy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from scipy import integrate


class ConvergenceError(RuntimeError):
    """Raised when a panel does not meet tolerance within the subdivision budget."""


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 2048

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be a positive integer")


DEFAULT_QUAD = QuadratureSettings()


def split_points(lo: float, hi: float, points: Iterable[float]) -> list[float]:
    """Sorted panel edges: ``lo``, the points strictly inside (lo, hi), ``hi``."""
    inner = sorted({float(p) for p in points if lo < p < hi})
    edges = [lo]
    for p in inner:
        # drop near-duplicates that would create degenerate panels
        if p - edges[-1] > 1e-14 * max(1.0, abs(p)):
            edges.append(p)
    if hi - edges[-1] <= 1e-14 * max(1.0, abs(hi)) and len(edges) > 1:
        edges[-1] = hi
    else:
        edges.append(hi)
    return edges


def integrate_panels(func: Callable[[float], float], lo: float, hi: float,
                     points: Iterable[float] = (),
                     q: QuadratureSettings = DEFAULT_QUAD) -> tuple[float, float]:
    """Integrate ``func`` over [lo, hi], splitting at ``points``.

    Returns ``(value, abs_error_estimate)``.
    """
    if hi <= lo:
        return 0.0, 0.0
    edges = split_points(lo, hi, points)
    total, err = 0.0, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        res = integrate.quad(func, a, b, epsabs=q.abs_tol, epsrel=q.rel_tol,
                             limit=q.max_subdivisions, full_output=1)
        value, abserr = res[0], res[1]
        if len(res) > 3:
            # QUADPACK also flags round-off once the error is at machine level;
            # accept that case, reject genuine non-convergence.
            tol = max(q.abs_tol, q.rel_tol * abs(value))
            if not abserr <= 10.0 * tol:
                raise ConvergenceError(
                    f"quadrature on [{a:.6g}, {b:.6g}] did not converge: {res[3]}"
                )
        total += value
        err += abserr
    return total, err


def log2_1p(x):
    return np.log1p(x) / np.log(2.0)
