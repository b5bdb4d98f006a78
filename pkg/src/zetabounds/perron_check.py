"""Explicit truncated-Perron error bounds and a numeric contour harness.

The error theorem: for a Dirichlet series f(s) = sum a_n n^{-s} with
|a_n| <= psi(n) (psi increasing) and absolute-value series g(sigma),
truncating the Perron integral at height T costs at most

    2 g(sigma) x^sigma / T + 4 e^sigma (e psi(ex) x log T / T + psi(ex)).

Two standard specialisations: for the Mertens function (a_n = mu(n),
psi = 1, sigma = 1 + 1/log x, T = e sqrt(x)) the cost is below
22.2 sqrt(x) log(ex); for the k-free tail series (psi = y, T = ex) it is
below 26 y log(ex).

numeric_perron_mertens actually integrates x^z / (z zeta(z)) up the
vertical segment and compares with the sieved M(x), confirming the error
cap at desk scale.  The integrand oscillates like x^{it}, so panels are
seeded at width pi/(2 log x) (at least four samples per oscillation) and
refined by doubling with Richardson acceptance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import sieve_lab, zeta_numerics
from .errors import BoundViolation, PrecisionError, require

PANEL_SPLITS = (0.0, 10.0, 50.0)
_MAX_PANEL_POINTS = 1 << 21


@dataclass(frozen=True)
class PerronReport:
    x: float
    sigma: float
    T: float
    integral_value: float
    sieve_value: int
    residual: float
    bound: float


def zeta_sigma_cap(sigma: float) -> float:
    """zeta(sigma) <= sigma/(sigma-1) for sigma > 1."""
    require(sigma > 1.0, "sigma > 1")
    return sigma / (sigma - 1.0)


def perron_error(g_sigma: float, psi_ex: float, x: float, T: float, sigma: float) -> float:
    """The three-term truncation cost; psi_ex is the majorant at ex."""
    require(x >= 1.0, "x >= 1")
    require(T >= 1.0, "T >= 1")
    require(sigma > 0.0, "sigma > 0")
    return 2.0 * g_sigma * x**sigma / T + 4.0 * math.exp(sigma) * (
        math.e * psi_ex * x * math.log(T) / T + psi_ex
    )


def mertens_truncation_cost(x: float) -> float:
    """perron_error at the Mertens choices sigma = 1 + 1/log x, T = e sqrt(x),
    psi = 1, g = zeta(sigma); stays below 22.2 sqrt(x) log(ex) for x >= e^2."""
    sigma = 1.0 + 1.0 / math.log(x)
    return perron_error(zeta_sigma_cap(sigma), 1.0, x, math.e * math.sqrt(x), sigma)


def kfree_truncation_cost(x: float, y: float) -> float:
    """perron_error at the k-free choices T = ex, psi = y, g = y*zeta(sigma);
    stays below 26 y log(ex) for x >= e^2."""
    sigma = 1.0 + 1.0 / math.log(x)
    return perron_error(y * zeta_sigma_cap(sigma), y, x, math.e * x, sigma)


def _integrand_on_grid(sigma: float, log_x: float, t0: float, dt: float, count: int) -> np.ndarray:
    """Re[x^s / (s zeta(s))] at s = sigma + i(t0 + j dt)."""
    s0 = complex(sigma, t0)
    ds = complex(0.0, dt)
    s = s0 + ds * np.arange(count)
    zeta_vals = zeta_numerics.zeta_linspace(s0, ds, count, 1e-9)
    return (np.exp(s * log_x) / (s * zeta_vals)).real


def _simpson_panel(sigma: float, log_x: float, a: float, b: float, h_max: float, tol: float) -> float:
    n = max(4, int(math.ceil((b - a) / h_max)))
    n += n % 2
    prev = None
    while n <= _MAX_PANEL_POINTS:
        dt = (b - a) / n
        vals = _integrand_on_grid(sigma, log_x, a, dt, n + 1)
        weights = np.ones(n + 1)
        weights[1:-1:2] = 4.0
        weights[2:-1:2] = 2.0
        s = float(np.dot(weights, vals)) * dt / 3.0
        if prev is not None and abs(s - prev) <= 15.0 * tol:
            return s + (s - prev) / 15.0
        prev = s
        n *= 2
    raise PrecisionError("Simpson refinement did not converge on [%g, %g]" % (a, b))


def numeric_perron_mertens(x: float, quad_tol: float = 1e-6) -> PerronReport:
    """Evaluate M(x) via the truncated Perron integral and compare with the
    sieve.  x must keep distance >= 0.1 from integers (no half-weight
    ambiguity at jumps)."""
    require(math.e**2 <= x <= 1e4, "e^2 <= x <= 1e4")
    require(abs(x - round(x)) >= 0.1, "x at distance >= 0.1 from integers")
    log_x = math.log(x)
    sigma = 1.0 + 1.0 / log_x
    big_t = math.e * math.sqrt(x)
    h_max = math.pi / (2.0 * log_x)

    cuts = [c for c in PANEL_SPLITS if c < big_t] + [big_t]
    panels = list(zip(cuts[:-1], cuts[1:]))
    tol = quad_tol * math.pi / len(panels)
    total = sum(_simpson_panel(sigma, log_x, a, b, h_max, tol) for a, b in panels)
    integral = total / math.pi

    n = int(math.floor(x))
    sieve_value = sieve_lab.mertens_checkpoints(n, [n])[0].mertens
    residual = abs(sieve_value - integral)
    bound = 22.2 * math.sqrt(x) * math.log(math.e * x)
    if residual > bound + quad_tol:
        raise BoundViolation(
            "Perron residual %.6g exceeds the cap %.6g at x=%g" % (residual, bound, x)
        )
    return PerronReport(
        x=x,
        sigma=sigma,
        T=big_t,
        integral_value=integral,
        sieve_value=sieve_value,
        residual=residual,
        bound=bound,
    )


def report_to_csv(report: PerronReport, fh) -> None:
    fh.write("x,sigma,T,integral_value,sieve_value,residual,bound\n")
    fh.write(
        "%.6f,%.9f,%.6f,%.9f,%d,%.9f,%.6f\n"
        % (
            report.x,
            report.sigma,
            report.T,
            report.integral_value,
            report.sieve_value,
            report.residual,
            report.bound,
        )
    )
