"""Closed-form RH-conditional bound functions.

Everything here is a pure function of its arguments.  The central objects:

* ``phi_hat('S', u)`` and ``phi_hat('S1', u)`` -- piecewise-defined decreasing
  majorants (in the variable u = log log t) for the argument function S(t)
  scaled by log t / log log t, and for its integral S1(t) scaled by
  log t / (log log t)^2.  Each has a plateau, a breakpoint, and a slowly
  decaying asymptotic branch.

* ``omega_small``, ``omega1``, ``omega2`` -- the decreasing envelope
  functions that turn those majorants into bounds for log|1/zeta| and
  log|zeta| just right of the critical line.  Terms containing exp(-e^u)
  decay doubly exponentially and are evaluated in log space; below the
  binary64 underflow threshold they flush to exactly 0.

* ``mertens_params`` / ``kfree_params`` -- the coefficient pipelines that
  convert a parameter triple (sigma0, t0, x0) into the constants N1 (or N2)
  and the exponent of the resulting |M(x)| <= N1 * x^alpha * log x (or
  Q_k) bound.  x0 is astronomically large in applications (10^(10^234) and
  beyond), so it is carried as log x0 and every power of x0 is computed in
  log space.

All functions broadcast over numpy arrays; scalars in, scalars out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, require

# Ordinate of the first nontrivial zero, cross-checked at import of the
# bundled zero table (zeta_numerics.default_zero_table).
GAMMA1 = 14.134725141734694

E_SQUARED = math.exp(2.0)
EXP_E2 = math.exp(E_SQUARED)            # e^(e^2) ~ 1618.18
T_SMALL_CUTOFF = 2.0 * EXP_E2           # boundary between scanned and bounded heights
LOG_3E_HALF = math.log(1.5 * math.e)    # log(3e/2)
LOG10 = math.log(10.0)
U_MIN = math.log(math.log(2.0 * math.pi))
LOG_X0_MIN = math.log(4.0) + 2.0 * E_SQUARED   # log(4*exp(2e^2))

# Exponent below which exp() underflows binary64; decaying positive terms
# are flushed to exactly 0 there.
_UNDERFLOW_EXP = -745.0


def _exp_decay(x):
    """exp(x) for exponents that may be hugely negative; flushes to 0."""
    x = np.asarray(x, dtype=float)
    with np.errstate(under="ignore"):
        out = np.where(x > _UNDERFLOW_EXP, np.exp(np.maximum(x, _UNDERFLOW_EXP)), 0.0)
    return out if out.ndim else float(out)


def slow_decay_coeff(base: float, scale: float, exponent: float, log_t: float) -> float:
    """a + scale / ((log t)^exponent * log log t), evaluated from log t."""
    return base + scale / (log_t**exponent * math.log(log_t))


# The two majorant families; the asymptotic base is chosen so the branch is
# continuous at the breakpoint (plateau value is reproduced exactly there).
_M1_AT_BREAK = slow_decay_coeff(0.759282, 20.1911, 0.285, 2465 * LOG10)
_M2_AT_BREAK = slow_decay_coeff(0.653, 60.12, 0.2705, 208 * LOG10)


@dataclass(frozen=True)
class PhiSpec:
    """Piecewise decreasing bound: plateau below u_break, then
    asym_base + b / (u * e^(c*u))."""

    plateau: float
    u_break: float
    asym_base: float
    b: float
    c: float

    def value(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(u < U_MIN - 1e-12):
            raise DomainError("violated: u >= log log 2pi")
        out = np.where(
            u < self.u_break,
            self.plateau,
            self.asym_base + self.b / (u * np.exp(self.c * np.minimum(u, 700.0))),
        )
        return out if out.ndim else float(out)


PHI_HAT_S = PhiSpec(
    plateau=0.96,
    u_break=math.log(2465 * LOG10),
    asym_base=1.719282 - _M1_AT_BREAK,
    b=20.1911,
    c=0.285,
)
PHI_HAT_S1 = PhiSpec(
    plateau=2.491,
    u_break=math.log(208 * LOG10),
    asym_base=3.144 - _M2_AT_BREAK,
    b=60.12,
    c=0.2705,
)
_PHI_SPECS = {"S": PHI_HAT_S, "S1": PHI_HAT_S1}

# Limiting value of phi_hat('S1', u) as u -> infinity; appears in the
# u -> infinity limits of u*omega_small and u*omega2.
PHI_HAT_S1_LIMIT = PHI_HAT_S1.asym_base


def phi_hat(kind: str, u):
    """The u-variable majorant; kind is 'S' or 'S1'."""
    try:
        spec = _PHI_SPECS[kind]
    except KeyError:
        raise DomainError("violated: kind in {'S', 'S1'}") from None
    return spec.value(u)


def phi_of_t(kind: str, t):
    """The t-variable majorant phi(t) = phi_hat(kind, log log t)."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 2 * math.pi - 1e-12):
        raise DomainError("violated: t >= 2pi")
    return phi_hat(kind, np.log(np.log(t)))


def delta(t0):
    """(1 + 1/t0)^2, strictly decreasing for t0 > 0."""
    t0 = np.asarray(t0, dtype=float)
    if np.any(t0 <= 0):
        raise DomainError("violated: t0 > 0")
    out = (1.0 + 1.0 / t0) ** 2
    return out if out.ndim else float(out)


def lambda_of(t0):
    """(t0/2) * log log(3 t0 / 2); the half-width budget of the local window."""
    t0 = np.asarray(t0, dtype=float)
    if np.any(t0 < 2 * GAMMA1 - 1e-4):
        raise DomainError("violated: t0 >= 2*gamma1")
    out = 0.5 * t0 * np.log(np.log(1.5 * t0))
    return out if out.ndim else float(out)


@lru_cache(maxsize=None)
def _log_abs_xi_half() -> float:
    from . import zeta_numerics

    return zeta_numerics.log_abs_xi_half()


def r1(t0: float) -> float:
    """Remainder budget of the log|zeta| integral representation.

    Six-term sum; the quadrature piece integrates log(2*pi*e/u)/(1-(u/t0)^2)
    over [0, gamma1] to absolute error <= 1e-8.  The integrand's only
    singularity is the integrable log at u = 0 (2*pi*e > gamma1, so the log
    stays positive); the leading [0, 1e-3] sliver is replaced by the closed
    form eps*(1 + log(2*pi*e/eps)) times the endpoint value of the rational
    factor, an upper cap.
    """
    t0 = float(t0)
    require(t0 > GAMMA1, "t0 > gamma1 (pole inside integration range otherwise)")
    two_pi_e = 2.0 * math.pi * math.e
    eps = 1e-3
    left = eps * (1.0 + math.log(two_pi_e / eps)) / (1.0 - (eps / t0) ** 2)
    mid, err = quad(
        lambda u: math.log(two_pi_e / u) / (1.0 - (u / t0) ** 2),
        eps,
        GAMMA1,
        epsabs=1e-12,
        epsrel=1e-13,
        limit=500,
    )
    if err > 1e-8:
        raise DomainError("violated: quadrature error <= 1e-8 in r1")
    integral = left + mid
    d = delta(t0)
    return (
        abs(_log_abs_xi_half())
        + 0.25 * math.log(2.0 * math.e / math.pi)
        + d / math.pi * integral
        + 7.0 / 8.0 * abs(math.log(1.0 / GAMMA1**2 - 1.0 / t0**2))
        + (7.0 + 2.0 * t0) / 4.0 * math.log(2.0 * t0 / (2.0 * t0 - 1.0))
        + 1.0 / (6.0 * t0)
        + 4.0 / (45.0 * t0**3)
    )


def _a1(t0):
    d = delta(t0)
    return d * (117.0 / 4.0 + 3.0 * d + (3.0 + d) * (t0 / EXP_E2 + (3.0 + math.e) / math.e))


def _a2(t0):
    return delta(t0) / 75.0 * (t0 / (2.0 * GAMMA1) + 1.0 + 1.0 / math.e)


def _a4(t0):
    d = delta(t0)
    return 4.0 * d / (5.0 * math.e) * (3.0 + d / 4.0)


def a_coeffs(t0: float) -> tuple[float, float, float, float]:
    """The four remainder coefficients (a1, a2, a3, a4); a3 includes r1(t0)."""
    t0 = float(t0)
    require(2 * GAMMA1 - 1e-4 <= t0 <= 50.0, "2*gamma1 <= t0 <= 50")
    a3 = (
        3.0 * (1.0 + t0) ** 2 / (GAMMA1 * (t0**2 - GAMMA1**2))
        + 0.81 * delta(t0) * (3.0 + delta(t0))
        + r1(t0)
    )
    return _a1(t0), _a2(t0), a3, _a4(t0)


# Constant upper bound for a3(t0) on the admissible range, used inside the
# u-variable envelope omega_small (a3 is decreasing, max at t0 = 2*gamma1).
A3_CAP = 15.83


def _check_omega_domain(t0, u):
    if np.any(np.asarray(u, dtype=float) < 1.0):
        raise DomainError("violated: u >= 1")
    if np.any(np.asarray(t0, dtype=float) < 2 * GAMMA1 - 1e-4) or np.any(
        np.asarray(t0, dtype=float) > 50.0 + 1e-12
    ):
        raise DomainError("violated: 2*gamma1 <= t0 <= 50")


def omega_small(t0, u):
    """Shared decreasing core of omega1 and omega2.

    u * omega_small(t0, u) tends to phi_hat_S1_limit * a1(t0) / lambda(t0)
    as u -> infinity; every other term carries at least one factor e^{-u}
    or e^{-e^u}.
    """
    _check_omega_domain(t0, u)
    t0 = np.asarray(t0, dtype=float)
    u = np.asarray(u, dtype=float)
    lam = 0.5 * t0 * np.log(np.log(1.5 * t0))
    eu = np.exp(np.minimum(u, 709.0))
    p1 = phi_hat("S", u)
    p2 = phi_hat("S1", u)
    decay_u = _exp_decay(-u)
    out = (
        _a1(t0) * p2 / (lam * u)
        + _a2(t0) * u * decay_u / lam
        + A3_CAP * decay_u
        + 12.0 * lam / u * _exp_decay(-eu) * (1.5 * p1 / u + 0.03 * _exp_decay(-(u + eu)))
        + _a4(t0) * p2 * decay_u / u**2
    )
    return out if out.ndim else float(out)


def omega1(sigma, t0, u):
    """Envelope for log|1/zeta|: decreasing in u (u >= 1) and in sigma."""
    sigma = np.asarray(sigma, dtype=float)
    if np.any(sigma <= 0.5):
        raise DomainError("violated: sigma > 1/2")
    core = omega_small(t0, u)
    t0 = np.asarray(t0, dtype=float)
    u = np.asarray(u, dtype=float)
    lam = 0.5 * t0 * np.log(np.log(1.5 * t0))
    eu = np.exp(np.minimum(u, 709.0))
    lead = 2.0 * (phi_hat("S", u) / u + 0.02 * _exp_decay(-(u + eu)))
    out = lead * np.log1p(2.0 * lam / ((sigma - 0.5) * u)) + core
    return out if out.ndim else float(out)


def omega2(t0, u):
    """Envelope for log|zeta|: lambda(t0)/(pi*u) + omega_small(t0, u)."""
    core = omega_small(t0, u)
    t0 = np.asarray(t0, dtype=float)
    u = np.asarray(u, dtype=float)
    lam = 0.5 * t0 * np.log(np.log(1.5 * t0))
    out = lam / (np.pi * u) + core
    return out if out.ndim else float(out)


def omega_limits(t0: float) -> tuple[float, float]:
    """Limits of u*omega_small and u*omega2 as u -> infinity."""
    lam = lambda_of(t0)
    core = PHI_HAT_S1_LIMIT * _a1(t0) / lam
    return core, lam / math.pi + core


def zeta_log_bounds(sigma: float, t: float, t0: float, lam: float) -> tuple[float, float]:
    """Height-t bounds (abs_log_bound, log_bound) for |log|zeta|| and log|zeta|.

    abs_log_bound majorises |log|zeta(sigma+it)||, log_bound majorises
    log|zeta(sigma+it)|.  Both consist of a main term plus the same
    five-term remainder Omega(t0, lam; t) built from a1..a4 and r1.
    """
    require(0.5 < sigma <= 1.5, "1/2 < sigma <= 3/2")
    require(t >= max(T_SMALL_CUTOFF, t0) - 1e-9, "t >= max(2*exp(e^2), t0)")
    require(t0 >= 2 * GAMMA1 - 1e-4, "t0 >= 2*gamma1")
    require(0.0 < lam <= lambda_of(t0) + 1e-12, "0 < lambda <= (t0/2)*log log(3*t0/2)")

    log_3t2 = math.log(1.5 * t)
    ll_3t2 = math.log(log_3t2)
    a1, a2, a3, a4 = a_coeffs(min(t0, 50.0)) if t0 <= 50.0 else (None,) * 4
    if a1 is None:
        raise DomainError("violated: t0 <= 50")

    phi1_3t2 = phi_of_t("S", 1.5 * t)
    phi2_3t2 = phi_of_t("S1", 1.5 * t)
    phi1_t2 = phi_of_t("S", 0.5 * t)
    omega_rem = (
        a1 * phi2_3t2 * log_3t2 / (lam * ll_3t2)
        + a2 * ll_3t2 / lam
        + a3
        + 12.0
        * (phi1_t2 * math.log(0.5 * t) / (t * math.log(math.log(0.5 * t))) + 1.0 / (75.0 * t**2))
        * lam
        / ll_3t2
        + a4 * phi2_3t2 / ll_3t2**2
    )
    lead = 2.0 * (phi1_3t2 * log_3t2 / ll_3t2 + 1.0 / (75.0 * t))
    abs_log_bound = lead * math.log1p(2.0 * lam / ((sigma - 0.5) * ll_3t2)) + omega_rem
    log_bound = lam * log_3t2 / (math.pi * ll_3t2) + omega_rem
    return abs_log_bound, log_bound


def u_from_log_x0(log_x0: float, kind: str = "mertens") -> float:
    """log log(3e*sqrt(x0)/2) for 'mertens', log log(3e*x0/2) for 'kfree'."""
    if kind == "mertens":
        return math.log(LOG_3E_HALF + 0.5 * log_x0)
    if kind == "kfree":
        return math.log(LOG_3E_HALF + log_x0)
    raise DomainError("violated: kind in {'mertens', 'kfree'}")


def n1_coefficient(sigma0: float, log_x0: float, omega01: float) -> float:
    """The multiplicative constant N1 of the |M(x)| <= N1 x^alpha log x bound.

    All powers of x0 are reciprocal decaying factors, evaluated as exp of
    negative log-space exponents so that table-scale x0 underflows cleanly
    to 0 instead of overflowing.
    """
    main = (
        1.0
        / math.pi
        * math.exp(omega01 * LOG_3E_HALF)
        * (
            0.5
            + 1.0 / log_x0
            + (1.1 - sigma0) * _exp_decay(-(sigma0 - 0.5) * log_x0) / log_x0
        )
    )
    small = _exp_decay(-0.5 * omega01 * log_x0) * (
        8.0 * EXP_E2 / (math.pi * sigma0 * (sigma0 - 0.5) * log_x0)
        + 23.6 * _exp_decay(-(sigma0 - 0.5) * log_x0)
    )
    return main + small


def mertens_params(sigma0: float, t0: float, log_x0: float) -> tuple[float, float, float]:
    """(omega01, alpha, n1) of the Mertens bound at parameters (sigma0, t0, x0)."""
    require(0.5 < sigma0 < 1.0, "1/2 < sigma0 < 1")
    require(2 * GAMMA1 - 1e-4 <= t0 <= 50.0, "2*gamma1 <= t0 <= 50")
    require(log_x0 >= LOG_X0_MIN - 1e-9, "x0 >= 4*exp(2e^2)")
    u = u_from_log_x0(log_x0, "mertens")
    w01 = omega1(sigma0, t0, u)
    alpha = sigma0 + 0.5 * w01
    return w01, alpha, n1_coefficient(sigma0, log_x0, w01)


def phi_cap(sigma: float, alpha: float, log_x0: float) -> float:
    """1 + sigma/(sigma-alpha) * (1 + 1/((sigma-alpha) log x0)); diverges as
    sigma -> alpha."""
    if sigma <= alpha:
        raise DomainError("violated: sigma > alpha (Phi diverges)")
    gap = sigma - alpha
    return 1.0 + sigma / gap * (1.0 + 1.0 / (gap * log_x0))


def fy_bound(sigma: float, ctx: "BoundContext", log_y: float) -> float:
    """log of the tail bound N1 * Phi * y^(alpha-sigma) * log y for the
    Moebius Dirichlet tail beyond y."""
    require(ctx.alpha < 1.0, "alpha < 1")
    require(sigma > ctx.alpha, "sigma > alpha")
    require(log_y >= ctx.log_x0 - 1e-9, "y >= x0")
    return (
        math.log(ctx.n1)
        + math.log(phi_cap(sigma, ctx.alpha, ctx.log_x0))
        + (ctx.alpha - sigma) * log_y
        + math.log(log_y)
    )


def n2_coefficient(
    n1: float, phi_val: float, omega02: float, log_x0: float, k: int, alpha: float
) -> float:
    """The multiplicative constant N2 of the k-free count bound."""
    main = (
        n1
        * phi_val
        / (math.pi * (k + 1))
        * math.exp(omega02 * LOG_3E_HALF)
        * (1.0 + 1.0 / log_x0 + 0.57 * _exp_decay(-0.5 * log_x0 - 2.0 * math.log(log_x0)))
    )
    small = _exp_decay(-omega02 * log_x0 - math.log(log_x0)) * (
        n1 / (k + 1) * (56.0 * EXP_E2 * phi_val / math.pi + 0.5 * _exp_decay(-log_x0 / (2 * (k + 1))))
        + 27.7 * _exp_decay(-(alpha - 0.5) * log_x0 / (k + 1))
    )
    return main + small


def kfree_params(
    sigma0: float, t1: float, t2: float, log_x0: float, k: int
) -> tuple[float, float, float]:
    """(omega02, n2, exponent) of the k-free bound; the bound itself reads
    |Q_k(x) - x/zeta(k)| <= n2 * x^exponent * log^2 x for x >= x0^(k+1)."""
    require(k >= 2, "k >= 2")
    require(2 * GAMMA1 - 1e-4 <= t2 <= 50.0, "2*gamma1 <= t2 <= 50")
    _, alpha, n1 = mertens_params(sigma0, t1, log_x0)
    require(alpha < 1.0, "alpha(sigma0, t1, x0) < 1")
    omega02 = omega2(t2, u_from_log_x0(log_x0, "kfree"))
    phi_val = phi_cap(0.5 * k, alpha, log_x0)
    n2 = n2_coefficient(n1, phi_val, omega02, log_x0, k, alpha)
    exponent = (0.5 + alpha) / (k + 1) + omega02
    return omega02, n2, exponent


def m_tail_coefficients(n1: float, abs_s: float, gap: float) -> tuple[float, float]:
    """Coefficient pair (c_log, c_const) of the weighted-Moebius tail bound
    (c_log * log x + c_const) / x^gap, with gap = sigma - alpha."""
    require(gap > 0.0, "sigma > alpha")
    return n1 * (1.0 + abs_s / gap), n1 * abs_s / gap**2


def m_tail_bound(sigma: float, abs_s: float, ctx: "BoundContext", log_x: float) -> float:
    """Bound for |sum_{n<=x} mu(n)/n^s - 1/zeta(s)| at Re s = sigma, |s| = abs_s."""
    require(sigma > 0.5, "sigma > 1/2")
    require(ctx.alpha < sigma, "alpha < sigma")
    require(log_x >= ctx.log_x0 - 1e-9, "x >= x0")
    c_log, c_const = m_tail_coefficients(ctx.n1, abs_s, sigma - ctx.alpha)
    return (c_log * log_x + c_const) * _exp_decay(-(sigma - ctx.alpha) * log_x)


@dataclass(frozen=True)
class BoundContext:
    """Validated parameter bundle consumed by every bound evaluation.

    x0 is stored as log x0.  u is the Mertens-flavoured height variable
    log log(3e*sqrt(x0)/2); the k-free pipelines recompute their own.
    """

    sigma0: float
    t0: float
    log_x0: float
    u: float
    lam: float
    delta: float
    a1: float
    a2: float
    a3: float
    a4: float
    r1: float
    omega01: float
    alpha: float
    n1: float

    @classmethod
    def create(cls, sigma0: float, t0: float, log_x0: float) -> "BoundContext":
        require(0.5 < sigma0 < 1.0, "1/2 < sigma0 < 1")
        require(2 * GAMMA1 - 1e-4 <= t0 <= 50.0, "2*gamma1 <= t0 <= 50")
        require(log_x0 >= LOG_X0_MIN - 1e-9, "x0 >= 4*exp(2e^2)")
        a1, a2, a3, a4 = a_coeffs(t0)
        w01, alpha, n1 = mertens_params(sigma0, t0, log_x0)
        return cls(
            sigma0=sigma0,
            t0=t0,
            log_x0=log_x0,
            u=u_from_log_x0(log_x0, "mertens"),
            lam=lambda_of(t0),
            delta=delta(t0),
            a1=a1,
            a2=a2,
            a3=a3,
            a4=a4,
            r1=r1(t0),
            omega01=w01,
            alpha=alpha,
            n1=n1,
        )
