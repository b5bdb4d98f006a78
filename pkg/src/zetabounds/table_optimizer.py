"""Regeneration of the published bound-parameter tables.

For a height variable u0 the attainable Mertens exponent is

    alpha0(sigma0, t0; u0) = sigma0 + omega1(sigma0, t0; u0) / 2,

minimised over sigma0 in the half-open grid {1/2 + n/2000 : 1 <= n <= 1000}
and t0 in [30, 50].  The k-free (k = 2) analogue replaces alpha0 by

    beta0 = (1/2 + alpha1)/3 + omega2(2*gamma1; u0),
    alpha1 = sigma0 + omega1(sigma0, t1; u0 - 0.6932) / 2,

where the 0.6932 shift is a safe lower estimate of the log 2 drop from x0
to sqrt(x0).  Given a target exponent, the smallest u0 on the table's
printed grid (1e-3 for Mertens, 1e-2 for k-free) with minimum below target
is located by bisection, and the corresponding x0 is reported through
log x0 = 10^X log 10 (Mertens) or 10^Y log 10 (k-free).

The inner minimisation runs the whole sigma0 grid as one numpy vector: a
21-point coarse scan over t brackets the minimum, then golden-section
iterations shrink every bracket simultaneously to width below 1e-8.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import bound_engine as be
from .errors import RangeError, require

SIGMA_GRID = 0.5 + np.arange(1, 1001) / 2000.0
T_LO, T_HI = 30.0, 50.0
_COARSE_T = np.linspace(T_LO, T_HI, 21)
_GOLDEN_ITERS = 48
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

U0_STEP = {"mertens": 1e-3, "kfree": 1e-2}
U0_FLOOR = {"mertens": 10.0, "kfree": 10.0 + 0.6932}
U0_CEILING = 700.0
KFREE_SHIFT = 0.6932

DEFAULT_TARGETS = {
    "mertens": (0.999, 0.99, 0.9, 0.85, 0.8, 0.75, 0.7, 0.65, 0.6, 0.55),
    "kfree": (0.4999, 0.499, 0.49, 0.48, 0.47, 0.46, 0.45, 0.44, 0.4, 0.35),
}

PUBLISH_DECIMALS = {"mertens": (3, 3), "kfree": (4, 3)}  # (coeff, exponent)


@dataclass(frozen=True)
class OptRow:
    """One regenerated table row."""

    kind: str
    target: float
    u0: float
    sigma0: float
    t0: float
    attained: float  # alpha0 or beta0
    coeff: float  # N1 or N2
    exponent10: float  # X or Y


def _golden_grid_min(objective, u0: float):
    """Minimise objective(sigma_grid, t, u0) over t for every grid sigma at
    once; returns (t_star, f_star) vectors."""
    coarse = np.stack([objective(SIGMA_GRID, np.full_like(SIGMA_GRID, t), u0) for t in _COARSE_T])
    idx = np.argmin(coarse, axis=0)
    a = _COARSE_T[np.maximum(idx - 1, 0)]
    b = _COARSE_T[np.minimum(idx + 1, len(_COARSE_T) - 1)]
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = objective(SIGMA_GRID, c, u0)
    fd = objective(SIGMA_GRID, d, u0)
    for _ in range(_GOLDEN_ITERS):
        left = fc < fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        c = b - _INVPHI * (b - a)
        d = a + _INVPHI * (b - a)
        fc = objective(SIGMA_GRID, c, u0)
        fd = objective(SIGMA_GRID, d, u0)
    t_star = 0.5 * (a + b)
    return t_star, objective(SIGMA_GRID, t_star, u0)


def _alpha0_objective(sigma, t, u0):
    return sigma + 0.5 * be.omega1(sigma, t, u0)


def min_alpha0(u0: float) -> tuple[float, float, float]:
    """Grid-global minimum of alpha0 at height u0; ties break toward the
    smaller sigma0.  Returns (sigma0, t0, alpha0)."""
    require(u0 >= 10.0, "u0 >= 10")
    t_star, f_star = _golden_grid_min(_alpha0_objective, u0)
    i = int(np.argmin(f_star))
    return float(SIGMA_GRID[i]), float(t_star[i]), float(f_star[i])


def min_beta0(u0: float) -> tuple[float, float, float, float]:
    """Grid-global minimum of beta0 at height u0 (k = 2 pipeline).
    Returns (sigma0, t1, beta0, alpha1)."""
    require(u0 - KFREE_SHIFT >= 10.0, "u0 - 0.6932 >= 10")
    w2 = be.omega2(2 * be.GAMMA1, u0)

    def objective(sigma, t, u):
        return sigma + 0.5 * be.omega1(sigma, t, u - KFREE_SHIFT)

    t_star, alpha1 = _golden_grid_min(objective, u0)
    beta = (0.5 + alpha1) / 3.0 + w2
    i = int(np.argmin(beta))
    return float(SIGMA_GRID[i]), float(t_star[i]), float(beta[i]), float(alpha1[i])


def x_exponent_from_u0(u0: float, kind: str) -> float:
    """The power-tower exponent (X or Y) with log x0 = 10^exp * log 10.

    Mertens: u0 = log log(3e sqrt(x0)/2); k-free: u0 = log log(3e x0 / 2).
    Evaluated in log space so u0 in the hundreds cannot overflow."""
    require(u0 > math.log(be.LOG_3E_HALF), "u0 > log log(3e/2)")
    log_of_logx0 = u0 + math.log1p(-be.LOG_3E_HALF * math.exp(-u0))
    if kind == "mertens":
        log_of_logx0 += math.log(2.0)
    else:
        require(kind == "kfree", "kind in {'mertens', 'kfree'}")
    return (log_of_logx0 - math.log(be.LOG10)) / be.LOG10


def _log_x0_from_u0(u0: float, kind: str) -> float:
    scale = 2.0 if kind == "mertens" else 1.0
    return scale * (math.exp(u0) - be.LOG_3E_HALF)


def mertens_row(u0: float, target: float = math.nan) -> OptRow:
    """Evaluate the full Mertens pipeline at height u0."""
    sigma0, t0, alpha0 = min_alpha0(u0)
    log_x0 = _log_x0_from_u0(u0, "mertens")
    n1 = be.n1_coefficient(sigma0, log_x0, 2.0 * (alpha0 - sigma0))
    return OptRow(
        kind="mertens",
        target=target,
        u0=u0,
        sigma0=sigma0,
        t0=t0,
        attained=alpha0,
        coeff=n1,
        exponent10=x_exponent_from_u0(u0, "mertens"),
    )


def kfree_row(u0: float, target: float = math.nan) -> OptRow:
    """Evaluate the full k-free (k = 2) pipeline at height u0."""
    sigma0, t1, beta0, alpha1 = min_beta0(u0)
    log_x0 = _log_x0_from_u0(u0, "kfree")
    omega01 = 2.0 * (alpha1 - sigma0)
    n1 = be.n1_coefficient(sigma0, log_x0, omega01)
    phi_val = be.phi_cap(1.0, alpha1, log_x0)
    omega02 = be.omega2(2 * be.GAMMA1, u0)
    n2 = be.n2_coefficient(n1, phi_val, omega02, log_x0, 2, alpha1)
    return OptRow(
        kind="kfree",
        target=target,
        u0=u0,
        sigma0=sigma0,
        t0=t1,
        attained=beta0,
        coeff=n2,
        exponent10=x_exponent_from_u0(u0, "kfree"),
    )


def _attained(u0: float, kind: str) -> float:
    return min_alpha0(u0)[2] if kind == "mertens" else min_beta0(u0)[2]


def find_u0(target: float, kind: str) -> OptRow:
    """Smallest u0 on the printed grid whose optimised exponent drops below
    target; the returned row re-evaluates the whole pipeline there."""
    lo_ok = {"mertens": (0.5, 1.0), "kfree": (1.0 / 3.0, 0.5)}[kind]
    if not (lo_ok[0] < target < lo_ok[1]):
        raise RangeError("target %g outside the achievable range %s" % (target, lo_ok))
    h = U0_STEP[kind]
    k_lo = int(math.ceil(U0_FLOOR[kind] / h))
    k_hi = int(math.floor(U0_CEILING / h))
    floor_attained = _attained(k_hi * h, kind)
    if floor_attained >= target:
        raise RangeError(
            "target %g below the observed floor %.6f at the u0 search ceiling %g"
            % (target, floor_attained, k_hi * h)
        )
    if _attained(k_lo * h, kind) < target:
        k = k_lo
    else:
        lo, hi = k_lo, k_hi  # attained(lo) >= target > attained(hi)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if _attained(mid * h, kind) < target:
                hi = mid
            else:
                lo = mid
        k = hi
    u0 = round(k * h, 6)
    row = mertens_row(u0, target) if kind == "mertens" else kfree_row(u0, target)
    if not row.attained < target:
        raise RangeError("verified evaluation at u0=%g failed to beat %g" % (u0, target))
    return row


def reproduce_table(kind: str, targets=None) -> list[OptRow]:
    require(kind in DEFAULT_TARGETS, "kind in {'mertens', 'kfree'}")
    if targets is None:
        targets = DEFAULT_TARGETS[kind]
    return [find_u0(t, kind) for t in targets]


def ceil_at(value: float, decimals: int) -> float:
    """Round up at the given decimal place (tiny epsilon guards float fuzz)."""
    scale = 10.0**decimals
    return math.ceil(value * scale - 1e-9) / scale


def publish_rows(rows: list[OptRow]) -> list[dict]:
    """Apply the publication rounding: coefficients and exponents are
    rounded up at their column's printed precision."""
    out = []
    for r in rows:
        cdec, edec = PUBLISH_DECIMALS[r.kind]
        out.append(
            {
                "target": r.target,
                "coeff": ceil_at(r.coeff, cdec),
                "exponent10": ceil_at(r.exponent10, edec),
            }
        )
    return out


def rows_to_csv(rows: list[OptRow], fh) -> None:
    fh.write("u0,sigma0,t0,attained,coeff,exponent10\n")
    for r in rows:
        fh.write(
            "%.6f,%.4f,%.7f,%.6f,%.6f,%.5f\n"
            % (r.u0, r.sigma0, r.t0, r.attained, r.coeff, r.exponent10)
        )


def rows_to_json(rows: list[OptRow]) -> str:
    return json.dumps(
        [
            {
                "kind": r.kind,
                "target": r.target,
                "u0": r.u0,
                "sigma0": r.sigma0,
                "t0": r.t0,
                "attained": r.attained,
                "coeff": r.coeff,
                "exponent10": r.exponent10,
            }
            for r in rows
        ],
        indent=2,
    )
