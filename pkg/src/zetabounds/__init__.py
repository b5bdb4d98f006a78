"""Executable RH-conditional bounds for |zeta(s)|, the Mertens function, and
k-free counts, plus the numerical machinery that verifies every desk-scale
claim behind them: boundary scans, sieve identities, Perron residuals, and
regeneration of the published parameter tables."""

from .bound_engine import (
    GAMMA1,
    BoundContext,
    PhiSpec,
    a_coeffs,
    delta,
    fy_bound,
    kfree_params,
    lambda_of,
    m_tail_bound,
    m_tail_coefficients,
    mertens_params,
    omega1,
    omega2,
    omega_small,
    phi_hat,
    r1,
    zeta_log_bounds,
)
from .perron_check import PerronReport, numeric_perron_mertens, perron_error
from .sieve_lab import (
    SieveCheckpoint,
    check_bound_run,
    dirichlet_coeff,
    mertens_checkpoints,
    mobius_segment,
    qk1,
    qk_count,
    s_k,
)
from .table_optimizer import (
    OptRow,
    find_u0,
    min_alpha0,
    min_beta0,
    publish_rows,
    reproduce_table,
    x_exponent_from_u0,
)
from .zeta_numerics import (
    ScanReport,
    ZeroTable,
    default_zero_table,
    load_zeros,
    log_abs_xi_half,
    logzeta_via_zero_counts,
    scan_recip_lemma,
    scan_sup_lemma,
    xi,
    zeta,
)

__version__ = "0.1.0"
