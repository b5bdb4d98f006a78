"""Complex zeta/xi evaluation, zero-ordinate tables, and boundary scans.

zeta(s) is evaluated by Euler-Maclaurin summation with an internally checked
tail bound; the design envelope is |Im s| <= 1e4, far above the ~3236.4
(= 2*exp(e^2)) the verification scans need.  Boundary scans sample |1/zeta|
(divided by the local zero) or |zeta| at equidistant points along rectangle
edges; points on one edge form an arithmetic progression in s, so the power
sums are advanced with one complex multiply per term instead of a fresh
exponential, which makes million-point scans cheap.

A ZeroTable holds ascending ordinates of nontrivial zeros.  The bundled
fixture ships the first 2704, enough to cover heights up to 2*exp(e^2) with
one strip per zero plus a zero-free base rectangle.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from multiprocessing import Pool

import numpy as np
from scipy.integrate import quad
from scipy.special import bernoulli, gamma as complex_gamma

from .errors import (
    DomainError,
    InsufficientDataError,
    PrecisionError,
    ZerosParseError,
    require,
)

TWO_PI = 2.0 * math.pi
T_ENVELOPE = 1.0e4

# B_{2j}/(2j)! for j = 1..13; the Euler-Maclaurin correction weights.
_BERN = bernoulli(26)
_EM_WEIGHTS = [_BERN[2 * j] / math.factorial(2 * j) for j in range(1, 14)]
_EM_TERMS = 12  # correction terms used; the 13th drives the error bound


def _em_tail(s: np.ndarray, n: int, target_abs_err: float) -> np.ndarray:
    """Euler-Maclaurin closing terms at truncation n (vector over s).

    Returns N^{1-s}/(s-1) + N^{-s}/2 + the _EM_TERMS correction terms
    B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{1-s-2j}, and raises
    PrecisionError when the checked remainder bound exceeds the target.
    """
    n_pow = np.exp(-s * math.log(n))  # N^{-s}
    out = n_pow * n / (s - 1.0) + 0.5 * n_pow
    poch = s  # rising product s(s+1)...(s+2j-2)
    for j in range(1, _EM_TERMS + 1):
        if j > 1:
            poch = poch * (s + (2 * j - 3)) * (s + (2 * j - 2))
        out = out + _EM_WEIGHTS[j - 1] * poch * n_pow * float(n) ** (1 - 2 * j)
    # Standard remainder cap: |R| <= |first omitted term| * |s+2J+1|/(sigma+2J+1)
    j = _EM_TERMS + 1
    poch = poch * (s + (2 * j - 3)) * (s + (2 * j - 2))
    omitted = np.abs(_EM_WEIGHTS[j - 1] * poch * n_pow) * float(n) ** (1 - 2 * j)
    cap = omitted * np.abs(s + 2 * _EM_TERMS + 1) / (s.real + 2 * _EM_TERMS + 1)
    if np.max(cap) > target_abs_err:
        raise PrecisionError(
            "Euler-Maclaurin remainder %.3e exceeds target %.3e at N=%d"
            % (float(np.max(cap)), target_abs_err, n)
        )
    return out


def _truncation(max_t: float) -> int:
    return max(50, int(math.ceil(max_t)) + 8)


def zeta_linspace(
    s0: complex, ds: complex, count: int, target_abs_err: float = 1e-9
) -> np.ndarray:
    """zeta at the arithmetic progression s0, s0+ds, ..., s0+(count-1)*ds.

    The partial power sums are advanced multiplicatively: n^{-(s+ds)} =
    n^{-s} * n^{-ds}, one vector multiply per point.
    """
    s = s0 + ds * np.arange(count)
    max_t = float(np.max(np.abs(s.imag)))
    if max_t > T_ENVELOPE:
        raise DomainError("violated: |Im s| <= 1e4 (design envelope)")
    if np.any(np.abs(s - 1.0) < 1e-12):
        raise DomainError("violated: s != 1 (pole)")
    n = _truncation(max_t)
    for _ in range(3):
        try:
            return _zeta_linspace_at(s, s0, ds, count, n, target_abs_err)
        except PrecisionError:
            n *= 2
    raise PrecisionError("target accuracy unreachable at this height")


def _zeta_linspace_at(s, s0, ds, count, n, target_abs_err):
    log_k = np.log(np.arange(1, n))
    acc = np.exp(-s0 * log_k)
    out = np.empty(count, dtype=complex)
    if count == 1:
        out[0] = acc.sum()
    else:
        ratio = np.exp(-ds * log_k)
        for j in range(count):
            out[j] = acc.sum()
            if j + 1 < count:
                acc *= ratio
    return out + _em_tail(s, n, target_abs_err)


def zeta(s: complex, target_abs_err: float = 1e-10) -> complex:
    """zeta(s) with truncation error <= target_abs_err (checked internally).

    Binary64 phase rounding in n^{-it} adds noise of order
    |zeta(s)| * |t| * 1e-15, negligible against the 1e-6 scan targets but
    visible below 1e-9 when sigma < 0 and t is in the thousands.
    """
    s = complex(s)
    if s == 1.0:
        raise DomainError("violated: s != 1 (pole of zeta)")
    return complex(zeta_linspace(s, 0.0, 1, target_abs_err)[0])


def zeta_points(s: np.ndarray, target_abs_err: float = 1e-9) -> np.ndarray:
    """zeta at an arbitrary batch of points (outer-product evaluation)."""
    s = np.asarray(s, dtype=complex).ravel()
    max_t = float(np.max(np.abs(s.imag))) if s.size else 0.0
    if max_t > T_ENVELOPE:
        raise DomainError("violated: |Im s| <= 1e4 (design envelope)")
    n = _truncation(max_t)
    for _ in range(3):
        try:
            log_k = np.log(np.arange(1, n))
            main = np.exp(-np.outer(s, log_k)).sum(axis=1)
            return main + _em_tail(s, n, target_abs_err)
        except PrecisionError:
            n *= 2
    raise PrecisionError("target accuracy unreachable at this height")


def xi(s: complex) -> complex:
    """Completed zeta: xi(s) = (1/2) s (s-1) pi^{-s/2} Gamma(s/2) zeta(s).

    Entire, real on the critical line, symmetric under s <-> 1-s.  The
    Gamma factor underflows binary64 beyond |Im s| ~ 1300; stay below that.
    """
    s = complex(s)
    return (
        0.5
        * s
        * (s - 1.0)
        * np.exp(-0.5 * s * math.log(math.pi))
        * complex(complex_gamma(0.5 * s))
        * zeta(s, 1e-12)
    )


@lru_cache(maxsize=1)
def log_abs_xi_half() -> float:
    """log|xi(1/2)| to better than 1e-10 (~ -0.69892)."""
    return math.log(abs(xi(0.5 + 0.0j).real))


# ---------------------------------------------------------------------------
# Zero tables
# ---------------------------------------------------------------------------

MIN_ZEROS = 2704
_RVM_CHECK_HEIGHTS = (100.0, 1000.0, 3000.0)


def counting_main_term(t):
    """Smooth part of the zero-counting function: (t/2pi) log(t/2pi e) + 7/8."""
    t = np.asarray(t, dtype=float)
    out = t / TWO_PI * np.log(t / (TWO_PI * math.e)) + 7.0 / 8.0
    return out if out.ndim else float(out)


def counting_error_cap(t):
    """|N(t) - main(t)| cap: 0.96 log t / log log t + 1/(150 t), t >= 2pi."""
    t = np.asarray(t, dtype=float)
    out = 0.96 * np.log(t) / np.log(np.log(t)) + 1.0 / (150.0 * t)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class ZeroTable:
    """Ascending ordinates of nontrivial zeros with provenance digest."""

    ordinates: np.ndarray
    source_digest: str

    @property
    def count(self) -> int:
        return int(self.ordinates.size)

    @property
    def gamma1(self) -> float:
        return float(self.ordinates[0])

    def gamma(self, n: int) -> float:
        """1-indexed ordinate."""
        return float(self.ordinates[n - 1])

    def zeros_below(self, t: float) -> int:
        """N(t): number of ordinates <= t."""
        return int(np.searchsorted(self.ordinates, t, side="right"))

    def counting_error(self, t: float) -> float:
        """Q(t) = N(t) - main(t) - ... the fluctuating part of the count."""
        return self.zeros_below(t) - counting_main_term(t)


def _validate_table(ordinates: np.ndarray) -> None:
    if ordinates.size < MIN_ZEROS:
        raise InsufficientDataError(
            "need at least %d ordinates, found %d" % (MIN_ZEROS, ordinates.size)
        )
    diffs = np.diff(ordinates)
    bad = np.nonzero(diffs <= 0)[0]
    if bad.size:
        i = int(bad[0])
        raise ZerosParseError(
            "ordinates not strictly ascending at index %d (%r >= %r)"
            % (i + 1, ordinates[i], ordinates[i + 1])
        )
    if not (14.134725 < ordinates[0] < 14.134726):
        raise ZerosParseError("first ordinate %r is not gamma_1" % ordinates[0])
    for t in _RVM_CHECK_HEIGHTS:
        q = np.searchsorted(ordinates, t, side="right") - counting_main_term(t)
        if abs(q) > counting_error_cap(t):
            raise ZerosParseError(
                "zero count at t=%g off by %.3f, beyond the counting-formula cap" % (t, q)
            )


def load_zeros(path) -> ZeroTable:
    """Parse a zeros file: one decimal ordinate per line, '#' comments allowed."""
    with open(path, "rb") as fh:
        raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    values = []
    for lineno, line in enumerate(raw.decode("utf-8").splitlines(), start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            values.append(float(text))
        except ValueError:
            raise ZerosParseError("line %d: cannot parse %r" % (lineno, text)) from None
    if not values:
        raise ZerosParseError("no ordinates found in %s" % path)
    ordinates = np.asarray(values, dtype=float)
    _validate_table(ordinates)
    ordinates.setflags(write=False)
    return ZeroTable(ordinates=ordinates, source_digest=digest)


@lru_cache(maxsize=1)
def default_zero_table() -> ZeroTable:
    """The bundled 2704-ordinate fixture, cross-checked against GAMMA1."""
    from . import bound_engine

    with resources.as_file(resources.files("zetabounds.data") / "zeros_2704.txt") as p:
        table = load_zeros(p)
    if abs(table.gamma1 - bound_engine.GAMMA1) > 1e-9:
        raise ZerosParseError("bundled table disagrees with the gamma_1 constant")
    return table


# ---------------------------------------------------------------------------
# Boundary scans
# ---------------------------------------------------------------------------

SIGMA_LEFT = 0.5
SIGMA_RIGHT = 1.5
BASE_TOP = 11.0  # top of the zero-free base rectangle
SCAN_ABS_ERR = 1e-6
NEAR_ZERO_RADIUS = 1e-3


@dataclass(frozen=True)
class ScanReport:
    """Maximum of the scanned quantity over one strip or segment boundary."""

    segment: int | str
    gamma_n: float
    max_abs: float
    argmax: complex
    points_per_edge: int
    refined: bool


def scan_reports_to_csv(reports, fh) -> None:
    fh.write("strip_index,gamma_n,max_abs,re_argmax,im_argmax,points_per_edge,refined\n")
    for r in reports:
        fh.write(
            "%s,%.9f,%.9f,%.9f,%.9f,%d,%d\n"
            % (
                r.segment,
                r.gamma_n,
                r.max_abs,
                r.argmax.real,
                r.argmax.imag,
                r.points_per_edge,
                int(r.refined),
            )
        )


def _edge_values(s0: complex, s1: complex, points: int, fix_pole: bool) -> tuple[np.ndarray, np.ndarray]:
    """zeta at `points` equidistant samples of the segment [s0, s1]."""
    ds = (s1 - s0) / (points - 1)
    s = s0 + ds * np.arange(points)
    if fix_pole:
        # the segment passes through s = 1; the reciprocal has a removable
        # zero there, so report zeta as inf at the pole sample
        vals = np.empty(points, dtype=complex)
        for i, si in enumerate(s):
            vals[i] = np.inf if abs(si - 1.0) < 1e-12 else zeta(si, SCAN_ABS_ERR)
    else:
        vals = zeta_linspace(s0, ds, points, SCAN_ABS_ERR)
    return s, vals


def _strip_edges(table: ZeroTable, n: int) -> list[tuple[complex, complex]]:
    """The four boundary edges of strip n (n >= 1) or the base rectangle (n = 0)."""
    if n == 0:
        lo, hi = 0.0, BASE_TOP
    else:
        g = table.ordinates
        below = 22.0 - g[0] if n == 1 else g[n - 2]
        lo = 0.5 * (below + g[n - 1])
        hi = 0.5 * (g[n - 1] + g[n])
    return [
        (complex(SIGMA_LEFT, lo), complex(SIGMA_RIGHT, lo)),
        (complex(SIGMA_LEFT, hi), complex(SIGMA_RIGHT, hi)),
        (complex(SIGMA_LEFT, lo), complex(SIGMA_LEFT, hi)),
        (complex(SIGMA_RIGHT, lo), complex(SIGMA_RIGHT, hi)),
    ]


def _recip_edge_max(
    table: ZeroTable, n: int, s0: complex, s1: complex, points: int
) -> tuple[float, complex]:
    """Max over one edge of |1/zeta| (n=0) or |F_n| = |(z - rho_n)/zeta| (n>=1)."""
    crosses_pole = n == 0 and s0.imag == 0.0 and s1.imag == 0.0
    s, vals = _edge_values(s0, s1, points, fix_pole=crosses_pole)
    with np.errstate(divide="ignore"):
        quantity = 1.0 / np.abs(vals)
    if n >= 1:
        rho = complex(0.5, table.gamma(n))
        dist = np.abs(s - rho)
        quantity = quantity * dist
        near = dist < NEAR_ZERO_RADIUS
        if np.any(near):
            h = NEAR_ZERO_RADIUS
            dzeta = (zeta(rho + h, 1e-9) - zeta(rho - h, 1e-9)) / (2.0 * h)
            quantity[near] = 1.0 / abs(dzeta)
    i = int(np.argmax(quantity))
    return float(quantity[i]), complex(s[i])


def _scan_one_strip(
    table: ZeroTable, n: int, points_per_edge: int, refine_threshold: float
) -> ScanReport:
    best, arg = -np.inf, 0j
    refined = False
    for s0, s1 in _strip_edges(table, n):
        m, a = _recip_edge_max(table, n, s0, s1, points_per_edge)
        if m > refine_threshold:
            fine = 4 * (points_per_edge - 1) + 1
            m, a = _recip_edge_max(table, n, s0, s1, fine)
            refined = True
        if m > best:
            best, arg = m, a
    return ScanReport(
        segment=n,
        gamma_n=table.gamma(n) if n >= 1 else float("nan"),
        max_abs=best,
        argmax=arg,
        points_per_edge=points_per_edge,
        refined=refined,
    )


_POOL_STATE: dict = {}


def _pool_init(ordinates, digest, points, threshold):
    _POOL_STATE["table"] = ZeroTable(np.asarray(ordinates), digest)
    _POOL_STATE["points"] = points
    _POOL_STATE["threshold"] = threshold


def _pool_scan(n):
    return _scan_one_strip(
        _POOL_STATE["table"], n, _POOL_STATE["points"], _POOL_STATE["threshold"]
    )


def scan_recip_lemma(
    zeros: ZeroTable,
    points_per_edge: int = 101,
    refine_threshold: float = 2.0,
    strips=None,
    processes: int | None = None,
) -> list[ScanReport]:
    """Scan |1/zeta| over the base rectangle and |F_n| over every zero strip.

    Strip n spans Im z between the midpoints of (gamma_{n-1}, gamma_n) and
    (gamma_n, gamma_{n+1}); the artificial gamma_0 = 22 - gamma_1 makes the
    first midpoint exactly 11, the top of the base rectangle.  Edges whose
    coarse maximum exceeds refine_threshold are rescanned once at 4x density.
    Reports come back in strip order regardless of the worker count.
    """
    require(points_per_edge >= 101, "points_per_edge >= 101")
    if zeros.count < MIN_ZEROS:
        raise InsufficientDataError("zero table too short for the strip cover")
    if strips is None:
        strips = range(0, MIN_ZEROS)  # 0 .. 2703
    strips = list(strips)
    if any(n < 0 or n > MIN_ZEROS - 1 for n in strips):
        raise DomainError("violated: 0 <= strip index <= %d" % (MIN_ZEROS - 1))
    if processes and processes > 1:
        with Pool(
            processes,
            initializer=_pool_init,
            initargs=(zeros.ordinates, zeros.source_digest, points_per_edge, refine_threshold),
        ) as pool:
            return pool.map(_pool_scan, strips, chunksize=32)
    return [
        _scan_one_strip(zeros, n, points_per_edge, refine_threshold) for n in strips
    ]


def _sup_gap_edges_max(
    table: ZeroTable, sigma: float, points_per_gap: int, lo_idx: int, hi_idx: int
) -> tuple[float, complex]:
    """Max |zeta| on the vertical line Re = sigma, sampled points_per_gap
    equidistant points per zero gap between ordinate indices [lo_idx, hi_idx]."""
    g = table.ordinates
    best, arg = -np.inf, 0j
    for j in range(lo_idx, hi_idx):
        t0, t1 = g[j], g[j + 1]
        ds = complex(0.0, (t1 - t0) / (points_per_gap - 1))
        vals = np.abs(zeta_linspace(complex(sigma, t0), ds, points_per_gap, SCAN_ABS_ERR))
        i = int(np.argmax(vals))
        if vals[i] > best:
            best = float(vals[i])
            arg = complex(sigma, t0 + i * ds.imag)
    return best, arg


def _sup_segment(args):
    table_ord, digest, name, sigma, points, lo, hi = args
    table = ZeroTable(np.asarray(table_ord), digest)
    m, a = _sup_gap_edges_max(table, sigma, points, lo, hi)
    return name, m, a


def scan_sup_lemma(
    zeros: ZeroTable, points_per_edge: int = 101, processes: int | None = None
) -> list[ScanReport]:
    """Scan |zeta| over the boundary of the tall thin rectangle
    [1/2, 3/4] x [0, gamma_2703].

    The two long vertical edges are sampled points_per_edge points per zero
    gap (gamma_1 .. gamma_2703); the remaining boundary (bottom edge, top
    edge, and the two stubs below gamma_1) is reported as 'rest'.
    """
    require(points_per_edge >= 101, "points_per_edge >= 101")
    if zeros.count < MIN_ZEROS:
        raise InsufficientDataError("zero table too short for the sup scan")
    top = zeros.gamma(2703)
    ppe = points_per_edge

    jobs = [
        (zeros.ordinates, zeros.source_digest, "critical_line", 0.5, ppe, 0, 2702),
        (zeros.ordinates, zeros.source_digest, "sigma_3_4", 0.75, ppe, 0, 2702),
    ]
    if processes and processes > 1:
        with Pool(min(processes, len(jobs))) as pool:
            results = pool.map(_sup_segment, jobs)
    else:
        results = [_sup_segment(j) for j in jobs]

    reports = [
        ScanReport(name, float("nan"), m, a, ppe, False) for name, m, a in results
    ]

    rest_edges = [
        (complex(0.5, 0.0), complex(0.75, 0.0)),            # bottom
        (complex(0.5, top), complex(0.75, top)),            # top
        (complex(0.5, 0.0), complex(0.5, zeros.gamma1)),    # left stub below gamma_1
        (complex(0.75, 0.0), complex(0.75, zeros.gamma1)),  # right stub
    ]
    best, arg = -np.inf, 0j
    for s0, s1 in rest_edges:
        ds = (s1 - s0) / (ppe - 1)
        vals = np.abs(zeta_linspace(s0, ds, ppe, SCAN_ABS_ERR))
        i = int(np.argmax(vals))
        if vals[i] > best:
            best, arg = float(vals[i]), complex(s0 + i * ds)
    reports.append(ScanReport("rest", float("nan"), best, arg, ppe, False))
    return reports


# ---------------------------------------------------------------------------
# The log|zeta| integral identity
# ---------------------------------------------------------------------------


def logzeta_via_zero_counts(
    s: complex, zeros: ZeroTable, u_max: float, t0: float | None = None
) -> tuple[float, float, float]:
    """Compare log|zeta(s)| with the truncated zero-count integral.

    Returns (lhs, rhs, tail_cap): lhs is log|zeta(s)| by direct evaluation;
    rhs is Re{2(s-1/2)^2 Int_{gamma_1}^{u_max} Q(u)/(u(u^2+(s-1/2)^2)) du}
    with Q(u) = N(u) - main(u) computed exactly from the table (the step
    part integrates in closed form, the smooth part by adaptive quadrature);
    tail_cap bounds the discarded tail analytically via the counting-error
    cap and the u^{-3} decay of the integrand.  The identity guarantees
    |lhs - rhs| <= r1(t0) + tail_cap for any admissible t0 <= Im s.
    """
    s = complex(s)
    sigma, t = s.real, s.imag
    require(0.5 < sigma <= 1.5, "1/2 < Re s <= 3/2")
    if t0 is None:
        t0 = min(t, 50.0)
    g1 = zeros.gamma1
    require(g1 < t0 <= t, "gamma_1 < t0 <= Im s")
    require(t <= u_max / 2.0, "Im s <= u_max/2")
    require(u_max <= float(zeros.ordinates[-1]), "u_max <= largest tabulated ordinate")

    lhs = math.log(abs(zeta(s, 1e-10)))

    c = (s - 0.5) ** 2

    def antideriv(u):
        return np.log(u) - 0.5 * np.log(u * u + c)

    m = zeros.zeros_below(u_max)
    g = zeros.ordinates[:m]
    seg_starts = g
    seg_ends = np.append(g[1:], u_max)
    counts = np.arange(1, m + 1)
    step_part = float(np.real(2.0 * np.sum(counts * (antideriv(seg_ends) - antideriv(seg_starts)))))

    def smooth(u):
        return (2.0 * c * counting_main_term(u) / (u * (u * u + c))).real

    smooth_part, smooth_err = quad(
        smooth, g1, u_max, points=[t], limit=400, epsabs=1e-9, epsrel=1e-11
    )
    rhs = step_part - smooth_part

    ll = math.log(math.log(u_max))
    tail_cap = (
        2.0
        * ((sigma - 0.5) ** 2 + t * t)
        * (4.0 / 3.0)
        * (
            0.96 * (2.0 * math.log(u_max) + 1.0) / (4.0 * u_max**2 * ll)
            + 1.0 / (450.0 * u_max**3)
        )
    ) + abs(smooth_err)
    return lhs, rhs, tail_cap
