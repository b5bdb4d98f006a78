"""Exact arithmetic-function computation by segmented sieving.

Computes the Moebius function mu(n) on ranges, the Mertens function
M(x) = sum mu(n), the weighted sum m(x) = sum mu(n)/n, k-free counts
Q_k(x), and the Dirichlet coefficients a_d of zeta(s) * f_y(ks) (the
product of zeta with the Moebius tail beyond y raised to k-th powers).

Everything is exact integer arithmetic except m(x), which is accumulated
with pairwise per-segment sums plus Kahan compensation across segments
(worst-case error well below 1e-11 even at 1e9 terms).  Segments are
2^22 values so working arrays stay cache-friendly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundViolation, DomainError, ResourceError, require

SEGMENT_SIZE = 1 << 22
SIEVE_LIMIT = 10**10
_FACTOR_PRIME_LIMIT = 10**6


def primes_up_to(n: int) -> np.ndarray:
    """Ascending primes <= n (plain Eratosthenes on a numpy bool array)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.nonzero(flags)[0].astype(np.int64)


def _mobius_block(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    """mu on [lo, hi] inclusive; primes must reach sqrt(hi)."""
    size = hi - lo + 1
    mu = np.ones(size, dtype=np.int8)
    val = np.arange(lo, hi + 1, dtype=np.int64)
    root = math.isqrt(hi)
    for p in primes:
        p = int(p)
        if p > root:
            break
        start = ((lo + p - 1) // p) * p - lo
        mu[start::p] = -mu[start::p]
        val[start::p] //= p
        p2 = p * p
        if p2 <= hi:
            start2 = ((lo + p2 - 1) // p2) * p2 - lo
            mu[start2::p2] = 0
    rest = val > 1  # exactly one prime factor > sqrt(hi) remains
    mu[rest] = -mu[rest]
    return mu


def mobius_segment(lo: int, hi: int) -> np.ndarray:
    """Exact mu(n) for n in [lo, hi] (int8 array)."""
    require(1 <= lo <= hi, "1 <= lo <= hi")
    require(hi <= SIEVE_LIMIT, "hi <= 1e10 (design envelope)")
    if hi - lo + 1 > SEGMENT_SIZE:
        raise ResourceError(
            "segment of %d values exceeds the %d budget" % (hi - lo + 1, SEGMENT_SIZE)
        )
    return _mobius_block(lo, hi, primes_up_to(math.isqrt(hi)))


def _kfree_block(lo: int, hi: int, k: int, primes: np.ndarray) -> np.ndarray:
    """Boolean k-free indicator on [lo, hi]."""
    free = np.ones(hi - lo + 1, dtype=bool)
    for p in primes:
        pk = int(p) ** k
        if pk > hi:
            break
        start = ((lo + pk - 1) // pk) * pk - lo
        free[start::pk] = False
    return free


def kfree_segment(lo: int, hi: int, k: int) -> np.ndarray:
    """Boolean indicator of k-free integers on [lo, hi]."""
    require(1 <= lo <= hi, "1 <= lo <= hi")
    require(hi <= SIEVE_LIMIT, "hi <= 1e10 (design envelope)")
    require(k >= 2, "k >= 2")
    if hi - lo + 1 > SEGMENT_SIZE:
        raise ResourceError(
            "segment of %d values exceeds the %d budget" % (hi - lo + 1, SEGMENT_SIZE)
        )
    return _kfree_block(lo, hi, k, primes_up_to(math.isqrt(hi)))


@dataclass
class SieveCheckpoint:
    """Exact values (x, M(x), m(x), Q_k(x) for requested k) at one cutoff."""

    x: int
    mertens: int
    m_weighted: float
    qk: dict[int, int] = field(default_factory=dict)


def mertens_checkpoints(
    limit: int, checkpoints: list[int], qk: tuple[int, ...] = ()
) -> list[SieveCheckpoint]:
    """One streaming sieve pass to `limit`, emitting exact values at each
    checkpoint.  Checkpoints must be ascending and <= limit."""
    require(limit >= 1, "limit >= 1")
    require(limit <= SIEVE_LIMIT, "limit <= 1e10 (design envelope)")
    cps = list(checkpoints)
    require(all(1 <= x <= limit for x in cps), "1 <= checkpoint <= limit")
    require(all(a < b for a, b in zip(cps, cps[1:])), "checkpoints strictly ascending")
    for k in qk:
        require(k >= 2, "k >= 2")

    primes = primes_up_to(math.isqrt(limit))
    running_m = 0
    weighted, comp = 0.0, 0.0  # Kahan pair across segments
    running_q = {k: 0 for k in qk}
    out: list[SieveCheckpoint] = []
    next_cp = 0

    for seg_lo in range(1, limit + 1, SEGMENT_SIZE):
        seg_hi = min(seg_lo + SEGMENT_SIZE - 1, limit)
        mu = _mobius_block(seg_lo, seg_hi, primes)
        inv = mu / np.arange(seg_lo, seg_hi + 1, dtype=np.float64)
        frees = {k: _kfree_block(seg_lo, seg_hi, k, primes) for k in qk}

        seg_cps = []
        while next_cp < len(cps) and cps[next_cp] <= seg_hi:
            seg_cps.append(cps[next_cp])
            next_cp += 1

        if seg_cps:
            cum_m = np.cumsum(mu, dtype=np.int64)
            cum_w = np.cumsum(inv)
            cum_q = {k: np.cumsum(frees[k], dtype=np.int64) for k in qk}
            for x in seg_cps:
                i = x - seg_lo
                out.append(
                    SieveCheckpoint(
                        x=x,
                        mertens=running_m + int(cum_m[i]),
                        m_weighted=weighted + comp + float(cum_w[i]),
                        qk={k: running_q[k] + int(cum_q[k][i]) for k in qk},
                    )
                )
            seg_m = int(cum_m[-1])
            seg_q = {k: int(cum_q[k][-1]) for k in qk}
        else:
            seg_m = int(mu.sum(dtype=np.int64))
            seg_q = {k: int(frees[k].sum(dtype=np.int64)) for k in qk}

        running_m += seg_m
        for k in qk:
            running_q[k] += seg_q[k]
        y = float(np.sum(inv)) - comp
        t = weighted + y
        comp = (t - weighted) - y
        weighted = t

    return out


def _int_kth_root(x: int, k: int) -> int:
    r = round(x ** (1.0 / k))
    while r > 0 and r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def qk1(x: int, y: int, k: int) -> int:
    """The head count sum_{n<=y} mu(n) * floor(x / n^k)."""
    require(k >= 2, "k >= 2")
    require(1 <= y, "y >= 1")
    require(y**k <= x, "y <= x^(1/k)")
    mu = _mobius_block(1, y, primes_up_to(math.isqrt(y)))
    n = np.arange(1, y + 1, dtype=np.int64)
    return int(np.sum(mu.astype(np.int64) * (x // n**k)))


def s_k(x: int, y: int, k: int) -> float:
    """Fractional-part correlation sum_{n<=y} (x/n^k - floor - 1/2) mu(n);
    asserted to stay within the trivial cap y/2."""
    require(k >= 2, "k >= 2")
    require(1 <= y, "y >= 1")
    require(y**k <= x, "y <= x^(1/k)")
    mu = _mobius_block(1, y, primes_up_to(math.isqrt(y)))
    nk = np.arange(1, y + 1, dtype=np.int64) ** k
    frac = (x % nk) / nk
    value = float(np.sum((frac - 0.5) * mu))
    if abs(value) > y / 2 + 1e-9:
        raise BoundViolation("|S_k(%d, %d)| = %.6f exceeds y/2" % (x, y, value))
    return value


def qk_count(x: int, k: int) -> int:
    """Number of k-free integers <= x, computed two ways and cross-checked:
    by direct sieve and by the Moebius head sum with y = x^(1/k)."""
    require(k >= 2, "k >= 2")
    require(x >= 1, "x >= 1")
    require(x <= SIEVE_LIMIT, "x <= 1e10 (design envelope)")
    primes = primes_up_to(math.isqrt(x))
    direct = 0
    for seg_lo in range(1, x + 1, SEGMENT_SIZE):
        seg_hi = min(seg_lo + SEGMENT_SIZE - 1, x)
        direct += int(_kfree_block(seg_lo, seg_hi, k, primes).sum(dtype=np.int64))
    via_mu = qk1(x, _int_kth_root(x, k), k)
    if direct != via_mu:
        raise BoundViolation(
            "Q_%d(%d): sieve gives %d but the Moebius sum gives %d" % (k, x, direct, via_mu)
        )
    return direct


_factor_primes_cache: np.ndarray | None = None


def _factor_primes() -> np.ndarray:
    global _factor_primes_cache
    if _factor_primes_cache is None:
        _factor_primes_cache = primes_up_to(_FACTOR_PRIME_LIMIT)
    return _factor_primes_cache


def _factorize(d: int) -> dict[int, int]:
    """Prime factorization by trial division over primes <= 1e6; the leftover
    cofactor may only be 1, a prime power, or a product of two large primes
    with exponent one (anything else is beyond the supported budget)."""
    factors: dict[int, int] = {}
    for p in _factor_primes():
        p = int(p)
        if p * p > d:
            break
        while d % p == 0:
            factors[p] = factors.get(p, 0) + 1
            d //= p
    if d > 1:
        for e in range(60, 0, -1):
            r = _int_kth_root(d, e) if e > 1 else d
            if r**e == d and (e == 1 or r > 1):
                if e == 1 and d > _FACTOR_PRIME_LIMIT**2:
                    raise ResourceError("cofactor %d exceeds the factoring budget" % d)
                factors[r] = factors.get(r, 0) + e
                break
    return factors


def dirichlet_coeff(d: int, y: int, k: int) -> int:
    """Coefficient a_d of the Dirichlet series zeta(s) * f_y(ks):
    a_d = sum of mu(r) over r > y with r^k | d.

    Only squarefree r contribute, so r ranges over the squarefree divisors
    of the product D of primes whose exponent in d is >= k; a_d = 0 whenever
    d is k-free (D = 1).  For D > 1 the Moebius sum over all divisors of D
    vanishes, so a_d = -sum_{r | D, r <= y} mu(r), which a pruned DFS over
    ascending primes enumerates even when D has hundreds of prime factors.
    """
    require(d >= 1, "d >= 1")
    require(y >= 1, "y >= 1")
    require(k >= 2, "k >= 2")
    base = sorted(p for p, e in _factorize(d).items() if e >= k)
    if not base:
        return 0

    budget = 10**7

    def below(idx: int, prod: int, sign: int) -> int:
        nonlocal budget
        budget -= 1
        if budget < 0:
            raise ResourceError("divisor enumeration exceeds the node budget")
        total = sign
        for j in range(idx, len(base)):
            nxt = prod * base[j]
            if nxt > y:
                break  # primes ascend, so every later branch also exceeds y
            total += below(j + 1, nxt, -sign)
        return total

    return -below(0, 1, 1)


def check_bound_run(checkpoints: list[int], ctx) -> list[dict]:
    """Sieve M(x) at each checkpoint and assert |M(x)| <= n1 * x^alpha * log x.

    Returns one row per checkpoint with the attained margin (bound / |M|).
    Every checkpoint must sit at or above the context's x0.
    """
    for x in checkpoints:
        require(math.log(x) >= ctx.log_x0 - 1e-9, "checkpoint x >= x0")
    rows = []
    results = mertens_checkpoints(max(checkpoints), sorted(checkpoints))
    for rec in results:
        log_x = math.log(rec.x)
        bound = ctx.n1 * math.exp(ctx.alpha * log_x) * log_x
        if abs(rec.mertens) > bound:
            raise BoundViolation(
                "|M(%d)| = %d exceeds the bound %.6g" % (rec.x, abs(rec.mertens), bound)
            )
        rows.append(
            {
                "x": rec.x,
                "mertens": rec.mertens,
                "bound": bound,
                "margin": bound / max(1, abs(rec.mertens)),
            }
        )
    return rows


def checkpoints_to_csv(records: list[SieveCheckpoint], fh, qk: tuple[int, ...] = ()) -> None:
    cols = "x,mertens,m_weighted" + "".join(",q%d" % k for k in qk)
    fh.write(cols + "\n")
    for r in records:
        line = "%d,%d,%.17g" % (r.x, r.mertens, r.m_weighted)
        for k in qk:
            line += ",%d" % r.qk[k]
        fh.write(line + "\n")
