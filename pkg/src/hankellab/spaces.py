"""Computable Hardy and Lipschitz norms for analytic trigonometric polynomials.

Hardy quasi-norms ||f||_{H^p} (p > 0, p = inf allowed) are boundary L^p means
on progressively refined grids.  The canonical Lipschitz norm Lambda_alpha is
the Littlewood-Paley block norm sup_j 2^{j alpha} ||b_j||_inf, which works for
every alpha > 0; the classical difference-quotient norm is implemented for
0 < alpha < 1 as an equivalence cross-check only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NonAnalyticError, ParameterError, UndefinedRatioError
from .trigpoly import (TrigPoly, Grid, eval_grid, lp_decompose, multiply,
                       tail_projection)

GRID_CAP = 1 << 20
REFINE_REL_TOL = 1e-8

__all__ = [
    "HardyNorm",
    "LipschitzNorm",
    "sup_norm",
    "hardy_norm",
    "lipschitz_norm",
    "lipschitz_norm_diff",
    "random_symbol",
    "reduction_index",
    "reduce_symbol",
    "modulated_norm_ratio",
]


@dataclass(frozen=True)
class HardyNorm:
    """Result of a Hardy quasi-norm evaluation."""
    p: float
    value: float
    grid_size: int
    converged: bool

    def csv_row(self):
        return (self.p, "boundary_lp", self.value, self.grid_size)


@dataclass(frozen=True)
class LipschitzNorm:
    """Result of a Lambda_alpha norm evaluation.

    `certificates` lists (block index j, 2^{j alpha} * ||b_j||_inf) for the
    block method, or (dyadic gap, quotient) pairs for the difference method.
    """
    alpha: float
    value: float
    method: str
    certificates: tuple = field(default_factory=tuple)

    def csv_row(self):
        return (self.alpha, self.method, self.value, len(self.certificates))


def _start_grid(degree: int) -> int:
    """Initial refinement grid: 8*degree rounded up to a power of two."""
    G = 16
    target = 8 * max(int(degree), 1)
    while G < target:
        G *= 2
    return min(G, GRID_CAP)


def sup_norm(f: TrigPoly, rel_tol: float = REFINE_REL_TOL,
             cap: int = GRID_CAP):
    """(value, grid_size, converged): refined-grid maximum of |f|."""
    if f.is_zero:
        return 0.0, 16, True
    G = _start_grid(f.span)
    prev = float(np.abs(eval_grid(f, Grid(G))).max())
    while G < cap:
        G *= 2
        cur = float(np.abs(eval_grid(f, Grid(G))).max())
        if abs(cur - prev) <= rel_tol * max(cur, 1e-300):
            return cur, G, True
        prev = cur
    return prev, G, False


def hardy_norm(f: TrigPoly, p: float) -> HardyNorm:
    """Boundary L^p quasi-norm ((1/G) sum |f(t_j)|^p)^{1/p}, p = inf allowed.

    Defined for analytic polynomials only; the grid is refined (doubled) until
    the value is stable to 1e-8 relative, capped at 2^20 nodes.
    """
    if not f.is_analytic:
        raise NonAnalyticError("hardy_norm requires an analytic polynomial")
    if not p > 0:
        raise ParameterError(f"p must be positive, got {p}")
    if f.is_zero:
        return HardyNorm(p, 0.0, 16, True)
    if math.isinf(p):
        value, G, ok = sup_norm(f)
        return HardyNorm(p, value, G, ok)

    def mean_p(G):
        v = np.abs(eval_grid(f, Grid(G)))
        return float(np.mean(v ** p)) ** (1.0 / p)

    G = _start_grid(f.span)
    prev = mean_p(G)
    while G < GRID_CAP:
        G *= 2
        cur = mean_p(G)
        if abs(cur - prev) <= REFINE_REL_TOL * max(cur, 1e-300):
            return HardyNorm(p, cur, G, True)
        prev = cur
    return HardyNorm(p, prev, G, False)


def lipschitz_norm(b: TrigPoly, alpha: float) -> LipschitzNorm:
    """Canonical Lambda_alpha norm: sup_j 2^{j alpha} ||b_j||_inf."""
    if not b.is_analytic:
        raise NonAnalyticError("lipschitz_norm requires an analytic symbol")
    if not alpha > 0:
        raise ParameterError(f"alpha must be positive, got {alpha}")
    if b.is_zero:
        return LipschitzNorm(alpha, 0.0, "lp_block", ())
    certs = []
    for j, bj in enumerate(lp_decompose(b)):
        if bj.is_zero:
            continue
        s, _, _ = sup_norm(bj)
        certs.append((j, (2.0 ** (j * alpha)) * s))
    value = max(c for _, c in certs) if certs else 0.0
    return LipschitzNorm(alpha, value, "lp_block", tuple(certs))


def lipschitz_norm_diff(b: TrigPoly, alpha: float) -> LipschitzNorm:
    """Classical difference norm ||b||_inf + sup |b(x)-b(y)|/|x-y|^alpha,
    estimated over dyadic grid gaps.  Cross-check only; needs 0 < alpha < 1.
    """
    if not 0 < alpha < 1:
        raise ParameterError(
            "difference quotient norm supports 0 < alpha < 1 only "
            "(use the lp_block method otherwise)")
    if b.is_zero:
        return LipschitzNorm(alpha, 0.0, "difference", ())
    G = max(256, _start_grid(b.span))
    v = eval_grid(b, Grid(G))
    certs = []
    best = 0.0
    d = 1
    while d <= G // 2:
        gap = 2.0 * np.pi * d / G
        quot = float(np.abs(np.roll(v, -d) - v).max()) / gap ** alpha
        certs.append((d, quot))
        best = max(best, quot)
        d *= 2
    value = float(np.abs(v).max()) + best
    return LipschitzNorm(alpha, value, "difference", tuple(certs))


def random_symbol(alpha: float, max_block: int, seed) -> TrigPoly:
    """Random analytic symbol b = sum_{j <= max_block} b_j.

    Block j draws complex-Gaussian coefficients on the canonical block-j
    frequency range, rescaled so that ||b_j||_inf = 2^{-j alpha}; block 0
    is a unimodular constant.  The sum is then normalized by its own
    Lipschitz norm, so lipschitz_norm(b, alpha) = 1 in [1/4, 4] exactly,
    with each block still of size comparable to 2^{-j alpha}.
    Deterministic for a fixed seed.
    """
    if not alpha > 0:
        raise ParameterError(f"alpha must be positive, got {alpha}")
    if max_block < 0:
        raise ParameterError("max_block must be nonnegative")
    rng = np.random.default_rng(seed)
    total = TrigPoly.constant(np.exp(2j * np.pi * rng.random()))
    for j in range(1, max_block + 1):
        lo = 1 if j == 1 else 1 << j
        hi = 4 if j == 1 else 1 << (j + 1)   # exclusive
        c = rng.standard_normal(hi - lo) + 1j * rng.standard_normal(hi - lo)
        bj = TrigPoly(c, lo)
        s, _, _ = sup_norm(bj)
        total = total + (2.0 ** (-j * alpha) / s) * bj
    scale = lipschitz_norm(total, alpha).value
    return (1.0 / scale) * total


def reduction_index(beta: float, gamma: float):
    """The index n^{beta,gamma} below which symbol coefficients are immaterial
    to the truncation Pi_{beta,gamma}, by sign case:

        gamma < 0, beta > 0  ->  [-gamma/beta]
        gamma > 0, beta > 0  ->  [gamma]
        gamma > 0, beta < 0  ->  min([gamma], [-gamma/beta])
        gamma < 0, beta < 0  ->  None  (the truncation is the identity)
        beta = 0, gamma < 0  ->  0
        gamma = 0            ->  0

    [x] is truncation of the (always positive) quantity.
    """
    beta = float(beta)
    gamma = float(gamma)
    if gamma == 0:
        return 0
    if gamma < 0:
        if beta > 0:
            return int(math.floor(-gamma / beta))
        return None if beta < 0 else 0
    if beta > 0 or beta == 0:
        return int(math.floor(gamma))
    return min(int(math.floor(gamma)), int(math.floor(-gamma / beta)))


def reduce_symbol(b: TrigPoly, N: int) -> TrigPoly:
    """The modified symbol with the same high-frequency content as b.

    For N <= 16 returns b unchanged.  For N > 16, with N0 such that
    2^{N0} <= N < 2^{N0+1}, drops the Littlewood-Paley blocks j < N0 - 2.
    With sharp block windows this equals the tail projection onto
    frequencies >= 2^{N0-2}, so every coefficient at frequency >= 2^{N0-2}
    (in particular every one at frequency > N) is untouched, and the
    operation is idempotent for fixed N.
    """
    if not b.is_analytic:
        raise NonAnalyticError("reduce_symbol requires an analytic symbol")
    N = int(N)
    if N < 0:
        raise ParameterError("N must be nonnegative")
    if N <= 16:
        return b
    n0 = N.bit_length() - 1          # 2^{n0} <= N < 2^{n0+1}
    return tail_projection(b, 1 << (n0 - 2))


def modulated_norm_ratio(b: TrigPoly, alpha: float, N: int, M: int) -> float:
    """lipschitz_norm(reduce_symbol(b,N) * zeta^M, alpha) divided by
    (|M|/(N+1) + 1)^alpha * lipschitz_norm(b, alpha)."""
    den_norm = lipschitz_norm(b, alpha).value
    if den_norm == 0.0:
        raise UndefinedRatioError("zero symbol has no modulated norm ratio")
    bt = reduce_symbol(b, N)
    shifted = multiply(bt, TrigPoly.character(int(M)))
    if not shifted.is_analytic:
        raise NonAnalyticError(
            "modulation pushed the symbol outside the analytic range; "
            "|M| must not exceed the reduced symbol's lowest frequency")
    num = lipschitz_norm(shifted, alpha).value
    scale = (abs(int(M)) / (int(N) + 1.0) + 1.0) ** alpha
    return num / (scale * den_norm)
