"""Hankel operators, multilinear variants, and their (beta, gamma) truncations.

For an analytic symbol b = sum_k b_k e^{ikt} and analytic f = sum_n a_n e^{int},

    (H_b f)(e^{imx}) carries coefficient  c_m = sum_n a_n b_{m+n},  m >= 0,

equivalently H_b f = analytic_part(b * flip(f)).  The multilinear version
feeds the pointwise product f_1 ... f_n to H_b.

The truncation Pi_{beta,gamma} keeps the matrix entry (m, n) (output
frequency m, input frequency n) when m >= beta*n + gamma; the multilinear
truncation keeps the coefficient tuple (i_0; i_1..i_n) when
beta . (i_1..i_n) + gamma <= i_0.  Two boundary conventions are supported:
"include" gives weight 1 on the boundary m = beta*n + gamma, and "half"
gives weight 1/2 there, so that 2*Pi - I realizes the multiplier
sign(m - beta*n - gamma) with sign(0) = 0.

Boundary residues are evaluated in floating point with tolerance 1e-8: at the
index ranges the guards allow (|m|, |n| <= 4096, moderate beta and gamma) the
evaluation error is below ~1e-11, while the smallest nonzero residue of the
rational beta = k/l sweeps is 1/|l|, many orders larger.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (CostGuardError, NonAnalyticError, ParameterError,
                     SectionSizeError)
from .trigpoly import (TrigPoly, analytic_part, analytic_partial_sum,
                       coeff_distance, flip, multiply, partial_sum)

BOUNDARY_TOL = 1e-8
SECTION_GUARD = 4096
MULTILINEAR_COST_GUARD = 10 ** 8

__all__ = [
    "TruncationSpec",
    "MatrixSection",
    "hankel_apply",
    "multilinear_apply",
    "truncated_apply",
    "multilinear_truncated_apply",
    "column_truncation_apply",
    "beta_zero_identity_check",
    "beta_minus_one_identity_check",
    "matrix_section",
]


@dataclass(frozen=True)
class TruncationSpec:
    """Slope vector beta (length n for an n-linear operator), offset gamma,
    and boundary convention ("include" or "half")."""
    beta: tuple
    gamma: float
    boundary: str = "include"

    def __post_init__(self):
        beta = self.beta
        if isinstance(beta, (int, float)):
            beta = (float(beta),)
        else:
            beta = tuple(float(x) for x in beta)
        if not beta:
            raise ParameterError("beta must have at least one component")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", float(self.gamma))
        if self.boundary not in ("include", "half"):
            raise ParameterError(
                f"boundary must be 'include' or 'half', got {self.boundary!r}")

    @property
    def arity(self) -> int:
        return len(self.beta)

    def weights(self, residual: np.ndarray) -> np.ndarray:
        """Mask weights from the residual m - beta.n - gamma."""
        if self.boundary == "include":
            return (residual >= -BOUNDARY_TOL).astype(np.float64)
        w = (residual > BOUNDARY_TOL).astype(np.float64)
        w[np.abs(residual) <= BOUNDARY_TOL] = 0.5
        return w


@dataclass(frozen=True)
class MatrixSection:
    """A finite section (b_{m+n} masked) of a (truncated) Hankel operator."""
    entries: np.ndarray
    spec: TruncationSpec | None = None

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=np.complex128)
        if arr.ndim != 2:
            raise ValueError("section entries must be a 2-D array")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def to_csv(self, path):
        """Row-major CSV export; entries formatted as python complex."""
        import csv
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            for row in np.asarray(self.entries):
                writer.writerow([f"{z.real:.17g}{z.imag:+.17g}j" for z in row])


def _ensure_symbol(b: TrigPoly) -> TrigPoly:
    if not b.is_analytic:
        raise NonAnalyticError("Hankel symbols must be analytic")
    return b


def _ensure_analytic(f: TrigPoly, what: str = "input") -> TrigPoly:
    if not f.is_analytic:
        raise NonAnalyticError(f"Hankel {what} must be analytic")
    return f


def hankel_apply(b: TrigPoly, f: TrigPoly, method: str = "direct") -> TrigPoly:
    """H_b f, coefficient c_m = sum_n a_n b_{m+n}.

    method "direct" computes the correlation sums; method "projection"
    computes analytic_part(b * flip(f)).  The two agree exactly and are kept
    as independent code paths for cross-validation.
    """
    _ensure_symbol(b)
    _ensure_analytic(f)
    if b.is_zero or f.is_zero:
        return TrigPoly.zero()
    if method == "projection":
        return analytic_part(multiply(b, flip(f)))
    if method != "direct":
        raise ParameterError(f"unknown method {method!r}")
    B = b.window(0, b.max_freq)
    A = f.window(0, f.max_freq)
    conv = np.convolve(B, A[::-1])
    # conv[len(A)-1 + m] = sum_n B[m+n] A[n]
    return TrigPoly(conv[A.size - 1:], 0)


def multilinear_apply(b: TrigPoly, fs) -> TrigPoly:
    """H_b^{(n)}(f_1, ..., f_n) = H_b(f_1 ... f_n)."""
    fs = list(fs)
    if not fs:
        raise ParameterError("multilinear_apply needs at least one input")
    _ensure_symbol(b)
    prod = None
    for f in fs:
        _ensure_analytic(f)
        prod = f if prod is None else multiply(prod, f)
    return hankel_apply(b, prod)


def truncated_apply(b: TrigPoly, spec: TruncationSpec, f: TrigPoly) -> TrigPoly:
    """Pi_{beta,gamma}(H_b) f for a linear truncation (arity 1)."""
    if spec.arity != 1:
        raise ParameterError("linear truncation requires a length-1 beta")
    _ensure_symbol(b)
    _ensure_analytic(f)
    if b.is_zero or f.is_zero:
        return TrigPoly.zero()
    K = b.max_freq
    D = f.max_freq
    m = np.arange(K + 1, dtype=np.float64)[:, None]
    n = np.arange(D + 1, dtype=np.float64)[None, :]
    W = spec.weights(m - spec.beta[0] * n - spec.gamma)
    B = b.window(0, K + D)
    H = B[np.arange(K + 1)[:, None] + np.arange(D + 1)[None, :]]
    c = (W * H) @ f.window(0, D)
    return TrigPoly(c, 0)


def multilinear_truncated_apply(b: TrigPoly, spec: TruncationSpec,
                                fs) -> TrigPoly:
    """Pi_{beta,gamma}(H_b^{(n)})(f_1, ..., f_n): keeps the coefficient
    product a^1_{i_1} ... a^n_{i_n} b_{i_0 + i_1 + ... + i_n} at output
    frequency i_0 when beta . (i_1, ..., i_n) + gamma <= i_0."""
    fs = list(fs)
    if len(fs) != spec.arity:
        raise ParameterError(
            f"arity mismatch: beta has length {spec.arity}, "
            f"got {len(fs)} inputs")
    _ensure_symbol(b)
    for f in fs:
        _ensure_analytic(f)
    if b.is_zero or any(f.is_zero for f in fs):
        return TrigPoly.zero()
    K = b.max_freq
    degs = [f.max_freq for f in fs]
    cost = (K + 1) * math.prod(d + 1 for d in degs)
    if cost > MULTILINEAR_COST_GUARD:
        raise CostGuardError(
            f"multilinear evaluation cost {cost} exceeds the guard "
            f"{MULTILINEAR_COST_GUARD}")
    grids = np.meshgrid(*[np.arange(d + 1) for d in degs], indexing="ij")
    index_sum = np.zeros(grids[0].shape, dtype=np.int64)
    slope_dot = np.zeros(grids[0].shape, dtype=np.float64)
    amp = np.ones(grids[0].shape, dtype=np.complex128)
    for g, beta_j, f in zip(grids, spec.beta, fs):
        index_sum += g
        slope_dot += beta_j * g
        amp = amp * f.window(0, f.max_freq)[g]
    B = b.window(0, K + sum(degs))
    out = np.zeros(K + 1, dtype=np.complex128)
    for i0 in range(K + 1):
        W = spec.weights(i0 - slope_dot - spec.gamma)
        out[i0] = np.sum(W * amp * B[i0 + index_sum])
    return TrigPoly(out, 0)


def column_truncation_apply(b: TrigPoly, N: int, f: TrigPoly) -> TrigPoly:
    """The beta = infinity (column) truncation: keep input frequencies
    n >= N.  Computed as an independently masked sum; equals
    hankel_apply(b, tail_projection(f, N))."""
    _ensure_symbol(b)
    _ensure_analytic(f)
    if b.is_zero or f.is_zero:
        return TrigPoly.zero()
    K = b.max_freq
    D = f.max_freq
    W = (np.arange(D + 1)[None, :] >= int(N)).astype(np.float64)
    B = b.window(0, K + D)
    H = B[np.arange(K + 1)[:, None] + np.arange(D + 1)[None, :]]
    c = (W * H) @ f.window(0, D)
    return TrigPoly(c, 0)


def beta_zero_identity_check(b: TrigPoly, N: int, f: TrigPoly) -> float:
    """Residual of Pi_{0, N+1}(H_b) f = (I - S_N)(H_b f)."""
    lhs = truncated_apply(b, TruncationSpec((0.0,), N + 1), f)
    h = hankel_apply(b, f)
    rhs = h - partial_sum(h, N)
    return coeff_distance(lhs, rhs)


def beta_minus_one_identity_check(b: TrigPoly, N: int, f: TrigPoly) -> float:
    """Residual of (I - Pi_{-1, N})(H_b) f = H_{S_{N-1} b} f."""
    h = hankel_apply(b, f)
    lhs = h - truncated_apply(b, TruncationSpec((-1.0,), N), f)
    rhs = hankel_apply(analytic_partial_sum(b, N - 1), f)
    return coeff_distance(lhs, rhs)


def matrix_section(b: TrigPoly, spec: TruncationSpec | None,
                   rows: int, cols: int) -> MatrixSection:
    """The rows x cols section (b_{m+n})_{0<=m<rows, 0<=n<cols}, masked by
    the truncation weights when a spec is given."""
    _ensure_symbol(b)
    rows, cols = int(rows), int(cols)
    if rows <= 0 or cols <= 0:
        raise SectionSizeError("section dimensions must be positive")
    if max(rows, cols) > SECTION_GUARD:
        raise SectionSizeError(
            f"section dimension {max(rows, cols)} exceeds the guard "
            f"{SECTION_GUARD}")
    B = b.window(0, rows + cols - 2)
    H = B[np.arange(rows)[:, None] + np.arange(cols)[None, :]]
    if spec is not None:
        if spec.arity != 1:
            raise ParameterError("matrix sections are linear (arity 1)")
        m = np.arange(rows, dtype=np.float64)[:, None]
        n = np.arange(cols, dtype=np.float64)[None, :]
        H = spec.weights(m - spec.beta[0] * n - spec.gamma) * H
    return MatrixSection(H, spec)
