"""Operator-norm estimation: finite sections, ratio search, model constants.

section_norm_2_2 runs power iteration on A*A with a seeded start and a
relative Rayleigh-quotient stopping rule; it is the workhorse for the
truncation-uniformity sweeps.  ratio_search_qp produces certified lower
bounds for q -> p operator norms by sampling structured inputs and running
a short coordinate ascent.  lebesgue_constant and sn_extremal_lower_bound
provide the two classical log N growth quantities.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .hankel import MatrixSection
from .spaces import hardy_norm, lipschitz_norm, sup_norm
from .trigpoly import TrigPoly, analytic_partial_sum, multiply

__all__ = [
    "NormEstimate",
    "section_norm_2_2",
    "ratio_search_qp",
    "lebesgue_constant",
    "sn_extremal_lower_bound",
]


@dataclass(frozen=True)
class NormEstimate:
    """An operator-norm estimate with its witness.

    value      the estimate (a guaranteed lower bound for ratio_search)
    method     "power_iteration" or "ratio_search"
    iterations matvec sweeps or ratio evaluations spent
    residual   final relative change of the estimate
    witness    unit vector (power iteration) or TrigPoly (ratio search)
    converged  whether the stopping rule fired before the iteration cap
    """
    value: float
    method: str
    iterations: int
    residual: float
    witness: object = None
    converged: bool = True

    def to_json_dict(self):
        w = self.witness
        if isinstance(w, TrigPoly):
            wit = [[int(n), float(c.real), float(c.imag)]
                   for n, c in w.to_pairs()]
        elif w is None:
            wit = None
        else:
            arr = np.asarray(w)
            wit = [[float(z.real), float(z.imag)] for z in arr]
        return {
            "value": self.value,
            "method": self.method,
            "iterations": self.iterations,
            "residual": self.residual,
            "converged": self.converged,
            "witness": wit,
        }


def section_norm_2_2(section, tol: float = 1e-12, max_iter: int = 20000,
                     seed=0, v0=None) -> NormEstimate:
    """Largest singular value of a matrix section by power iteration on A*A.

    Stops when the relative change of the singular-value estimate falls
    below `tol`.  `v0` warm-starts the iteration (useful in sweeps where
    neighbouring sections share their top singular vector).  Non-convergence
    after max_iter is reported through converged=False and a warning, with
    the last residual recorded.
    """
    A = section.entries if isinstance(section, MatrixSection) else \
        np.asarray(section, dtype=np.complex128)
    if A.ndim != 2:
        raise ParameterError("section must be a 2-D array")
    if A.size == 0 or not np.any(A):
        return NormEstimate(0.0, "power_iteration", 0, 0.0,
                            np.zeros(A.shape[1], dtype=np.complex128), True)
    if v0 is not None:
        v = np.asarray(v0, dtype=np.complex128).copy()
        if v.shape != (A.shape[1],) or not np.linalg.norm(v) > 0:
            v = None
        else:
            v /= np.linalg.norm(v)
    else:
        v = None
    if v is None:
        rng = np.random.default_rng(seed)
        v = rng.standard_normal(A.shape[1]) \
            + 1j * rng.standard_normal(A.shape[1])
        v /= np.linalg.norm(v)
    prev = 0.0
    sigma = 0.0
    rel = np.inf
    for it in range(1, max_iter + 1):
        w = A.conj().T @ (A @ v)
        # Rayleigh quotient of A*A at unit v equals ||A v||^2
        sigma = float(np.sqrt(max(np.real(np.vdot(v, w)), 0.0)))
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return NormEstimate(0.0, "power_iteration", it, 0.0, v, True)
        v = w / nw
        rel = abs(sigma - prev) / max(sigma, 1e-300)
        if rel <= tol:
            return NormEstimate(sigma, "power_iteration", it, rel, v, True)
        prev = sigma
    warnings.warn(
        f"power iteration did not meet tol={tol} after {max_iter} sweeps "
        f"(last relative change {rel:.3e})", RuntimeWarning, stacklevel=2)
    return NormEstimate(sigma, "power_iteration", max_iter, rel, v, False)


def _candidate_inputs(degree: int, samples: int, rng):
    """Structured candidate profiles: flat random, lacunary, single
    frequency, and products of random low-degree factors."""
    cands = []
    for n in range(degree + 1):
        cands.append(TrigPoly.character(n))
    powers = [1 << j for j in range((degree).bit_length()) if 1 << j <= degree]
    while len(cands) < samples + degree + 1:
        kind = len(cands) % 3
        if kind == 0:
            c = rng.standard_normal(degree + 1) \
                + 1j * rng.standard_normal(degree + 1)
            cands.append(TrigPoly(c, 0))
        elif kind == 1 and powers:
            c = rng.standard_normal(len(powers) + 1) \
                + 1j * rng.standard_normal(len(powers) + 1)
            cands.append(TrigPoly.from_pairs(
                [(0, c[0])] + [(p, c[j + 1]) for j, p in enumerate(powers)]))
        else:
            prod = TrigPoly.constant(1.0)
            while prod.max_freq < degree:
                u = rng.standard_normal(2) + 1j * rng.standard_normal(2)
                prod = multiply(prod, TrigPoly(u, 0))
            prod = analytic_partial_sum(prod, degree)
            cands.append(prod)
    return cands


def ratio_search_qp(op, q: float, p: float, degree: int, samples: int = 64,
                    seed=0, ascent_rounds: int = 3) -> NormEstimate:
    """Lower bound for the H^q -> H^p norm of `op` over inputs of bounded
    degree: hardy_norm(op(f), p) / hardy_norm(f, q) maximized over structured
    samples, then improved by coordinate ascent on the best candidate.

    The value is a guaranteed lower bound (every evaluated ratio is one).
    A degenerate operator (all candidates annihilated) yields value 0 with
    converged=False.
    """
    if degree < 0:
        raise ParameterError("degree must be nonnegative")
    rng = np.random.default_rng(seed)
    evals = 0

    def ratio(f):
        nonlocal evals
        den = hardy_norm(f, q).value
        if den <= 1e-13:
            return 0.0
        g = op(f)
        evals += 1
        if g.is_zero:
            return 0.0
        return hardy_norm(g, p).value / den

    best_val = 0.0
    best_f = None
    for f in _candidate_inputs(degree, samples, rng):
        r = ratio(f)
        if r > best_val:
            best_val, best_f = r, f
    if best_f is None or best_val == 0.0:
        return NormEstimate(0.0, "ratio_search", evals, 0.0, None, False)

    coeffs = best_f.window(0, degree)
    step = 0.5 * float(np.abs(coeffs).max())
    for _ in range(ascent_rounds):
        improved = False
        for idx in range(degree + 1):
            for delta in (step, -step, 1j * step, -1j * step):
                trial = coeffs.copy()
                trial[idx] += delta
                r = ratio(TrigPoly(trial, 0))
                if r > best_val:
                    best_val = r
                    coeffs = trial
                    improved = True
        step *= 0.5
        if not improved and step < 1e-6:
            break
    witness = TrigPoly(coeffs, 0)
    return NormEstimate(best_val, "ratio_search", evals, 0.0, witness, True)


def lebesgue_constant(N: int, nodes: int = 48) -> float:
    """L_N = (1/2pi) int |D_N|, by Gauss-Legendre panels between the 2N+1
    equally spaced roots of the Dirichlet kernel (D_N is single-signed on
    each panel, so the absolute value commutes with panel integration).
    Relative accuracy far below 1e-6 for the default panel order."""
    N = int(N)
    if N < 0:
        raise ParameterError("N must be nonnegative")
    if N == 0:
        return 1.0
    xg, wg = np.polynomial.legendre.leggauss(int(nodes))
    bounds = 2.0 * np.pi * np.arange(2 * N + 2) / (2 * N + 1)
    a, b = bounds[:-1], bounds[1:]
    half = 0.5 * (b - a)[:, None]
    tt = 0.5 * (a + b)[:, None] + half * xg[None, :]
    D = np.sin((N + 0.5) * tt) / np.sin(0.5 * tt)
    panel = np.sum(half * wg[None, :] * D, axis=1)
    return float(np.sum(np.abs(panel)) / (2.0 * np.pi))


def _sign_dirichlet_coeffs(M: int) -> TrigPoly:
    """Exact Fourier coefficients of w = sign(D_M): w is piecewise +-1 with
    sign (-1)^k on (t_k, t_{k+1}), t_k = 2 pi k/(2M+1), k = 0..2M."""
    t = 2.0 * np.pi * np.arange(2 * M + 2) / (2 * M + 1)
    t[-1] = 2.0 * np.pi
    s = (-1.0) ** np.arange(2 * M + 1)
    nu = np.arange(-2 * M, 2 * M + 1)
    coef = np.empty(nu.size, dtype=np.complex128)
    for i, v in enumerate(nu):
        if v == 0:
            coef[i] = np.sum(s * (t[1:] - t[:-1])) / (2.0 * np.pi)
        else:
            coef[i] = np.sum(
                s * (np.exp(-1j * v * t[:-1]) - np.exp(-1j * v * t[1:]))) \
                / (2j * np.pi * v)
    return TrigPoly(coef, -2 * M)


def sn_extremal_lower_bound(N: int, alpha: float) -> float:
    """Lower-bound ratio for the analytic partial sum on Lambda_alpha.

    Requires N = 4 * 2^n for an integer n >= 1.  With M = N/4, builds the
    Fejer mean g of order 2M of sign(D_M) (degree 2M, ||g||_inf <= 1 by
    positivity of the Fejer kernel), modulates f = e^{i (3N/4) t} g so the
    spectrum of f sits in [N/4, 5N/4] subset {2^n, ..., 2^{n+3}}, and returns

        lipschitz_norm(S_N^+ f, alpha) / lipschitz_norm(f, alpha),

    which grows like c log N along the admissible N.
    """
    N = int(N)
    M, rem = divmod(N, 4)
    if rem != 0 or M < 2 or (M & (M - 1)) != 0:
        raise ParameterError(
            f"N must be 4 * 2^n with n >= 1, got N={N}")
    w = _sign_dirichlet_coeffs(M)
    fej = 1.0 - np.abs(w.frequencies()) / (2 * M + 1.0)
    g = TrigPoly(w.coeffs * fej, w.min_freq)
    s, _, _ = sup_norm(g)
    if s > 1.0:
        g = (1.0 / s) * g
    f = multiply(g, TrigPoly.character(3 * M))
    num = lipschitz_norm(analytic_partial_sum(f, N), alpha).value
    den = lipschitz_norm(f, alpha).value
    return num / den
