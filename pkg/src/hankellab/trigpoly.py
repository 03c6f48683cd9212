"""Finite trigonometric polynomials with exact coefficient bookkeeping.

A polynomial is f(t) = sum_n c_n e^{int} with finitely many nonzero complex
coefficients c_n, n in Z.  "Analytic" means c_n = 0 for every n < 0, i.e. f
is the boundary value of a polynomial on the unit disc.  Everything in this
module is exact coefficient arithmetic plus FFT evaluation on uniform grids;
no norms live here (see spaces.py).

The Littlewood-Paley blocks used throughout the library are the sharp dyadic
windows

    block 0 = {0},   block 1 = [1, 4),   block j = [2^j, 2^{j+1})  (j >= 2),

which partition the nonnegative frequencies exactly.  Each block j >= 1 is
contained in [2^{j-1}, 2^{j+2}), and summing blocks j >= J recovers the sharp
tail projection onto frequencies >= 2^J for any J >= 2.
"""

from __future__ import annotations

import numpy as np

from .errors import DegreeOverflowError, GridSizeError, NonAnalyticError

DEFAULT_PRUNE_TOL = 1e-14
DEFAULT_MAX_DEGREE = 1 << 16

__all__ = [
    "TrigPoly",
    "Grid",
    "eval_grid",
    "coeffs_from_grid",
    "multiply",
    "analytic_part",
    "flip",
    "conjugate_op",
    "partial_sum",
    "analytic_partial_sum",
    "tail_projection",
    "dirichlet_kernel",
    "translate",
    "stretch",
    "lp_window_weight",
    "lp_block",
    "lp_decompose",
    "inner",
    "coeff_distance",
    "random_poly",
]


class TrigPoly:
    """Dense complex coefficients over a frequency window [min_freq, max_freq].

    The representation is canonical: coefficients with modulus at or below
    the pruning tolerance are flushed to exact zero and the window is trimmed
    so both endpoint coefficients are nonzero.  The zero polynomial is the
    empty window with min_freq = 0.

    Parameters
    ----------
    coeffs : array_like of complex
        Coefficients c_{min_freq}, c_{min_freq+1}, ... in frequency order.
    min_freq : int
        Frequency of the first entry of `coeffs`.
    prune_tol : float
        Entries with modulus <= prune_tol are treated as exact zeros.
    max_degree : int
        Guard: max(|min_freq|, |max_freq|) must not exceed this.
    """

    __slots__ = ("_coeffs", "_min_freq")

    def __init__(self, coeffs, min_freq=0, prune_tol=DEFAULT_PRUNE_TOL,
                 max_degree=DEFAULT_MAX_DEGREE):
        arr = np.array(coeffs, dtype=np.complex128)
        if arr.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        if arr.size:
            arr[np.abs(arr) <= prune_tol] = 0.0
            nz = np.flatnonzero(arr)
            if nz.size:
                arr = arr[nz[0]:nz[-1] + 1]
                min_freq = int(min_freq) + int(nz[0])
            else:
                arr = arr[:0]
                min_freq = 0
        else:
            min_freq = 0
        if arr.size:
            hi = min_freq + arr.size - 1
            if max(abs(min_freq), abs(hi)) > max_degree:
                raise DegreeOverflowError(
                    f"frequency window [{min_freq}, {hi}] exceeds the degree "
                    f"bound {max_degree}")
        arr.setflags(write=False)
        self._coeffs = arr
        self._min_freq = int(min_freq)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "TrigPoly":
        return cls(np.zeros(0))

    @classmethod
    def constant(cls, c) -> "TrigPoly":
        return cls(np.array([c]), 0)

    @classmethod
    def character(cls, n: int, amplitude=1.0) -> "TrigPoly":
        """amplitude * e^{int}."""
        return cls(np.array([amplitude]), int(n))

    @classmethod
    def from_pairs(cls, pairs) -> "TrigPoly":
        """Build from an iterable of (frequency, coefficient) pairs."""
        pairs = [(int(n), complex(c)) for n, c in pairs]
        if not pairs:
            return cls.zero()
        lo = min(n for n, _ in pairs)
        hi = max(n for n, _ in pairs)
        arr = np.zeros(hi - lo + 1, dtype=np.complex128)
        for n, c in pairs:
            arr[n - lo] += c
        return cls(arr, lo)

    # -- basic queries -----------------------------------------------------

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array (frequency order)."""
        return self._coeffs

    @property
    def min_freq(self) -> int:
        return self._min_freq

    @property
    def max_freq(self) -> int:
        """Largest frequency of the window (0 for the zero polynomial)."""
        if not self._coeffs.size:
            return 0
        return self._min_freq + self._coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self._coeffs.size == 0

    @property
    def is_analytic(self) -> bool:
        return self.is_zero or self._min_freq >= 0

    @property
    def degree(self) -> int:
        """max(|min_freq|, |max_freq|), 0 for the zero polynomial."""
        if self.is_zero:
            return 0
        return max(abs(self._min_freq), abs(self.max_freq))

    @property
    def span(self) -> int:
        """Width of the frequency window, max_freq - min_freq (0 if zero)."""
        if self.is_zero:
            return 0
        return self._coeffs.size - 1

    def frequencies(self) -> np.ndarray:
        return np.arange(self._min_freq, self._min_freq + self._coeffs.size)

    def coeff(self, n: int) -> complex:
        """Coefficient at frequency n (0 outside the window)."""
        i = int(n) - self._min_freq
        if 0 <= i < self._coeffs.size:
            return complex(self._coeffs[i])
        return 0.0 + 0.0j

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Dense coefficients over frequencies lo..hi inclusive."""
        lo, hi = int(lo), int(hi)
        out = np.zeros(hi - lo + 1, dtype=np.complex128)
        if self._coeffs.size:
            a = max(lo, self._min_freq)
            b = min(hi, self.max_freq)
            if a <= b:
                out[a - lo:b - lo + 1] = \
                    self._coeffs[a - self._min_freq:b - self._min_freq + 1]
        return out

    def to_pairs(self):
        """List of (frequency, coefficient) pairs for nonzero entries."""
        return [(int(n), complex(c))
                for n, c in zip(self.frequencies(), self._coeffs) if c != 0]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self._min_freq, other._min_freq)
        hi = max(self.max_freq, other.max_freq)
        buf = np.zeros(hi - lo + 1, dtype=np.complex128)
        buf[self._min_freq - lo:self._min_freq - lo + self._coeffs.size] += \
            self._coeffs
        buf[other._min_freq - lo:other._min_freq - lo + other._coeffs.size] \
            += other._coeffs
        return TrigPoly(buf, lo)

    def __sub__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return TrigPoly(-self._coeffs, self._min_freq) \
            if self._coeffs.size else TrigPoly.zero()

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            return multiply(self, other)
        try:
            lam = complex(other)
        except (TypeError, ValueError):
            return NotImplemented
        if self.is_zero:
            return TrigPoly.zero()
        return TrigPoly(self._coeffs * lam, self._min_freq)

    __rmul__ = __mul__

    def __eq__(self, other):
        """Exact structural equality (same window, identical coefficients)."""
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return (self._min_freq == other._min_freq
                and self._coeffs.shape == other._coeffs.shape
                and bool(np.all(self._coeffs == other._coeffs)))

    __hash__ = None

    def __repr__(self):
        if self.is_zero:
            return "TrigPoly(0)"
        terms = self.to_pairs()
        if len(terms) > 4:
            shown = ", ".join(f"{n}: {c:.3g}" for n, c in terms[:4])
            return f"TrigPoly({{{shown}, ...}}, {len(terms)} terms)"
        shown = ", ".join(f"{n}: {c:.3g}" for n, c in terms)
        return f"TrigPoly({{{shown}}})"


# -- grids and evaluation --------------------------------------------------

class Grid:
    """Uniform grid on [0, 2pi): t_j = 2pi (j + 1/2 stagger)/size.

    `size` must be a positive power of two.  A staggered grid places nodes at
    half-integers, avoiding t = 0; it is the natural grid for principal-value
    quadrature against the cotangent kernel.
    """

    __slots__ = ("size", "staggered")

    def __init__(self, size: int, staggered: bool = False):
        size = int(size)
        if size <= 0 or (size & (size - 1)) != 0:
            raise GridSizeError(f"grid size must be a positive power of two, "
                                f"got {size}")
        self.size = size
        self.staggered = bool(staggered)

    def points(self) -> np.ndarray:
        j = np.arange(self.size, dtype=np.float64)
        if self.staggered:
            j = j + 0.5
        return 2.0 * np.pi * j / self.size

    def __repr__(self):
        tag = ", staggered" if self.staggered else ""
        return f"Grid({self.size}{tag})"


def eval_grid(f: TrigPoly, grid: Grid) -> np.ndarray:
    """Values of f at the grid nodes, computed by FFT.

    Requires grid.size >= 2*span(f) + 1 so that distinct frequencies of f
    occupy distinct FFT bins with margin for downstream products.
    """
    G = grid.size
    if f.is_zero:
        return np.zeros(G, dtype=np.complex128)
    if G < 2 * f.span + 1:
        raise GridSizeError(
            f"grid size {G} too small for frequency span {f.span} "
            f"(need >= {2 * f.span + 1})")
    n = f.frequencies()
    c = f.coeffs
    if grid.staggered:
        c = c * np.exp(1j * np.pi * n / G)
    buf = np.zeros(G, dtype=np.complex128)
    np.add.at(buf, n % G, c)
    return G * np.fft.ifft(buf)


def coeffs_from_grid(values, min_freq: int, max_freq: int,
                     staggered: bool = False) -> TrigPoly:
    """Recover a polynomial with window [min_freq, max_freq] from grid values.

    Exact for band-limited data when the grid has at least span+1 nodes.
    """
    values = np.asarray(values, dtype=np.complex128)
    G = values.size
    span = int(max_freq) - int(min_freq)
    if span < 0:
        raise ValueError("max_freq must be >= min_freq")
    if G < span + 1:
        raise GridSizeError(
            f"need at least {span + 1} samples to recover window "
            f"[{min_freq}, {max_freq}], got {G}")
    hat = np.fft.fft(values) / G
    n = np.arange(int(min_freq), int(max_freq) + 1)
    c = hat[n % G]
    if staggered:
        c = c * np.exp(-1j * np.pi * n / G)
    return TrigPoly(c, int(min_freq))


# -- coefficient operations ------------------------------------------------

def multiply(f: TrigPoly, g: TrigPoly,
             max_degree: int = DEFAULT_MAX_DEGREE) -> TrigPoly:
    """Pointwise product, i.e. convolution of coefficient sequences."""
    if f.is_zero or g.is_zero:
        return TrigPoly.zero()
    conv = np.convolve(f.coeffs, g.coeffs)
    return TrigPoly(conv, f.min_freq + g.min_freq, max_degree=max_degree)


def analytic_part(f: TrigPoly) -> TrigPoly:
    """Projection onto frequencies n >= 0 (Riesz/Szego projection)."""
    if f.is_zero or f.min_freq >= 0:
        return f
    cut = -f.min_freq
    return TrigPoly(f.coeffs[cut:], 0)


def flip(f: TrigPoly) -> TrigPoly:
    """f(t) -> f(-t): coefficient at n moves to -n."""
    if f.is_zero:
        return f
    return TrigPoly(f.coeffs[::-1], -f.max_freq)


def conjugate_op(f: TrigPoly) -> TrigPoly:
    """Conjugate function: multiplier -i*sign(n), with sign(0) = 0.

    Equals the principal-value average (1/2pi) p.v. int f(t) cot((x-t)/2) dt.
    """
    if f.is_zero:
        return f
    mult = -1j * np.sign(f.frequencies())
    return TrigPoly(f.coeffs * mult, f.min_freq)


def partial_sum(f: TrigPoly, N: int) -> TrigPoly:
    """S_N f: keep frequencies |n| <= N."""
    if N < 0:
        return TrigPoly.zero()
    return TrigPoly(f.window(-N, N), -N)


def analytic_partial_sum(f: TrigPoly, N: int) -> TrigPoly:
    """S_N^+ f: keep frequencies 0 <= n <= N."""
    if N < 0:
        return TrigPoly.zero()
    return TrigPoly(f.window(0, N), 0)


def tail_projection(f: TrigPoly, N: int) -> TrigPoly:
    """P_N f: keep frequencies n >= N."""
    if f.is_zero or f.max_freq < N:
        return TrigPoly.zero()
    lo = max(f.min_freq, int(N))
    return TrigPoly(f.window(lo, f.max_freq), lo)


def dirichlet_kernel(N: int) -> TrigPoly:
    """D_N(t) = sum_{|n| <= N} e^{int} = sin((N+1/2)t)/sin(t/2)."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    return TrigPoly(np.ones(2 * N + 1), -N)


def translate(f: TrigPoly, y: float) -> TrigPoly:
    """(translate f)(t) = f(t + y): coefficient c_n gains e^{iny}."""
    if f.is_zero:
        return f
    return TrigPoly(f.coeffs * np.exp(1j * f.frequencies() * y), f.min_freq)


def stretch(f: TrigPoly, factor: int,
            max_degree: int = DEFAULT_MAX_DEGREE) -> TrigPoly:
    """f(t) -> f(factor*t): coefficient at n moves to factor*n.

    `factor` is a nonzero integer (negative factors compose with flip).
    """
    factor = int(factor)
    if factor == 0:
        raise ValueError("stretch factor must be a nonzero integer")
    if f.is_zero:
        return f
    n = f.frequencies() * factor
    lo, hi = int(n.min()), int(n.max())
    buf = np.zeros(hi - lo + 1, dtype=np.complex128)
    buf[n - lo] = f.coeffs
    return TrigPoly(buf, lo, max_degree=max_degree)


# -- Littlewood-Paley blocks -------------------------------------------------

def lp_window_weight(j: int, freqs) -> np.ndarray:
    """Weight of the block-j dyadic window at the given frequencies.

    The windows form a piecewise-linear partition of unity on n >= 1:

    * j = 0 covers only the constant term (weight 1 at n = 0);
    * j = 1 has weight 1 on [1, 2] and ramps down linearly to 0 at 4;
    * j >= 2 ramps up linearly from 0 at 2^{j-1} to 1 at 2^j, then down
      linearly to 0 at 2^{j+1} (so block j is supported in (2^{j-1},
      2^{j+1}), inside the admissible range [2^{j-1}, 2^{j+2})).

    Adjacent ramps are complementary, and every weight is an integer
    divided by a power of two, so the partition of unity is exact even in
    floating point: the weights over all j sum to exactly 1.0 at every
    n >= 0.
    """
    if j < 0:
        raise ValueError("block index must be nonnegative")
    n = np.asarray(freqs, dtype=np.float64)
    if j == 0:
        return (n == 0).astype(np.float64)
    if j == 1:
        w = np.where(n > 2, (4.0 - n) / 2.0, 1.0)
        return np.where((n >= 1) & (n < 4), w, 0.0)
    lo = float(1 << (j - 1))        # 2^{j-1}
    peak = 2.0 * lo                 # 2^j
    hi = 4.0 * lo                   # 2^{j+1}
    up = (n - lo) / lo
    down = (hi - n) / peak
    w = np.where(n <= peak, up, down)
    return np.where((n > lo) & (n < hi), w, 0.0)


def lp_block(f: TrigPoly, j: int) -> TrigPoly:
    """Littlewood-Paley block b_j of an analytic polynomial."""
    if not f.is_analytic:
        raise NonAnalyticError("lp_block requires an analytic polynomial")
    if f.is_zero:
        return f
    w = lp_window_weight(j, f.frequencies())
    return TrigPoly(f.coeffs * w, f.min_freq)


def block_index(n: int) -> int:
    """The canonical block of frequency n: the j whose window puts the
    largest weight on n (j = 0 for n = 0, j = 1 for 1 <= n < 4, else
    floor(log2 n); ties at mid-ramp resolve downward)."""
    n = int(n)
    if n < 0:
        raise ValueError("frequency must be nonnegative")
    if n == 0:
        return 0
    if n < 4:
        return 1
    return n.bit_length() - 1


def top_block_index(n: int) -> int:
    """The largest j whose window is nonzero at frequency n (n >= 0)."""
    n = int(n)
    if n < 0:
        raise ValueError("frequency must be nonnegative")
    if n == 0:
        return 0
    if n <= 2:
        return 1
    # largest j with 2^{j-1} < n
    return (n - 1).bit_length()


def lp_decompose(f: TrigPoly):
    """All blocks b_0, ..., b_J covering the spectrum of f; they sum to f
    exactly (the windows are an exact partition of unity in floating
    point)."""
    if not f.is_analytic:
        raise NonAnalyticError("lp_decompose requires an analytic polynomial")
    if f.is_zero:
        return [f]
    J = top_block_index(f.max_freq)
    return [lp_block(f, j) for j in range(J + 1)]


# -- misc helpers ------------------------------------------------------------

def inner(f: TrigPoly, g: TrigPoly) -> complex:
    """Normalized inner product (1/2pi) int f conj(g) = sum c_n conj(d_n)."""
    if f.is_zero or g.is_zero:
        return 0.0 + 0.0j
    lo = max(f.min_freq, g.min_freq)
    hi = min(f.max_freq, g.max_freq)
    if lo > hi:
        return 0.0 + 0.0j
    return complex(np.dot(f.window(lo, hi), np.conj(g.window(lo, hi))))


def coeff_distance(f: TrigPoly, g: TrigPoly) -> float:
    """max_n |f_n - g_n| over the union of the frequency windows."""
    d = f - g
    if d.is_zero:
        return 0.0
    return float(np.abs(d.coeffs).max())


def random_poly(rng, degree: int, min_freq: int = 0) -> TrigPoly:
    """Random polynomial with standard complex Gaussian coefficients on
    [min_freq, degree].  Plumbing for tests and experiment corpora."""
    size = int(degree) - int(min_freq) + 1
    if size <= 0:
        raise ValueError("empty frequency window")
    c = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return TrigPoly(c, int(min_freq))
