"""Hardy and Lipschitz norms, symbol generation, and symbol reduction."""

import math

import numpy as np
import pytest

from hankellab.errors import (NonAnalyticError, ParameterError,
                              UndefinedRatioError)
from hankellab.spaces import (hardy_norm, lipschitz_norm, lipschitz_norm_diff,
                              modulated_norm_ratio, random_symbol,
                              reduce_symbol, reduction_index, sup_norm)
from hankellab.trigpoly import (TrigPoly, coeff_distance, random_poly,
                                tail_projection)


# -- hardy_norm ---------------------------------------------------------------

def test_hardy_norm_characters_and_constants():
    for p in [0.5, 1.0, 2.0, 3.7, math.inf]:
        for n in [0, 1, 17]:
            h = hardy_norm(TrigPoly.character(n), p)
            assert abs(h.value - 1.0) <= 1e-10
        c = hardy_norm(TrigPoly.constant(-2.0j), p)
        assert abs(c.value - 2.0) <= 1e-10


def test_hardy_norm_one_plus_z():
    f = TrigPoly([1.0, 1.0], 0)
    h = hardy_norm(f, 2.0)
    assert abs(h.value - math.sqrt(2.0)) <= 1e-8
    assert h.converged


def test_hardy_norm_parseval():
    rng = np.random.default_rng(7)
    for _ in range(25):
        f = random_poly(rng, int(rng.integers(0, 60)))
        h = hardy_norm(f, 2.0)
        parseval = math.sqrt(float(np.sum(np.abs(f.coeffs) ** 2)))
        assert abs(h.value - parseval) <= 1e-8 * max(parseval, 1.0)


def test_hardy_norm_homogeneity_and_triangle():
    rng = np.random.default_rng(9)
    for p in [1.0, 2.0, 4.0]:
        for _ in range(5):
            f = random_poly(rng, 12)
            g = random_poly(rng, 12)
            lam = complex(rng.standard_normal(), rng.standard_normal())
            assert abs(hardy_norm(lam * f, p).value
                       - abs(lam) * hardy_norm(f, p).value) <= 1e-9
            assert (hardy_norm(f + g, p).value
                    <= hardy_norm(f, p).value + hardy_norm(g, p).value + 1e-9)


def test_hardy_norm_infinity_is_sup():
    f = TrigPoly([1.0, 1.0], 0)
    h = hardy_norm(f, math.inf)
    assert abs(h.value - 2.0) <= 1e-8     # max |1 + e^{it}| = 2


def test_hardy_norm_guards():
    with pytest.raises(NonAnalyticError):
        hardy_norm(TrigPoly.character(-1), 2.0)
    with pytest.raises(ParameterError):
        hardy_norm(TrigPoly.character(1), 0.0)


# -- lipschitz norms ----------------------------------------------------------

def test_lipschitz_norm_constant_and_homogeneity():
    c = TrigPoly.constant(1.5j)
    assert abs(lipschitz_norm(c, 0.7).value - 1.5) <= 1e-12
    rng = np.random.default_rng(13)
    b = random_poly(rng, 30)
    v = lipschitz_norm(b, 0.5).value
    assert abs(lipschitz_norm(3.0 * b, 0.5).value - 3.0 * v) <= 1e-10


def test_lipschitz_norm_character_ratio_bounds():
    for n in [2, 3, 7, 16, 90, 513]:
        v = lipschitz_norm(TrigPoly.character(n), 0.5).value
        ratio = v / n ** 0.5
        assert 0.25 <= ratio <= 4.0


def test_lipschitz_norm_certificates():
    b = random_symbol(0.5, 5, 123)
    ln = lipschitz_norm(b, 0.5)
    assert ln.method == "lp_block"
    assert ln.certificates
    assert abs(ln.value - max(v for _, v in ln.certificates)) <= 1e-15


def test_lipschitz_norm_diff_examples():
    c = TrigPoly.constant(2.0)
    assert abs(lipschitz_norm_diff(c, 0.5).value - 2.0) <= 1e-10
    e = TrigPoly.character(1)
    lb = lipschitz_norm(e, 0.5).value
    ld = lipschitz_norm_diff(e, 0.5).value
    assert ld > 0
    assert 0.1 <= lb / ld <= 10.0
    b = random_poly(np.random.default_rng(4), 20)
    v = lipschitz_norm_diff(b, 0.5).value
    assert abs(lipschitz_norm_diff(0.5j * b, 0.5).value - 0.5 * v) <= 1e-9


def test_lipschitz_norm_diff_alpha_range():
    b = TrigPoly.character(2)
    with pytest.raises(ParameterError):
        lipschitz_norm_diff(b, 1.0)
    with pytest.raises(ParameterError):
        lipschitz_norm_diff(b, 0.0)


# -- random_symbol ------------------------------------------------------------

def test_random_symbol_deterministic():
    a = random_symbol(0.5, 6, 42)
    b = random_symbol(0.5, 6, 42)
    assert a == b                          # bitwise-identical coefficients


def test_random_symbol_norm_in_range():
    for s in range(10):
        for alpha in [0.25, 0.5, 1.0]:
            b = random_symbol(alpha, 6, [5, s])
            v = lipschitz_norm(b, alpha).value
            assert 0.25 <= v <= 4.0


def test_random_symbol_degenerate_and_guards():
    b = random_symbol(0.5, 0, 9)
    assert b.max_freq == 0 and not b.is_zero
    with pytest.raises(ParameterError):
        random_symbol(0.0, 3, 1)
    with pytest.raises(ParameterError):
        random_symbol(0.5, -1, 1)


# -- reduction_index ----------------------------------------------------------

def test_reduction_index_cases():
    assert reduction_index(2.0, -6.0) == 3          # [-gamma/beta]
    assert reduction_index(1.0, 5.7) == 5           # [gamma]
    assert reduction_index(-2.0, 7.0) == 3          # min{[7], [3.5]}
    assert reduction_index(-1.0, -2.0) is None      # nothing to reduce
    assert reduction_index(0.0, -3.0) == 0
    assert reduction_index(0.0, 3.7) == 3
    assert reduction_index(2.0, 0.0) == 0
    assert reduction_index(-2.0, 0.0) == 0


# -- reduce_symbol ------------------------------------------------------------

def test_reduce_symbol_small_N_is_identity():
    b = random_symbol(0.5, 6, 77)
    for N in [0, 1, 10, 16]:
        assert reduce_symbol(b, N) == b


def test_reduce_symbol_tail_equality():
    b = random_symbol(0.5, 9, 31)
    for N in [17, 64, 100, 500]:
        bt = reduce_symbol(b, N)
        n0 = N.bit_length() - 1
        # promised range
        cut = 1 << (n0 + 2)
        assert coeff_distance(tail_projection(bt, cut),
                              tail_projection(b, cut)) == 0.0
        # the realization is exact from 2^{n0-2} on
        cut2 = 1 << (n0 - 2)
        assert coeff_distance(tail_projection(bt, cut2),
                              tail_projection(b, cut2)) == 0.0
        assert bt.is_zero or bt.min_freq >= cut2


def test_reduce_symbol_idempotent():
    b = random_symbol(0.5, 9, 15)
    for N in [10, 17, 64, 300]:
        once = reduce_symbol(b, N)
        assert reduce_symbol(once, N) == once


def test_reduce_symbol_high_spectrum_untouched():
    N = 64                      # N0 = 6, cut at 2^4 = 16
    b = tail_projection(random_symbol(0.5, 9, 3), 1 << 8)
    assert reduce_symbol(b, N) == b


# -- modulated_norm_ratio -----------------------------------------------------

def test_modulated_ratio_trivial_case():
    b = random_symbol(0.5, 4, 21)
    assert abs(modulated_norm_ratio(b, 0.5, 10, 0) - 1.0) <= 1e-12


def test_modulated_ratio_zero_symbol_error():
    with pytest.raises(UndefinedRatioError):
        modulated_norm_ratio(TrigPoly.zero(), 0.5, 8, 8)


def test_modulated_ratio_scale_invariant():
    b = random_symbol(0.5, 6, 33)
    r1 = modulated_norm_ratio(b, 0.5, 32, 64)
    r2 = modulated_norm_ratio(5.0j * b, 0.5, 32, 64)
    assert abs(r1 - r2) <= 1e-9 * max(r1, 1.0)


def test_modulated_ratio_example_sweep():
    # M = N over 50 seeds stays below the recorded constant
    worst = 0.0
    for s in range(50):
        b = random_symbol(0.5, 8, [7, s])
        worst = max(worst, modulated_norm_ratio(b, 0.5, 64, 64))
    assert worst <= 10.0


def test_sup_norm_refinement_converges():
    f = TrigPoly([1.0, 1.0], 0)
    v, grid, converged = sup_norm(f)
    assert abs(v - 2.0) <= 1e-7
    assert converged and grid >= 16
