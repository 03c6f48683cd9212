"""Hankel operators, skewed truncations, and the exact reduction
identities."""

import numpy as np
import pytest

from hankellab.errors import (CostGuardError, NonAnalyticError,
                              ParameterError, SectionSizeError)
from hankellab.hankel import (MatrixSection, TruncationSpec,
                              beta_minus_one_identity_check,
                              beta_zero_identity_check,
                              column_truncation_apply, hankel_apply,
                              matrix_section, multilinear_apply,
                              multilinear_truncated_apply, truncated_apply)
from hankellab.spaces import random_symbol, reduction_index
from hankellab.trigpoly import (TrigPoly, analytic_partial_sum,
                                coeff_distance, multiply, random_poly,
                                tail_projection)


# -- plain application --------------------------------------------------------

def test_hankel_apply_hand_oracle():
    # b = 1 + 2z + 3z^2, f = a0 + a1 z: c_m = sum_n a_n b_{m+n}
    b = TrigPoly([1.0, 2.0, 3.0], 0)
    f = TrigPoly([5.0, 7.0], 0)
    h = hankel_apply(b, f)
    assert h.coeff(0) == 5.0 * 1.0 + 7.0 * 2.0     # 19
    assert h.coeff(1) == 5.0 * 2.0 + 7.0 * 3.0     # 31
    assert h.coeff(2) == 5.0 * 3.0                 # 15
    assert h.max_freq == 2


def test_hankel_apply_dual_paths_agree():
    rng = np.random.default_rng(19)
    for _ in range(100):
        b = random_poly(rng, int(rng.integers(0, 33)))
        f = random_poly(rng, int(rng.integers(0, 33)))
        direct = hankel_apply(b, f, method="direct")
        proj = hankel_apply(b, f, method="projection")
        assert coeff_distance(direct, proj) <= 1e-12


def test_hankel_apply_guards():
    b = TrigPoly.character(1)
    with pytest.raises(NonAnalyticError):
        hankel_apply(TrigPoly.character(-1), b)
    with pytest.raises(NonAnalyticError):
        hankel_apply(b, TrigPoly.character(-2))
    with pytest.raises(ParameterError):
        hankel_apply(b, b, method="nope")


def test_multilinear_apply_is_hankel_of_product():
    rng = np.random.default_rng(29)
    b = random_poly(rng, 12)
    fs = [random_poly(rng, 5), random_poly(rng, 4), random_poly(rng, 3)]
    lhs = multilinear_apply(b, fs)
    rhs = hankel_apply(b, multiply(multiply(fs[0], fs[1]), fs[2]))
    assert coeff_distance(lhs, rhs) <= 1e-12


# -- truncation specs and masks -----------------------------------------------

def test_truncation_spec_validation():
    spec = TruncationSpec(0.5, 1.0)
    assert spec.beta == (0.5,) and spec.arity == 1
    with pytest.raises(ParameterError):
        TruncationSpec((), 0.0)
    with pytest.raises(ParameterError):
        TruncationSpec((1.0,), 0.0, boundary="open")


def test_boundary_weights_include_vs_half():
    spec_i = TruncationSpec((1.0,), 0.0, boundary="include")
    spec_h = TruncationSpec((1.0,), 0.0, boundary="half")
    resid = np.array([-1.0, -1e-12, 0.0, 1e-12, 1.0])
    np.testing.assert_allclose(spec_i.weights(resid), [0, 1, 1, 1, 1])
    np.testing.assert_allclose(spec_h.weights(resid), [0, 0.5, 0.5, 0.5, 1])


def test_truncated_apply_mask_semantics():
    # beta=1, gamma=0 keeps entries with m >= n
    b = TrigPoly([1.0, 1.0, 1.0, 1.0, 1.0], 0)
    f = TrigPoly([1.0, 1.0], 0)
    spec = TruncationSpec((1.0,), 0.0)
    h = truncated_apply(b, spec, f)
    # c_m = sum_{n <= m} b_{m+n} a_n
    assert h.coeff(0) == 1.0           # only n=0
    assert h.coeff(1) == 2.0           # n=0 and n=1
    assert h.coeff(4) == 1.0           # b_5 = 0, only n=0 at b_4


def test_half_boundary_realizes_signed_mean():
    # 2*Pi(half) - I acts as sign(m - beta n - gamma) on each entry
    rng = np.random.default_rng(41)
    b = random_poly(rng, 16)
    f = random_poly(rng, 8)
    beta, gamma = 2.0, 3.0
    spec = TruncationSpec((beta,), gamma, boundary="half")
    lhs = 2.0 * truncated_apply(b, spec, f) - hankel_apply(b, f)
    B = np.zeros(40, dtype=complex)
    B[: b.coeffs.size] = b.coeffs
    out = np.zeros(28, dtype=complex)
    for m in range(28):
        for n in range(f.coeffs.size):
            out[m] += np.sign(m - beta * n - gamma) * B[m + n] * f.coeffs[n]
    ref = TrigPoly(out, 0)
    assert coeff_distance(lhs, ref) <= 1e-12


def test_beta_zero_identity():
    rng = np.random.default_rng(43)
    for _ in range(30):
        b = random_poly(rng, int(rng.integers(1, 33)))
        f = random_poly(rng, int(rng.integers(1, 33)))
        N = int(rng.integers(0, 40))
        assert beta_zero_identity_check(b, N, f) <= 1e-12


def test_beta_minus_one_identity():
    rng = np.random.default_rng(47)
    for _ in range(30):
        b = random_poly(rng, int(rng.integers(1, 33)))
        f = random_poly(rng, int(rng.integers(1, 33)))
        N = int(rng.integers(1, 40))
        assert beta_minus_one_identity_check(b, N, f) <= 1e-12


def test_column_truncation_is_input_projection():
    rng = np.random.default_rng(53)
    for _ in range(30):
        b = random_poly(rng, 20)
        f = random_poly(rng, 15)
        N = int(rng.integers(0, 18))
        lhs = column_truncation_apply(b, N, f)
        rhs = hankel_apply(b, tail_projection(f, N))
        assert coeff_distance(lhs, rhs) <= 1e-12


def test_reduction_identity_coefficientwise():
    # for gamma < 0 < beta: (I - Pi)H_b = (I - Pi)H_{P_n(b)}, n = [-gamma/beta]
    rng = np.random.default_rng(59)
    for beta, gamma in [(2.0, -6.0), (1.0, -3.5), (0.5, -10.0)]:
        n_red = reduction_index(beta, gamma)
        spec = TruncationSpec((beta,), gamma)
        for _ in range(10):
            b = random_poly(rng, 24)
            f = random_poly(rng, 12)
            b_red = tail_projection(b, n_red)
            lhs = hankel_apply(b, f) - truncated_apply(b, spec, f)
            rhs = hankel_apply(b_red, f) - truncated_apply(b_red, spec, f)
            assert coeff_distance(lhs, rhs) <= 1e-12


# -- multilinear truncation ---------------------------------------------------

def test_multilinear_truncated_matches_direct_loops():
    rng = np.random.default_rng(61)
    b = random_poly(rng, 10)
    f1 = random_poly(rng, 3)
    f2 = random_poly(rng, 4)
    beta, gamma = (0.5, -1.5), 1.0
    spec = TruncationSpec(beta, gamma)
    got = multilinear_truncated_apply(b, spec, [f1, f2])
    B = np.zeros(32, dtype=complex)
    B[: b.coeffs.size] = b.coeffs
    out = np.zeros(20, dtype=complex)
    for i0 in range(20):
        for i1 in range(f1.coeffs.size):
            for i2 in range(f2.coeffs.size):
                if beta[0] * i1 + beta[1] * i2 + gamma <= i0 + 1e-9:
                    s = i0 + i1 + i2
                    if s < B.size:
                        out[i0] += B[s] * f1.coeffs[i1] * f2.coeffs[i2]
    assert coeff_distance(got, TrigPoly(out, 0)) <= 1e-12


def test_multilinear_diagonal_reduces_to_scalar():
    rng = np.random.default_rng(67)
    for nu, gamma in [(0.5, 2.0), (-2.5, -4.0), (1.0, 0.0)]:
        b = random_poly(rng, 16)
        fs = [random_poly(rng, 5), random_poly(rng, 6)]
        lhs = multilinear_truncated_apply(
            b, TruncationSpec((nu, nu), gamma), fs)
        rhs = truncated_apply(b, TruncationSpec((nu,), gamma),
                              multiply(fs[0], fs[1]))
        assert coeff_distance(lhs, rhs) <= 1e-12


def test_multilinear_cost_guard():
    b = TrigPoly.character(1 << 12)
    fs = [TrigPoly.character(1 << 12) for _ in range(3)]
    with pytest.raises(CostGuardError):
        multilinear_truncated_apply(b, TruncationSpec((1.0,) * 3, 0.0), fs)


def test_multilinear_arity_mismatch():
    b = TrigPoly.character(2)
    with pytest.raises(ParameterError):
        multilinear_truncated_apply(b, TruncationSpec((1.0, 1.0), 0.0),
                                    [TrigPoly.character(1)])


# -- matrix sections ----------------------------------------------------------

def test_matrix_section_entries():
    b = TrigPoly([1.0, 2.0, 3.0, 4.0], 0)
    sec = matrix_section(b, None, 3, 2)
    expect = np.array([[1.0, 2.0], [2.0, 3.0], [3.0, 4.0]])
    np.testing.assert_allclose(sec.entries, expect)
    assert sec.rows == 3 and sec.cols == 2


def test_matrix_section_truncated():
    b = TrigPoly([1.0, 1.0, 1.0, 1.0], 0)
    spec = TruncationSpec((1.0,), 0.0)      # keep m >= n
    sec = matrix_section(b, spec, 2, 2)
    np.testing.assert_allclose(sec.entries, [[1.0, 0.0], [1.0, 1.0]])


def test_matrix_section_guards():
    b = TrigPoly.character(0)
    with pytest.raises(SectionSizeError):
        matrix_section(b, None, 5000, 2)
    with pytest.raises(SectionSizeError):
        matrix_section(b, None, 0, 2)


def test_matrix_section_csv_round_trip(tmp_path):
    b = random_symbol(0.5, 3, 8)
    sec = matrix_section(b, None, 4, 4)
    path = tmp_path / "section.csv"
    sec.to_csv(path)
    loaded = np.loadtxt(path, dtype=complex, delimiter=",")
    np.testing.assert_allclose(loaded, sec.entries, atol=1e-15)
