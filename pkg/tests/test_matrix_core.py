import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbnorm.matrix_core import (
    fidelity,
    frobenius_norm,
    hs_inner,
    is_isometry,
    is_psd,
    optimal_unitary,
    psd_sqrt,
    spectral_norm,
    svd,
    trace_norm,
)
from cbnorm.sampling import haar_isometry, random_density, random_unit_vector

from conftest import rand_complex


def test_svd_identity():
    res = svd(np.eye(2))
    np.testing.assert_allclose(res.singular_values, [1.0, 1.0])


def test_svd_diagonal_signs():
    res = svd(np.diag([3.0, -4.0]))
    np.testing.assert_allclose(res.singular_values, [4.0, 3.0])


def test_svd_reconstruction_random(rng):
    m = rand_complex(rng, 5, 3)
    res = svd(m)
    assert frobenius_norm(res.reconstruct() - m) <= 1e-10 * frobenius_norm(m)
    assert np.all(np.diff(res.singular_values) <= 0)
    np.testing.assert_allclose(res.left.conj().T @ res.left, np.eye(3), atol=1e-10)
    np.testing.assert_allclose(res.right.conj().T @ res.right, np.eye(3), atol=1e-10)


def test_svd_rank(rng):
    u = random_unit_vector(4, rng)
    v = random_unit_vector(4, rng)
    assert svd(np.outer(u, v.conj())).rank() == 1
    assert svd(np.zeros((3, 3))).rank() == 0


def test_trace_norm_identity():
    for n in (1, 2, 5):
        assert trace_norm(np.eye(n)) == pytest.approx(n)


def test_trace_norm_rank_one(rng):
    u = random_unit_vector(4, rng)
    v = random_unit_vector(4, rng)
    assert trace_norm(np.outer(u, v.conj())) == pytest.approx(1.0)


def test_optimal_unitary_positive_definite(rng):
    p = random_density(3, rng) + 0.5 * np.eye(3)
    u = optimal_unitary(p)
    np.testing.assert_allclose(u, np.eye(3), atol=1e-9)
    assert hs_inner(u, p).real == pytest.approx(trace_norm(p), abs=1e-9)


def test_optimal_unitary_of_unitary(rng):
    v = haar_isometry(4, 4, rng)
    u = optimal_unitary(v)
    np.testing.assert_allclose(u, v, atol=1e-9)
    assert hs_inner(u, v).real == pytest.approx(4.0, abs=1e-9)


def test_optimal_unitary_contract_random(rng):
    for _ in range(100):
        m = rand_complex(rng, 4, 4)
        u = optimal_unitary(m)
        ip = hs_inner(u, m)
        assert abs(ip.imag) < 1e-9
        assert ip.real == pytest.approx(trace_norm(m), abs=1e-9)


def test_optimal_unitary_rejects_rectangular():
    with pytest.raises(ValueError):
        optimal_unitary(np.ones((2, 3)))


def test_psd_sqrt_examples(rng):
    np.testing.assert_allclose(psd_sqrt(np.eye(3)), np.eye(3), atol=1e-12)
    np.testing.assert_allclose(psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-12)
    rho = random_density(5, rng)
    s = psd_sqrt(rho)
    np.testing.assert_allclose(s @ s, rho, atol=1e-9)


def test_psd_sqrt_rejects_negative():
    with pytest.raises(ValueError):
        psd_sqrt(np.diag([1.0, -1e-3]))


def test_fidelity_self_is_one(rng):
    rho = random_density(4, rng)
    assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-9)


def test_fidelity_orthogonal_pure():
    e1 = np.zeros((2, 2)); e1[0, 0] = 1.0
    e2 = np.zeros((2, 2)); e2[1, 1] = 1.0
    assert fidelity(e1, e2) == pytest.approx(0.0, abs=1e-9)


def test_fidelity_max_mixed_vs_pure(rng):
    u = random_unit_vector(2, rng)
    got = fidelity(np.eye(2) / 2, np.outer(u, u.conj()))
    assert got == pytest.approx(1 / np.sqrt(2), abs=1e-9)


def test_fidelity_symmetric(rng):
    p, q = random_density(3, rng), random_density(3, rng)
    assert fidelity(p, q) == pytest.approx(fidelity(q, p), abs=1e-9)


def test_fidelity_dimension_mismatch():
    with pytest.raises(ValueError):
        fidelity(np.eye(2), np.eye(3))


def test_is_psd():
    assert is_psd(np.eye(3))
    assert not is_psd(np.diag([1.0, -1e-3]), tol=1e-8)
    assert not is_psd(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_is_isometry():
    assert is_isometry(np.eye(3)[:, :2])
    assert not is_isometry(np.ones((3, 2)))
    assert not is_isometry(np.eye(2, 3))  # rows < cols


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5), st.integers(1, 5))
def test_norm_ordering(seed, r, c):
    g = np.random.default_rng(seed)
    m = g.standard_normal((r, c)) + 1j * g.standard_normal((r, c))
    t, f, s = trace_norm(m), frobenius_norm(m), spectral_norm(m)
    assert t >= f - 1e-12
    assert f >= s - 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5), st.integers(1, 5))
def test_trace_norm_cauchy_schwarz(seed, r, c):
    g = np.random.default_rng(seed)
    m = g.standard_normal((r, c)) + 1j * g.standard_normal((r, c))
    assert trace_norm(m) <= np.sqrt(min(r, c)) * frobenius_norm(m) + 1e-10


def test_trace_norm_equality_on_scaled_isometries(rng):
    for n, m in [(2, 2), (2, 4), (3, 5)]:
        a = 2.7 * haar_isometry(n, m, rng)
        assert trace_norm(a) == pytest.approx(np.sqrt(n) * frobenius_norm(a), abs=1e-9)
