"""The numba and numpy kernel families must agree."""
import numpy as np
import pytest

from cvinv import _accel, _kernels

from .conftest import sample_configs

CONFIGS = sample_configs(25, seed=11)


def test_active_family_matches_flag():
    expected = _kernels.NUMBA_KERNELS if _accel.USE_NUMBA else _kernels.NUMPY_KERNELS
    assert _kernels.ACTIVE is expected
    assert _accel.backend_name() in ("numba", "numpy")


def test_convolve(kernels):
    rng = np.random.default_rng(0)
    a = rng.normal(size=7) + 1j * rng.normal(size=7)
    b = rng.normal(size=4) + 1j * rng.normal(size=4)
    ref = np.array([sum(a[i] * b[k - i] for i in range(7) if 0 <= k - i < 4) for k in range(10)])
    np.testing.assert_allclose(kernels["convolve"](a, b), ref, rtol=1e-14, atol=1e-14)


@pytest.mark.parametrize("idx", range(len(CONFIGS)))
def test_families_agree(idx):
    c = CONFIGS[idx]
    x, m, f = c.node_array, c.multiplicity_array, _kernels.FACTORIALS
    nb, npk = _kernels.NUMBA_KERNELS, _kernels.NUMPY_KERNELS
    V1, V2 = nb["confluent_matrix"](x, m, f), npk["confluent_matrix"](x, m, f)
    np.testing.assert_allclose(V1, V2, rtol=1e-14, atol=0)
    for j in range(c.n):
        h1 = nb["h_derivatives"](x, m, j, 5, f)
        h2 = npk["h_derivatives"](x, m, j, 5, f)
        np.testing.assert_allclose(h1, h2, rtol=1e-12)
    i1, s1 = nb["lu_inverse"](V1)
    i2, s2 = npk["lu_inverse"](V1)
    assert s1 == s2 == -1
    np.testing.assert_allclose(i1, i2, rtol=0, atol=1e-9 * np.abs(i1).max())


def test_taylor_shift_and_reciprocal(kernels):
    a = np.array([2, -3, 0.5j, 1], dtype=complex)
    shifted = kernels["taylor_shift"](a, 0.25 - 0.5j)
    # evaluate both forms at a sample point
    z, c = 0.3 + 0.1j, 0.25 - 0.5j
    assert np.polyval(shifted[::-1], z - c) == pytest.approx(np.polyval(a[::-1], z), rel=1e-14)
    s = kernels["reciprocal_series"](np.array([2, 1], dtype=complex), 3)
    np.testing.assert_allclose(s, [0.5, -0.25, 0.125, -0.0625])


def test_taylor_shift_at_zero_center(kernels):
    a = np.array([1, 2, 3], dtype=complex)
    np.testing.assert_array_equal(kernels["taylor_shift"](a, 0j), a)


def test_lu_singular_flag(kernels):
    m = np.array([[1, 2], [2, 4]], dtype=complex)
    _, status = kernels["lu_inverse"](m)
    assert status == 1
