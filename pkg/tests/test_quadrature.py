import numpy as np
import pytest
from scipy import integrate as si

from boundedtype.errors import NumericError
from boundedtype.quadrature import QuadratureConfig, integrate, integrate_real_line


def test_polynomial_exact():
    val, err = integrate(lambda t: t**5 - 2 * t + 0j, -1, 2)
    assert val == pytest.approx(2**6 / 6 - 1 / 6 - 3, abs=1e-13)


def test_herglotz_kernel_integral_is_i_pi():
    z = 1j
    val, _ = integrate_real_line(lambda t: 1 / (t - z) - t / (1 + t * t))
    assert val == pytest.approx(1j * np.pi, abs=1e-9)


def test_against_scipy_near_singular():
    x, y = 0.3, 1e-2
    z = complex(x, y)
    g = lambda t: 1 / (t - z) - t / (1 + t * t)
    val, _ = integrate_real_line(g, breakpoints=[x, x - y, x + y])
    re = si.quad(lambda t: g(t).real, -np.inf, np.inf, limit=500)[0]
    assert abs(val.real - re) < 1e-6
    # imaginary part on a window [x - A, x + A] has the closed form 2 atan(A / y)
    A = 5.0
    win, _ = integrate(lambda t: g(t).imag + 0j, x - A, x + A, breakpoints=[x])
    ref = si.quad(lambda t: g(t).imag, x - A, x + A, points=[x], limit=500)[0]
    assert abs(win.real - 2 * np.arctan(A / y)) < 1e-10
    assert abs(win.real - ref) < 1e-8
    assert abs(val.imag - np.pi) < 1e-8


def test_vector_valued():
    val, _ = integrate(lambda t: np.stack([t, t * t], axis=1) + 0j, 0, 1)
    assert np.allclose(val, [0.5, 1 / 3], atol=1e-14)


def test_budget_exhaustion_raises():
    cfg = QuadratureConfig(abs_tol=1e-15, rel_tol=1e-15, max_subdivisions=5)
    with pytest.raises(NumericError) as info:
        integrate(lambda t: np.abs(t - 0.123456) ** -0.5 + 0j, 0, 1, cfg)
    assert info.value.error_estimate > 0


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=0)
