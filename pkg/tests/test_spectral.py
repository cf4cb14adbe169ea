import numpy as np
import pytest
from scipy import integrate as si

from boundedtype.errors import ContourError, DomainError
from boundedtype.factorization import helson_decompose
from boundedtype.funclib import Polynomial, RationalFunction, poly_roots
from boundedtype.halfplane import HerglotzRepresentation
from boundedtype.spectral import (
    ContourSpec,
    count_upper_roots,
    estimate_negative_index,
    real_domain_scan,
    sample_upper,
    stieltjes_invert,
    verify_index_theorem,
)

Z = RationalFunction([0, 1])
Z2 = RationalFunction([0, 0, 1])
Z3 = RationalFunction([0, 0, 0, 1])
M1 = RationalFunction([-1], [0, 1])


def _oracle_count(f, w):
    return sum(m for r, m in poly_roots(f.num - f.den * w) if r.imag > 0)


def test_count_examples():
    assert count_upper_roots(Z, -1j) == 0
    assert count_upper_roots(Z2, -1j) == 1
    assert count_upper_roots(Z3, -1j) == 1
    assert _oracle_count(Z3, -1j) == 1


def test_count_matches_root_oracle(catalog_entry):
    _, f, _ = catalog_entry
    rng = np.random.default_rng(21)
    for _ in range(5):
        w = complex(rng.uniform(-4, 4), -rng.uniform(0.2, 4))
        assert count_upper_roots(f, w) == _oracle_count(f, w)


def test_count_rejects_bad_witness_and_contour():
    with pytest.raises(DomainError):
        count_upper_roots(Z2, 1j)
    with pytest.raises(DomainError):
        ContourSpec(imag_lo=0.0)
    with pytest.raises(DomainError):
        ContourSpec(samples_per_side=4)


def test_count_refuses_near_real_root():
    # z = -1e-9 i sits closer to R than the contour's bottom edge
    with pytest.raises(ContourError):
        count_upper_roots(Z, -1e-9j)
    # z^2 = -1e-8 i: one root at Im ~ 7e-5 in C+, below imag_lo
    with pytest.raises(ContourError):
        count_upper_roots(Z2, -1e-8j)


def test_mobius_stability():
    rng = np.random.default_rng(22)
    for f in (Z2, Z3, RationalFunction([0, -1, 0, 1], [1, 0, 1])):
        for _ in range(4):
            a, b = rng.uniform(0.2, 3), rng.uniform(0.0, 3)
            assert count_upper_roots(f * a + b, -1j) == count_upper_roots(f, (-1j - b) / a)


def test_sampling_is_deterministic_and_nested():
    a = sample_upper(12, 7)
    assert np.array_equal(a, sample_upper(12, 7))
    assert np.all(a.imag >= 0.1) and np.all(a.imag <= 10) and np.all(np.abs(a.real) <= 5)


def test_negative_index_examples():
    assert estimate_negative_index(M1).kappa == 0
    assert estimate_negative_index(Z2).kappa == 1
    est = estimate_negative_index(Z3)
    assert est.kappa == 1 and est.stabilized
    # monomial-basis oracle for z^3
    assert sorted(np.sign(np.linalg.eigvalsh(np.fliplr(np.eye(3))))) == [-1, 1, 1]


def test_negative_index_monotone(catalog_entry):
    _, f, kappa = catalog_entry
    for seed in range(3):
        est = estimate_negative_index(f, seed=seed)
        counts = [c for _, c in est.point_counts]
        assert counts == sorted(counts)
        assert est.kappa == kappa and est.stabilized


def test_index_theorem_examples():
    assert verify_index_theorem(Z2, [-1j, -2 - 1j, 5 - 3j]).passed
    assert verify_index_theorem(M1, [-1j]).passed
    assert verify_index_theorem(Z3, [-1j, 1 - 1j]).passed


def test_index_theorem_inconclusive_when_unstable():
    rep = verify_index_theorem(Z3, [-1j], schedule=[2, 3])
    assert rep.status == "inconclusive"


def test_stieltjes_examples():
    assert np.allclose(stieltjes_invert(Z, [0.0, 1.0], 1e-6), 1e-6 / np.pi)
    v = stieltjes_invert(M1, [1.0], 1e-3)[0]
    assert v == pytest.approx((-1 / (1 + 1e-3j)).imag / np.pi, rel=1e-12)
    assert v == pytest.approx(1e-3 / np.pi, rel=1e-5)
    q = HerglotzRepresentation(density=lambda t: np.full(np.shape(t), 0.5), support=(-1.0, 1.0))
    for eps in (1e-2, 1e-3, 1e-4):
        got = stieltjes_invert(q, [0.0], eps)[0]
        # oracle: closed-form Poisson integral of the box, (1/pi) * 0.5 * (atan((1-x)/e) + atan((1+x)/e))
        exact = 0.5 / np.pi * 2 * np.arctan(1 / eps)
        assert got == pytest.approx(exact, abs=1e-9)
        assert abs(got - 0.5) < 1e-2


def test_stieltjes_against_scipy_cauchy_integral():
    rho = lambda t: np.exp(-t * t)
    q = HerglotzRepresentation(density=rho)
    eps = 1e-2
    x = 0.3
    ref = si.quad(lambda t: eps / ((t - x) ** 2 + eps**2) * rho(t), -20, 20, points=[x], limit=400)[0] / np.pi
    assert stieltjes_invert(q, [x], eps)[0] == pytest.approx(ref, abs=1e-8)


def test_stieltjes_rejects_grid_near_atom():
    q = HerglotzRepresentation(atoms=[(0.0, 1.0)])
    with pytest.raises(DomainError):
        stieltjes_invert(q, [0.0005], 1e-4)
    with pytest.raises(DomainError):
        stieltjes_invert(q, [1.0], 0.0)


def test_real_domain_scan_examples():
    assert real_domain_scan(Z2, (-1, 1)).clear
    rep = real_domain_scan(M1, (-1, 1))
    assert rep.obstructions == [("pole", 0.0)]
    assert real_domain_scan(helson_decompose(Z2), (0, 2)).clear
    f = RationalFunction([1, 1, 0, -1], [1, 0, -1])
    rep = real_domain_scan(helson_decompose(f), (-2, 2))
    locs = sorted(x for _, x in rep.obstructions)
    assert np.allclose(locs, [-1, 1], atol=1e-8)
    q = HerglotzRepresentation(atoms=[(0.5, 1.0)])
    assert real_domain_scan(q, (0, 1)).obstructions == [("atom", 0.5)]
    with pytest.raises(DomainError):
        real_domain_scan(Z, (1, 0))
