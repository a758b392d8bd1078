import math

import numpy as np
import pytest

from gaborcert.errors import DegreeOverflow
from gaborcert.fock import (
    CALIBRATED_SHIFT,
    FockPoly,
    HermiteCoeffs,
    bargmann,
    bargmann_direct,
    calibrate_shift,
    fock_l2_norm,
    fock_shift,
    fock_sup_norm,
    full_poly_bargmann,
    monomial_norm_sq,
    poly_bargmann,
    stft_block,
    stft_matrix_element,
    stft_matrix_element_leibniz,
)
from gaborcert.frames import entry_bound
from gaborcert.windows import TFPoint, integrate_gaussian, tf_shift
from oracles import fock_inner_polar, hermite_rodrigues, stft_quadrature, weighted_grid_inner


def test_bargmann_h0_is_one():
    F = bargmann(HermiteCoeffs.basis((0,)))
    assert F.coeffs.tolist() == [1]
    # quadrature of the kernel at a few points
    for z in (0.0, 0.3 - 0.2j, -1.1 + 0.5j):
        assert abs(bargmann_direct(lambda t: hermite_rodrigues(0)(t) + 0 * t, z) - 1) < 1e-10


@pytest.mark.parametrize("m", range(5))
def test_bargmann_monomial_by_quadrature(m):
    F = bargmann(HermiteCoeffs.basis((m,)))
    for z in (0.4 + 0.1j, -0.3 + 0.7j):
        direct = bargmann_direct(lambda t: hermite_rodrigues(m)(t) + 0 * t, z)
        assert abs(direct - F(z)) < 1e-9
        assert abs(F(z)) == pytest.approx(math.sqrt(math.pi**m / math.factorial(m)) * abs(z) ** m, rel=1e-12)


@pytest.mark.parametrize("m", range(5))
def test_monomial_norms_by_polar_integral(m):
    val = fock_inner_polar(lambda z: z**m, lambda z: z**m)
    assert val == pytest.approx(math.factorial(m) / math.pi**m, rel=1e-8)
    assert monomial_norm_sq((m,)) == pytest.approx(math.factorial(m) / math.pi**m, rel=1e-14)


def test_monomial_norm_weight_k():
    k = 2.5
    val = fock_inner_polar(lambda z: z**3, lambda z: z**3, k=k)
    assert monomial_norm_sq((3,), k) == pytest.approx(val, rel=1e-8)


@pytest.mark.parametrize("n", [1, 2])
def test_bargmann_isometry(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(20):
        D = int(rng.integers(0, 9))
        f = HermiteCoeffs.random(n, D, rng)
        assert fock_l2_norm(bargmann(f)) == pytest.approx(f.norm(), rel=1e-8)


def test_bargmann_isometry_grid_oracle():
    rng = np.random.default_rng(3)
    f = HermiteCoeffs.random(1, 6, rng)
    F = bargmann(f)
    assert weighted_grid_inner(F, F).real == pytest.approx(f.norm() ** 2, rel=1e-8)


def test_hermite_parseval_by_quadrature():
    rng = np.random.default_rng(4)
    f = HermiteCoeffs.random(1, 7, rng)
    val, _ = integrate_gaussian(lambda t: np.abs(f(t)) ** 2)
    assert val == pytest.approx(f.norm() ** 2, rel=1e-10)


def test_shift_calibration():
    res = calibrate_shift()
    assert res.best == CALIBRATED_SHIFT
    assert res.residuals[res.best] <= 1e-6
    others = [v for c, v in res.residuals.items() if c != res.best]
    assert min(others) > 1e-2


def test_shift_zero_is_identity():
    F = bargmann(HermiteCoeffs.random(1, 5, np.random.default_rng(5)))
    G = fock_shift(0.0, F, degree=F.D)
    assert np.allclose(G.coeffs, F.coeffs, atol=1e-15)


def test_shift_unitary_within_tail():
    rng = np.random.default_rng(6)
    F = FockPoly(1, 8, rng.standard_normal(9) + 1j * rng.standard_normal(9))
    G = fock_shift(0.5 - 0.3j, F)
    assert G.tail < 1e-6
    assert fock_l2_norm(G) == pytest.approx(fock_l2_norm(F), abs=G.tail + 1e-10)


def test_shift_degree_overflow():
    F = FockPoly(1, 8, np.ones(9))
    with pytest.raises(DegreeOverflow):
        fock_shift(0.5, F, degree=500)
    with pytest.raises(DegreeOverflow):
        fock_shift(3.0, F, degree=10, max_tail=1e-6)


def test_intertwining_on_grid():
    f = HermiteCoeffs.random(1, 10, np.random.default_rng(7))
    BF = bargmann(f)
    g = np.linspace(-0.6, 0.6, 5)
    zetas = (0.3, -0.2 + 0.4j)
    worst = 0.0
    for z in (a + 1j * b for a in g for b in g):
        lhs = fock_shift(z, BF)
        shifted = tf_shift(TFPoint(z.imag, z.real), f)
        for zeta in zetas:
            worst = max(worst, abs(lhs(zeta) - bargmann_direct(shifted, zeta)))
    assert worst <= 1e-6


def test_poly_bargmann_alpha0_is_bargmann():
    f = HermiteCoeffs.random(1, 5, np.random.default_rng(8))
    P = poly_bargmann((0,), f)
    z = np.array([0.2 + 0.1j, -0.5 + 0.3j])
    assert np.allclose(P(z), bargmann(f)(z), atol=1e-13)


def test_poly_bargmann_isometry():
    f = HermiteCoeffs.random(1, 5, np.random.default_rng(9))
    P = poly_bargmann((1,), f)
    assert weighted_grid_inner(P, P).real == pytest.approx(f.norm() ** 2, rel=1e-6)


def test_polyanalytic_ranges_orthogonal():
    rng = np.random.default_rng(10)
    f, g = HermiteCoeffs.random(1, 5, rng), HermiteCoeffs.random(1, 5, rng)
    val = weighted_grid_inner(poly_bargmann((1,), f), poly_bargmann((0,), g))
    assert abs(val) <= 1e-8


def test_full_poly_bargmann_additivity():
    rng = np.random.default_rng(11)
    fs = {(0,): HermiteCoeffs.random(1, 4, rng), (1,): HermiteCoeffs.random(1, 4, rng),
          (2,): HermiteCoeffs.random(1, 4, rng)}
    F = lambda z: full_poly_bargmann(2, fs, z)
    total = sum(f.norm() ** 2 for f in fs.values())
    assert weighted_grid_inner(F, F).real == pytest.approx(total, rel=1e-6)
    single = {(1,): fs[(1,)]}
    z = 0.3 + 0.2j
    assert full_poly_bargmann(1, single, z) == pytest.approx(poly_bargmann((1,), fs[(1,)])(z))
    with pytest.raises(ValueError):
        full_poly_bargmann(1, fs, z)


def test_stft_at_origin_is_identity():
    V = stft_block(np.zeros((1, 2)), 6, 6)[0]
    assert np.allclose(V, np.eye(7), atol=1e-15)


def test_stft_gaussian_modulus():
    v = stft_matrix_element((0,), (0,), TFPoint(0.3, 0.7))
    assert abs(abs(v) - math.exp(-math.pi * 0.58 / 2)) < 1e-14


def test_stft_vs_quadrature():
    rng = np.random.default_rng(12)
    lams = rng.uniform(-1.5, 1.5, (10, 2))
    worst = 0.0
    for xi, x in lams:
        for b in range(4):
            for a in range(4):
                ref = stft_quadrature(b, a, xi, x)
                worst = max(worst, abs(stft_matrix_element((b,), (a,), TFPoint(xi, x)) - ref))
    assert worst < 1e-8


def test_stft_2d_factorises_against_quadrature():
    lam = TFPoint((0.3, -0.4), (0.5, 0.2))
    beta, alpha = (1, 2), (2, 0)
    hb = [hermite_rodrigues(m) for m in beta]
    ha = [hermite_rodrigues(m) for m in alpha]

    def integrand(t):
        x, xi = np.asarray(lam.x), np.asarray(lam.xi)
        left = hb[0](t[..., 0]) * hb[1](t[..., 1])
        right = ha[0](t[..., 0] - x[0]) * ha[1](t[..., 1] - x[1]) * np.exp(2j * np.pi * (t @ xi))
        return left * np.conj(right)

    val, _ = integrate_gaussian(integrand, n=2, center=np.asarray(lam.x) / 2, start=64)
    assert abs(stft_matrix_element(beta, alpha, lam) - val) < 1e-8


def test_leibniz_route_matches_closed_form():
    rng = np.random.default_rng(13)
    for _ in range(10):
        lam = TFPoint(tuple(rng.uniform(-1, 1, 2)), tuple(rng.uniform(-1, 1, 2)))
        beta = tuple(rng.integers(0, 4, 2))
        alpha = tuple(rng.integers(0, 4, 2))
        assert abs(stft_matrix_element(beta, alpha, lam) - stft_matrix_element_leibniz(beta, alpha, lam)) < 1e-12


def test_stft_hermitian_symmetry():
    rng = np.random.default_rng(14)
    for _ in range(10):
        xi, x = rng.uniform(-2, 2, 2)
        b, a = rng.integers(0, 6, 2)
        lhs = stft_matrix_element((b,), (a,), TFPoint(xi, x))
        # pi_lambda^* = e^{-2 pi i xi x} pi_{-lambda}
        rhs = np.exp(-2j * np.pi * xi * x) * np.conj(stft_matrix_element((a,), (b,), TFPoint(-xi, -x)))
        assert abs(lhs - rhs) < 1e-12


def test_stft_decay_bound():
    r = np.linspace(0, 6, 121)
    pts = np.stack([r * 0.6, r * 0.8], axis=1)
    V = stft_block(pts, 5, 3)
    for bi in range(6):
        for ai in range(4):
            bound = entry_bound((bi,), (ai,), r)
            assert np.all(np.abs(V[:, bi, ai]) <= bound * (1 + 1e-12) + 1e-300)


def test_sup_norm_of_z():
    F = FockPoly(1, 1, np.array([0, 1]))
    assert fock_sup_norm(F) == pytest.approx(1 / (math.pi * math.e), rel=1e-6)
