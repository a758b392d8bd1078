"""Independent reference computations used only by the tests.

None of these share code paths with the library: Hermite functions come from
sympy's Rodrigues derivative, determinants from the permutation expansion,
point counts from brute force over an integer box, and integrals from
scipy's adaptive quad.
"""

import functools
import itertools
import math

import numpy as np
import sympy as sp
from scipy import integrate

_t = sp.Symbol("t", real=True)


@functools.lru_cache(maxsize=None)
def hermite_rodrigues(m):
    """h_m(t) = c_m e^{pi t^2} d^m/dt^m e^{-2 pi t^2} with c_m > 0 fixed by the L2 norm."""
    expr = sp.simplify(sp.exp(sp.pi * _t**2) * sp.diff(sp.exp(-2 * sp.pi * _t**2), _t, m))
    norm2 = sp.integrate(expr**2, (_t, -sp.oo, sp.oo))
    c = 1 / sp.sqrt(norm2)
    return sp.lambdify(_t, sp.simplify(c * expr), "numpy")


def permutation_det(M):
    """Leibniz expansion; fine for the 4x4 and 6x6 matrices used here."""
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inv
        for i in range(n):
            term = term * M[i][perm[i]]
        total = total + term
    return total


def brute_force_points(G, R, box):
    """Lattice points G c with |G c| <= R for integer c in [-box, box]^d."""
    G = np.asarray(G, dtype=float)
    d = G.shape[1]
    axes = [np.arange(-box, box + 1)] * d
    C = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d)
    P = C @ G.T
    return P[np.linalg.norm(P, axis=1) <= R + 1e-12]


def quad_complex(f, a=-np.inf, b=np.inf):
    re = integrate.quad(lambda t: np.real(f(t)), a, b, epsabs=1e-13, epsrel=1e-12, limit=400)[0]
    im = integrate.quad(lambda t: np.imag(f(t)), a, b, epsabs=1e-13, epsrel=1e-12, limit=400)[0]
    return re + 1j * im


def stft_quadrature(beta, alpha, xi, x):
    """<h_beta, pi_(xi,x) h_alpha> in one dimension by scipy quad over [-12, 12]."""
    hb = hermite_rodrigues(beta)
    ha = hermite_rodrigues(alpha)

    def integrand(t):
        return hb(t) * np.conj(np.exp(2j * np.pi * xi * t) * ha(t - x))

    return quad_complex(integrand, -12 + min(x, 0), 12 + max(x, 0))


def fock_inner_polar(F, G, k=1.0, rmax=8.0):
    """int F conj(G) e^{-pi k |z|^2} dA in polar coordinates, n = 1."""

    def radial(r):
        ang = integrate.quad(
            lambda th: np.real(F(r * np.exp(1j * th)) * np.conj(G(r * np.exp(1j * th)))), 0, 2 * np.pi,
            epsabs=1e-13, limit=200)[0]
        return ang * np.exp(-np.pi * k * r * r) * r

    return integrate.quad(radial, 0, rmax, epsabs=1e-13, limit=200)[0]


def weighted_grid_inner(F, G, k=1.0, half_width=6.0, h=0.04):
    """int F conj(G) e^{-pi k |z|^2} dA by the trapezoid rule on a square grid.

    The integrand is smooth with Gaussian decay, so the rule converges
    spectrally fast in h.
    """
    g = np.arange(-half_width, half_width + h / 2, h)
    Z = g[:, None] + 1j * g[None, :]
    w = np.exp(-np.pi * k * np.abs(Z) ** 2)
    return complex(np.sum(F(Z) * np.conj(G(Z)) * w) * h * h)


def binom(n, k):
    return math.comb(n, k)
