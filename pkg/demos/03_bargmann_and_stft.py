"""Hermite functions, the Bargmann transform, and the matrix of a time-frequency shift."""

import numpy as np

from gaborcert import TFPoint, bargmann, hermite_eval, poly_bargmann, stft_matrix_element, tf_shift
from gaborcert.fock import (
    HermiteCoeffs,
    bargmann_direct,
    calibrate_shift,
    fock_l2_norm,
    fock_shift,
    stft_block,
    stft_matrix_element_leibniz,
)
from gaborcert.windows import inner_product

# h_0 .. h_4 are orthonormal; check a few inner products by quadrature
G = np.array([[inner_product(lambda t, a=a: hermite_eval(a, t), lambda t, b=b: hermite_eval(b, t))
               for b in range(5)] for a in range(5)])
print("Gram of h_0..h_4 (real part):")
print(G.real.round(10))

# Bargmann maps h_m to (pi^m / m!)^{1/2} z^m, so norms are preserved
rng = np.random.default_rng(0)
f = HermiteCoeffs.random(1, 6, rng)
F = bargmann(f)
print("||f|| = %.12f   ||Bf|| = %.12f" % (f.norm(), fock_l2_norm(F)))
z0 = 0.3 - 0.7j
print("Bf(z0) coefficients: %s   quadrature: %s" % (np.round(F(z0), 10), np.round(bargmann_direct(f, z0), 10)))

# which of the candidate shift formulas intertwines with pi_(xi, x)?
cal = calibrate_shift()
for conv, r in sorted(cal.residuals.items(), key=lambda kv: kv[1])[:3]:
    print("  %-36s residual %.2e" % (conv.label, r))
print("calibrated:", cal.best.label)

# truncated shift stays close in norm once the degree is generous
z = 0.5 + 0.25j
for deg in (10, 20, 40):
    S = fock_shift(z, F, degree=deg)
    print("  degree %-3d  ||shifted|| = %.10f   tail %.1e" % (deg, fock_l2_norm(S), S.tail))

# matrix elements: Laguerre closed form vs the polyanalytic route vs quadrature
lam = TFPoint(0.4, -0.3)
for beta, alpha in [((0,), (0,)), ((2,), (1,)), ((3,), (5,))]:
    a = stft_matrix_element(beta, alpha, lam)
    b = stft_matrix_element_leibniz(beta, alpha, lam)
    c = inner_product(lambda t: hermite_eval(beta[0], t), tf_shift(lam, lambda t: hermite_eval(alpha[0], t)),
                      center=0.0, max_nodes=512)
    print(f"  <h_{beta[0]}, pi h_{alpha[0]}>  closed {a:.10f}  poly {b:.10f}  quad {c:.10f}")

# the block for many points at once, in the graded multi-index order
pts = np.array([[0.0, 0.0, 0.0, 0.0], [0.3, -0.1, 0.2, 0.5]])
B = stft_block(pts, D=2, s=1)
print("block shape", B.shape, " identity at the origin:", np.allclose(B[0], np.eye(6)[:, :3]))

# one polyanalytic transform written out as a z, conj(z) polynomial
P = poly_bargmann((1,), HermiteCoeffs.basis((2,)))
for (a, b), c in sorted(P.terms.items()):
    print("  z^%d conj(z)^%d  %+.6f" % (a[0], b[0], c.real))
