"""Bargmann-Fock side: transforms, shifts and STFT matrix elements.

Conventions (n = 1 shown; everything factorises over coordinates):

* ``B f(z) = 2^{1/4} int f(t) exp(-pi t^2 - 2 pi z t - pi z^2 / 2) dt``.
  With the Hermite functions of :mod:`gaborcert.windows` this gives
  ``B h_m = (pi^m / m!)^{1/2} z^m`` exactly, so ``B h_0 = 1``.
* The Fock-side shift that intertwines ``pi_(xi, x)`` is

      pi^C_z F(zeta) = exp(i pi x xi - pi |z|^2 / 2) exp(-pi zeta z) F(zeta + conj(z)),

  with ``z = x + i xi``.  The constants were fixed by :func:`calibrate_shift`
  against direct quadrature, and the test suite re-runs that calibration.
* ``<h_b, pi_lambda h_a> = int h_b conj(pi_lambda h_a)`` has the closed form
  (``u = sqrt(pi) z``)

      b >= a:  e^{-i pi x xi - |u|^2/2} (-1)^{b-a} sqrt(a!/b!) conj(u)^{b-a} L_a^{(b-a)}(|u|^2)
      a >  b:  e^{-i pi x xi - |u|^2/2}            sqrt(b!/a!) u^{a-b}       L_b^{(a-b)}(|u|^2)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np
from scipy import optimize
from scipy.special import eval_genlaguerre, gammaln
from scipy.stats import qmc

from .errors import DegreeOverflow
from .lattice import multi_indices
from .windows import TFPoint, hermite_table, integrate_gaussian, tf_shift

__all__ = [
    "HermiteCoeffs",
    "FockPoly",
    "ZZbarPoly",
    "bargmann",
    "bargmann_direct",
    "monomial_norm_sq",
    "ShiftConvention",
    "SHIFT_CANDIDATES",
    "CALIBRATED_SHIFT",
    "calibrate_shift",
    "shift_closed_form",
    "fock_shift",
    "poly_bargmann",
    "full_poly_bargmann",
    "stft_matrix_element",
    "stft_matrix_element_leibniz",
    "stft_1d",
    "stft_block",
    "fock_sup_norm",
    "fock_l2_norm",
    "MAX_DEGREE",
]

MAX_DEGREE = 400


def _fact(alpha) -> float:
    return math.prod(math.factorial(a) for a in alpha)


def monomial_norm_sq(beta, k: float = 1.0) -> float:
    """int |z^beta|^2 e^{-pi k |z|^2} dA(z) = beta! / (pi^{|beta|} k^{|beta| + n})."""
    beta = tuple(beta)
    m = sum(beta)
    return _fact(beta) / (math.pi**m * k ** (m + len(beta)))


@dataclass(eq=False)
class HermiteCoeffs:
    """f = sum_alpha c_alpha h_alpha with alpha over N_D (graded order)."""

    n: int
    D: int
    coeffs: np.ndarray

    def __post_init__(self):
        self.index = multi_indices(self.n, self.D)
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != (len(self.index),):
            raise ValueError(f"expected {len(self.index)} coefficients, got {self.coeffs.shape}")

    @classmethod
    def basis(cls, alpha, D: int | None = None) -> "HermiteCoeffs":
        alpha = tuple(alpha)
        D = sum(alpha) if D is None else D
        c = cls(len(alpha), D, np.zeros(len(multi_indices(len(alpha), D)), dtype=complex))
        c.coeffs[c.index.position[alpha]] = 1
        return c

    @classmethod
    def random(cls, n: int, D: int, rng: np.random.Generator) -> "HermiteCoeffs":
        size = len(multi_indices(n, D))
        return cls(n, D, rng.standard_normal(size) + 1j * rng.standard_normal(size))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def evaluate(self, t):
        """Function value at ``t`` (trailing axis n, or plain reals when n = 1)."""
        t = np.asarray(t, dtype=float)
        if self.n == 1 and (t.ndim == 0 or t.shape[-1] != 1):
            t = t[..., None]
        tables = [hermite_table(self.D, t[..., i]) for i in range(self.n)]
        out = np.zeros(t.shape[:-1], dtype=complex)
        for c, alpha in zip(self.coeffs, self.index.elements):
            if c == 0:
                continue
            term = np.ones(t.shape[:-1])
            for i, a in enumerate(alpha):
                term = term * tables[i][a]
            out = out + c * term
        return out

    __call__ = evaluate


@dataclass(eq=False)
class FockPoly:
    """F(z) = sum_beta c_beta z^beta, |beta| <= D, in the space with weight e^{-pi k |z|^2}."""

    n: int
    D: int
    coeffs: np.ndarray
    k: float = 1.0
    tail: float = 0.0

    def __post_init__(self):
        self.index = multi_indices(self.n, self.D)
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != (len(self.index),):
            raise ValueError(f"expected {len(self.index)} coefficients, got {self.coeffs.shape}")

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        if self.n == 1 and (z.ndim == 0 or z.shape[-1] != 1):
            z = z[..., None]
        powers = [np.stack([z[..., i] ** m for m in range(self.D + 1)]) for i in range(self.n)]
        out = np.zeros(z.shape[:-1], dtype=complex)
        for c, beta in zip(self.coeffs, self.index.elements):
            if c == 0:
                continue
            term = np.ones(z.shape[:-1], dtype=complex)
            for i, b in enumerate(beta):
                term = term * powers[i][b]
            out = out + c * term
        return out

    __call__ = evaluate

    def norm_table(self) -> np.ndarray:
        return np.array([monomial_norm_sq(b, self.k) for b in self.index.elements])

    def derivative(self, alpha) -> "FockPoly":
        """d^alpha F as a FockPoly of the same degree cap."""
        out = np.zeros_like(self.coeffs)
        pos = self.index.position
        for c, beta in zip(self.coeffs, self.index.elements):
            if c == 0 or any(b < a for a, b in zip(alpha, beta)):
                continue
            f = math.prod(math.factorial(b) // math.factorial(b - a) for a, b in zip(alpha, beta))
            out[pos[tuple(b - a for a, b in zip(alpha, beta))]] += c * f
        return FockPoly(self.n, self.D, out, self.k)


@dataclass(eq=False)
class ZZbarPoly:
    """Finite sum of c * z^a * conj(z)^b over pairs of multi-indices."""

    n: int
    terms: dict = field(default_factory=dict)

    def add(self, a, b, c):
        key = (tuple(a), tuple(b))
        self.terms[key] = self.terms.get(key, 0) + c

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        if self.n == 1 and (z.ndim == 0 or z.shape[-1] != 1):
            z = z[..., None]
        zb = np.conj(z)
        out = np.zeros(z.shape[:-1], dtype=complex)
        for (a, b), c in self.terms.items():
            if c == 0:
                continue
            term = np.full(z.shape[:-1], c, dtype=complex)
            for i in range(self.n):
                term = term * z[..., i] ** a[i] * zb[..., i] ** b[i]
            out = out + term
        return out

    __call__ = evaluate

    def degree(self) -> int:
        return max((sum(a) + sum(b) for (a, b), c in self.terms.items() if c != 0), default=0)


def bargmann(f: HermiteCoeffs) -> FockPoly:
    """Bargmann transform of a finite Hermite expansion (exact, no quadrature)."""
    if f.D > MAX_DEGREE:
        raise DegreeOverflow(f"degree {f.D} exceeds cap {MAX_DEGREE}")
    scale = np.array([math.sqrt(math.pi ** sum(a) / _fact(a)) for a in f.index.elements])
    return FockPoly(f.n, f.D, f.coeffs * scale, k=1.0)


def bargmann_direct(f, z, n: int = 1) -> complex:
    """B f(z) by quadrature of the defining kernel; used as a test oracle."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    g = f.evaluate if hasattr(f, "evaluate") else f

    def integrand(t):
        tt = t[..., None] if n == 1 else t
        expo = -np.pi * np.sum(tt * tt, -1) - 2 * np.pi * (tt @ z) - np.pi * (z @ z) / 2
        return g(t) * np.exp(expo)

    center = -z.real / 2
    val, _ = integrate_gaussian(integrand, n=n, center=center if n > 1 else center[0])
    return complex(2 ** (n / 4) * val)


# -- the Fock-side shift ----------------------------------------------------

@dataclass(frozen=True)
class ShiftConvention:
    """pi^C_z F(zeta) = phase * exp(c * zeta.z) * F(zeta + sign * conj(z))."""

    c: float
    sign: int

    @property
    def label(self) -> str:
        cs = {1.0: "+1", -1.0: "-1", math.pi: "+pi", -math.pi: "-pi"}[self.c]
        return f"exp({cs}*zeta.z) F(zeta {'+' if self.sign > 0 else '-'} conj(z))"


SHIFT_CANDIDATES = tuple(
    ShiftConvention(c, s) for c in (1.0, -1.0, math.pi, -math.pi) for s in (1, -1)
)
CALIBRATED_SHIFT = ShiftConvention(-math.pi, 1)


def _shift_phase(z):
    z = np.atleast_1d(z)
    x, xi = z.real, z.imag
    return np.exp(1j * np.pi * np.dot(x, xi) - np.pi * np.sum(np.abs(z) ** 2) / 2)


def shift_closed_form(z, F, zeta, conv: ShiftConvention = CALIBRATED_SHIFT):
    """Evaluate the shifted function at ``zeta`` without truncation."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    zeta = np.asarray(zeta, dtype=complex)
    if z.size == 1 and (zeta.ndim == 0 or zeta.shape[-1] != 1):
        zeta = zeta[..., None]
    g = F.evaluate if hasattr(F, "evaluate") else F
    arg = zeta + conv.sign * np.conj(z)
    return _shift_phase(z) * np.exp(conv.c * (zeta @ z)) * g(arg if z.size > 1 else arg[..., 0])


@dataclass
class CalibrationResult:
    best: ShiftConvention
    residuals: dict

    def to_dict(self) -> dict:
        return {"best": self.best.label, "residuals": {k.label: v for k, v in self.residuals.items()}}


def calibrate_shift(f: HermiteCoeffs | None = None, z: complex = 0.4 + 0.2j, samples=None) -> CalibrationResult:
    """Pick the shift convention that makes ``pi^C_z B = B pi_(xi, x)`` hold.

    Both sides are evaluated pointwise: the left from the candidate formula
    applied to the exact Bargmann polynomial, the right by quadrature of the
    Bargmann kernel against the time-frequency shifted function.  Residuals
    are weighted by e^{-pi |zeta|^2 / 2}.
    """
    if f is None:
        f = HermiteCoeffs(1, 1, np.array([1.0, 1.0]))
    if f.n != 1:
        raise ValueError("calibration runs in one dimension")
    if samples is None:
        g = np.linspace(-1.0, 1.0, 5)
        samples = (g[:, None] + 1j * g[None, :]).ravel()
    lam = TFPoint(z.imag, z.real)
    shifted = tf_shift(lam, f)
    rhs = np.array([bargmann_direct(shifted, zeta) for zeta in samples])
    BF = bargmann(f)
    weight = np.exp(-np.pi * np.abs(samples) ** 2 / 2)
    residuals = {}
    for conv in SHIFT_CANDIDATES:
        lhs = np.array([shift_closed_form(z, BF, zeta, conv) for zeta in samples]).ravel()
        residuals[conv] = float(np.max(np.abs(lhs - rhs) * weight))
    best = min(residuals, key=residuals.get)
    return CalibrationResult(best, residuals)


def _binom_poly_shift(F: FockPoly, w) -> np.ndarray:
    """Coefficients of zeta -> F(zeta + w), same degree cap."""
    out = np.zeros_like(F.coeffs)
    pos = F.index.position
    for c, beta in zip(F.coeffs, F.index.elements):
        if c == 0:
            continue
        ranges = [range(b + 1) for b in beta]
        for gamma in iproduct(*ranges):
            coef = c
            for i, (b, g) in enumerate(zip(beta, gamma)):
                coef = coef * math.comb(b, g) * w[i] ** (b - g)
            out[pos[gamma]] += coef
    return out


def fock_shift(z, F: FockPoly, degree: int | None = None, max_tail: float | None = None) -> FockPoly:
    """pi^C_z F truncated to total degree ``degree``.

    The exponential factor is expanded as a Taylor series; the discarded part
    is reported in ``.tail`` as an F^2 norm, computed from unitarity of the
    shift (``||pi^C_z F|| = ||F||``).
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if z.size != F.n:
        raise ValueError("shift point has the wrong dimension")
    if F.k != 1.0:
        raise ValueError("the shift is defined on the unit-weight space")
    degree = F.D + 40 if degree is None else degree
    if degree > MAX_DEGREE or degree < F.D:
        raise DegreeOverflow(f"truncation degree {degree} outside [{F.D}, {MAX_DEGREE}]")
    conv = CALIBRATED_SHIFT
    G = FockPoly(F.n, degree, np.concatenate([F.coeffs, np.zeros(len(multi_indices(F.n, degree)) - len(F.coeffs))]))
    moved = _binom_poly_shift(G, conv.sign * np.conj(z))
    # multiply by prod_i exp(c z_i zeta_i), truncated
    out = np.zeros_like(moved)
    pos = G.index.position
    for c, beta in zip(moved, G.index.elements):
        if c == 0:
            continue
        room = degree - sum(beta)
        for extra in (e for d in range(room + 1) for e in multi_indices(F.n, d).elements if sum(e) == d):
            coef = c
            for i, e in enumerate(extra):
                coef = coef * (conv.c * z[i]) ** e / math.factorial(e)
            out[pos[tuple(b + e for b, e in zip(beta, extra))]] += coef
    out = out * _shift_phase(z)
    result = FockPoly(F.n, degree, out)
    kept = fock_l2_norm(result) ** 2
    total = fock_l2_norm(F) ** 2
    result.tail = math.sqrt(max(total - kept, 0.0))
    if max_tail is not None and result.tail > max_tail:
        raise DegreeOverflow(f"truncation tail {result.tail:.3g} exceeds {max_tail:.3g}")
    return result


# -- polyanalytic transforms -------------------------------------------------

def poly_bargmann(alpha, f: HermiteCoeffs) -> ZZbarPoly:
    """B^alpha f = (pi^|alpha| alpha!)^{-1/2} e^{pi|z|^2} d^alpha_z (e^{-pi|z|^2} B f).

    Leibniz with ``d_z e^{-pi z.conj(z)} = -pi conj(z) e^{-pi z.conj(z)}``:

        B^alpha f = (pi^|alpha| alpha!)^{-1/2} sum_{j <= alpha} C(alpha, j) (-pi conj(z))^{alpha-j} d^j B f.
    """
    alpha = tuple(alpha)
    if len(alpha) != f.n:
        raise ValueError("multi-index length differs from the dimension")
    if sum(alpha) > MAX_DEGREE:
        raise DegreeOverflow(f"|alpha| = {sum(alpha)} exceeds cap {MAX_DEGREE}")
    BF = bargmann(f)
    norm = 1.0 / math.sqrt(math.pi ** sum(alpha) * _fact(alpha))
    out = ZZbarPoly(f.n)
    for j in iproduct(*[range(a + 1) for a in alpha]):
        dF = BF.derivative(j)
        coef = norm
        for a, jj in zip(alpha, j):
            coef *= math.comb(a, jj) * (-math.pi) ** (a - jj)
        zbar = tuple(a - jj for a, jj in zip(alpha, j))
        for c, beta in zip(dF.coeffs, dF.index.elements):
            if c != 0:
                out.add(beta, zbar, coef * c)
    return out


def full_poly_bargmann(s: int, fs: dict, z):
    """Values of sum_{|alpha| <= s} B^alpha f_alpha at ``z``."""
    total = 0
    for alpha, f in fs.items():
        if sum(alpha) > s:
            raise ValueError(f"window index {alpha} exceeds level {s}")
        total = total + poly_bargmann(alpha, f).evaluate(z)
    return total


# -- STFT matrix elements ----------------------------------------------------

def stft_1d(xi, x, Db: int, Da: int, phase: bool = True) -> np.ndarray:
    """``<h_b, pi_(xi, x) h_a>`` for b <= Db, a <= Da; shape (N, Db+1, Da+1).

    With ``phase=False`` the factor e^{-i pi x xi} is omitted.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    x = np.atleast_1d(np.asarray(x, dtype=float))
    u = np.sqrt(np.pi) * (x + 1j * xi)
    r2 = np.abs(u) ** 2
    b = np.arange(Db + 1)[None, :, None]
    a = np.arange(Da + 1)[None, None, :]
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    d = hi - lo
    R2 = r2[:, None, None]
    L = eval_genlaguerre(lo, d, R2)
    absu = np.abs(u)[:, None, None]
    theta = np.angle(u)[:, None, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        logmag = 0.5 * (gammaln(lo + 1) - gammaln(hi + 1)) + np.where(d == 0, 0.0, d * np.log(absu)) - R2 / 2
    mag = np.where((absu == 0) & (d > 0), 0.0, np.exp(np.where((absu == 0) & (d > 0), 0.0, logmag)))
    ang = np.where(b >= a, np.pi * d - d * theta, d * theta)
    val = L * mag * np.exp(1j * ang)
    if phase:
        val = val * np.exp(-1j * np.pi * x * xi)[:, None, None]
    return val


def stft_block(points, D: int, s: int, phase: bool = True) -> np.ndarray:
    """``<h_beta, pi_lambda h_alpha>`` for beta in N_D, alpha in N_s.

    ``points`` has shape (N, 2n) in (xi, x) order.  Returns an array of shape
    (N, |N_D|, |N_s|), indices in the graded order of :func:`multi_indices`.
    """
    P = np.atleast_2d(np.asarray(points, dtype=float))
    n = P.shape[1] // 2
    betas = np.array(multi_indices(n, D).elements)
    alphas = np.array(multi_indices(n, s).elements)
    out = np.ones((P.shape[0], len(betas), len(alphas)), dtype=complex)
    for l in range(n):
        K = stft_1d(P[:, l], P[:, n + l], D, s, phase=phase)
        out *= K[:, betas[:, l][:, None], alphas[:, l][None, :]]
    return out


def stft_matrix_element(beta, alpha, lam) -> complex:
    """``<h_beta, pi_lambda h_alpha>`` from the closed form."""
    lam = lam if isinstance(lam, TFPoint) else TFPoint.from_vector(lam)
    beta, alpha = tuple(beta), tuple(alpha)
    val = 1 + 0j
    for l in range(lam.n):
        K = stft_1d(lam.xi[l], lam.x[l], beta[l], alpha[l])
        val *= K[0, beta[l], alpha[l]]
    return complex(val)


def stft_matrix_element_leibniz(beta, alpha, lam) -> complex:
    """Same element through the polyanalytic transform.

    ``<h_beta, pi_(xi, x) h_alpha> = (-1)^{|alpha|+|beta|} e^{-i pi x.xi - pi |w|^2/2} B^alpha h_beta(w)``
    with ``w = x - i xi``.  The sign reflects the positive-``c_m`` Hermite
    normalisation.
    """
    lam = lam if isinstance(lam, TFPoint) else TFPoint.from_vector(lam)
    beta, alpha = tuple(beta), tuple(alpha)
    x, xi = np.asarray(lam.x), np.asarray(lam.xi)
    w = x - 1j * xi
    f = HermiteCoeffs.basis(beta)
    val = poly_bargmann(alpha, f).evaluate(w if lam.n > 1 else w[0])
    sign = (-1) ** (sum(alpha) + sum(beta))
    return complex(sign * np.exp(-1j * np.pi * np.dot(x, xi) - np.pi * np.sum(np.abs(w) ** 2) / 2) * val)


# -- norms --------------------------------------------------------------------

def fock_l2_norm(F: FockPoly, k: float | None = None) -> float:
    """(int |F|^2 e^{-pi k |z|^2})^{1/2} from the monomial norm table."""
    k = F.k if k is None else k
    table = np.array([monomial_norm_sq(b, k) for b in F.index.elements])
    return float(math.sqrt(np.sum(np.abs(F.coeffs) ** 2 * table)))


def _sup_radius(F: FockPoly, k: float, floor: float) -> float:
    """Radius beyond which |F|^2 e^{-pi k r^2} < floor, from |F| <= C max(1, r)^D."""
    C = float(np.sum(np.abs(F.coeffs)))
    if C == 0:
        return 0.0
    deg = F.D
    r = max(1.0, math.sqrt(deg / (math.pi * k)))
    while 2 * math.log(C) + 2 * deg * math.log(max(r, 1.0)) - math.pi * k * r * r >= math.log(floor):
        r *= 1.25
    return r


def fock_sup_norm(F: FockPoly, k: float | None = None, seed: int = 0) -> float:
    """sup_z |F(z)|^2 e^{-pi k |z|^2}.

    The search is confined to the ball outside of which the coefficient bound
    already lies under the best value seen; inside it a scrambled Sobol
    sample seeds local L-BFGS-B refinements.
    """
    k = F.k if k is None else k
    n = F.n

    def objective(v):
        z = v[:n] + 1j * v[n:]
        val = abs(F.evaluate(z if n > 1 else z[0])) ** 2
        return -float(val * math.exp(-math.pi * k * float(np.sum(np.abs(z) ** 2))))

    best = -objective(np.zeros(2 * n))
    probe = max(best, 1e-300)
    R = _sup_radius(F, k, probe)
    if R == 0:
        return 0.0
    sampler = qmc.Sobol(d=2 * n, scramble=True, seed=seed)
    pts = (sampler.random(2 ** (9 + n)) * 2 - 1) * R
    vals = np.array([-objective(p) for p in pts])
    order = np.argsort(-vals)[:12]
    best = max(best, float(vals.max()))
    for idx in order:
        res = optimize.minimize(objective, pts[idx], method="L-BFGS-B", bounds=[(-R, R)] * (2 * n))
        best = max(best, -float(res.fun))
    return best
