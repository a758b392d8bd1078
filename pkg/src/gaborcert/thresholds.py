"""Seshadri / pseudoeffective thresholds and finite-section jet numbers.

Under transcendence both thresholds equal ``(n! |Lambda|)^{1/n}``.  The
uniqueness numbers ``mu_k`` and interpolation numbers ``sigma_k`` are
estimated from singular values of jet-evaluation matrices.

Jets are taken in covariant form.  Row ``(lambda, alpha)`` of the matrix is
the functional

    F -> k^{-n/2} (alpha! (pi k)^{|alpha|})^{-1/2}
         d^alpha_w [ e^{-pi k conj(lambda).w - pi k |lambda|^2 / 2} F(lambda + w) ] at w = 0

and column ``beta`` is the orthonormal monomial of F^2_k.  At a single point
this spans the same conditions as the plain derivatives ``d^alpha F(lambda)``,
``|alpha| <= s`` (the two jet vectors differ by an invertible triangular
map), but the rows stay uniformly normalised over the lattice.  The entries
reduce to the STFT kernel at ``u = conj(sqrt(pi k) lambda)``, and the matrix
for weight ``k`` coincides with the weight-1 matrix of the lattice scaled by
``sqrt(k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .errors import TruncationCapExceeded
from .exact import Surd, parse_literal
from .fock import stft_1d
from .lattice import ComplexLattice, enumerate_points, multi_indices
from .relations import INCONCLUSIVE
from .transcendence import TRANSCENDENTAL

__all__ = [
    "ThresholdReport",
    "seshadri_transcendental",
    "JetNumberEstimate",
    "jet_evaluation_matrix",
    "jet_sigma_min",
    "uniqueness_number_estimate",
    "interpolation_number_estimate",
    "asymptotic_report",
    "UNIQUENESS_LADDER",
    "INTERPOLATION_RADII",
    "DECAY_EXPONENT",
]

UNIQUENESS_LADDER = (10, 20, 40, 80)
INTERPOLATION_RADII = (3.0, 4.5, 6.0, 7.5)
DECAY_EXPONENT = -0.25
MAX_ROWS = 12000


@dataclass
class ThresholdReport:
    n: int
    covolume: float
    epsilon0: float
    lambda0: float
    exact: str | None
    valid: bool | None
    transcendence: str | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "covolume": self.covolume,
            "epsilon0": self.epsilon0,
            "lambda0": self.lambda0,
            "exact_value": self.exact,
            "valid": self.valid,
            "transcendence": self.transcendence,
        }


def _exact_root(q: Fraction, n: int):
    """q^{1/n} as a Fraction or Surd when it is one, else None."""
    if n == 1:
        return q
    if n == 2:
        return Surd.sqrt(q)
    num = round(q.numerator ** (1 / n))
    den = round(q.denominator ** (1 / n))
    for a in (num - 1, num, num + 1):
        for b in (den - 1, den, den + 1):
            if a > 0 and b > 0 and Fraction(a, b) ** n == q:
                return Fraction(a, b)
    return None


def seshadri_transcendental(covol, n: int, verdict=None) -> ThresholdReport:
    """epsilon_0 = lambda_0 = (n! covol)^{1/n}, valid when the torus is transcendental.

    ``covol`` may be a literal (exact arithmetic) or a float.  ``verdict`` is
    an optional TranscendenceVerdict; without it the validity flag is None.
    """
    if n < 1:
        raise ValueError("n must be positive")
    exact_str = None
    if isinstance(covol, (str, int, Fraction, Surd)) and not isinstance(covol, bool):
        c = parse_literal(covol) if not isinstance(covol, Surd) else covol
        if c.is_rational():
            q = c.as_fraction()
            if q <= 0:
                raise ValueError("covolume must be positive")
            root = _exact_root(math.factorial(n) * q, n)
            if root is not None:
                exact_str = str(root)
                value = float(root)
            else:
                with mpmath.workprec(256):
                    value = float(mpmath.root(mpmath.mpf(math.factorial(n) * q.numerator) / q.denominator, n))
        else:
            value = float(mpmath.root(math.factorial(n) * c.to_mp(256), n))
        cv = float(c)
    else:
        cv = float(covol)
        if not cv > 0:
            raise ValueError("covolume must be positive")
        value = (math.factorial(n) * cv) ** (1.0 / n)
    valid = None if verdict is None else verdict.overall == TRANSCENDENTAL
    return ThresholdReport(n, cv, value, value, exact_str, valid,
                           None if verdict is None else verdict.overall)


def jet_evaluation_matrix(Lc: ComplexLattice, k: float, s: int, R: float, D: int, points=None) -> np.ndarray:
    """Covariant jet matrix: rows (lambda, alpha), |lambda| <= R, |alpha| <= s; columns |beta| <= D."""
    if not k > 0:
        raise ValueError("weight k must be positive")
    if points is None:
        points = enumerate_points(Lc, R) if R >= 0 else np.zeros((0, Lc.n), dtype=complex)
    Z = np.atleast_2d(np.asarray(points, dtype=complex))
    n = Lc.n
    alphas = np.array(multi_indices(n, s).elements)
    betas = np.array(multi_indices(n, D).elements)
    rows = Z.shape[0] * len(alphas)
    if rows > MAX_ROWS or len(betas) > MAX_ROWS:
        raise TruncationCapExceeded(f"jet matrix {rows} x {len(betas)} exceeds cap {MAX_ROWS}")
    if Z.shape[0] == 0:
        return np.zeros((0, len(betas)), dtype=complex)
    # u = conj(sqrt(pi k) lambda) = sqrt(pi) (x + i xi)
    U = np.conj(np.sqrt(k) * Z)
    out = np.ones((Z.shape[0], len(alphas), len(betas)), dtype=complex)
    sign = (-1.0) ** (alphas.sum(1)[:, None] + betas.sum(1)[None, :])
    for l in range(n):
        K = stft_1d(U[:, l].imag, U[:, l].real, D, s, phase=False)    # (N, D+1, s+1): [b, a]
        out *= K[:, betas[:, l][None, :], alphas[:, l][:, None]]
    out *= sign[None]
    return out.reshape(-1, len(betas))


@dataclass
class JetNumberEstimate:
    k: float
    kind: str
    value: int | None
    status: str
    evidence: list = field(default_factory=list)
    tol_rel: float = 1e-6
    saturated: bool = False

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "kind": self.kind,
            "value": self.value,
            "status": self.status,
            "saturated": self.saturated,
            "tol_relative": self.tol_rel,
            "evidence": self.evidence,
        }


def jet_sigma_min(J: np.ndarray, side: str) -> tuple[float, float]:
    """(relative smallest singular value, largest) for injectivity or surjectivity."""
    if J.size == 0:
        return 0.0, 0.0
    sv = np.linalg.svd(J, compute_uv=False)
    smax = float(sv[0])
    rows, cols = J.shape
    if side == "injective":
        if rows < cols:
            return 0.0, smax
        smin = float(sv[cols - 1])
    else:
        if rows > cols:
            return 0.0, smax
        smin = float(sv[rows - 1])
    return smin / smax if smax else 0.0, smax


def _slope(xs, ys) -> float:
    lx = np.log(np.asarray(xs, dtype=float))
    ly = np.log(np.maximum(np.asarray(ys, dtype=float), 1e-300))
    return float(np.polyfit(lx, ly, 1)[0])


def _classify(ladder_x, sig, tol: float) -> tuple[str, float]:
    """'fails', 'holds' or 'inconclusive' from a singular-value ladder.

    The property fails when the last value is below ``tol`` or the ladder
    decays like a power law steeper than DECAY_EXPONENT; it holds when the
    last value clears ``10 tol`` without such decay.
    """
    slope = _slope(ladder_x, sig) if len(sig) > 1 else 0.0
    last = sig[-1]
    if last < tol or slope < DECAY_EXPONENT:
        return "fails", slope
    if last > 10 * tol:
        return "holds", slope
    return "inconclusive", slope


def _uniqueness_radius(k: float, D: int) -> float:
    return math.sqrt(D / (math.pi * k)) + 4.0 / math.sqrt(k)


def uniqueness_number_estimate(Lc: ComplexLattice, k: float, ladder=UNIQUENESS_LADDER, tol: float = 1e-6,
                               s_max: int | None = None) -> JetNumberEstimate:
    """mu_k: one more than the largest s whose s-jets fail to determine F.

    For each s the covariant jet matrix over the lattice ball of radius
    ``sqrt(D/(pi k)) + 4/sqrt(k)`` is tested for injectivity on the degree-D
    span, for every D in ``ladder``.  Uniqueness gets stronger with s, so the
    scan stops at the first s where it holds.
    """
    if not k > 0:
        raise ValueError("weight k must be positive")
    if s_max is None:
        s_max = int(math.ceil(k * float(np.abs(np.linalg.det(Lc.realify().gens))))) + 2
    evidence = []
    for s in range(0, s_max + 1):
        sig = []
        for D in ladder:
            J = jet_evaluation_matrix(Lc, k, s, _uniqueness_radius(k, D), D)
            sig.append(jet_sigma_min(J, "injective")[0])
        verdict, slope = _classify(ladder, sig, tol)
        evidence.append({"s": s, "D": list(ladder), "sigma_min_rel": sig, "slope": slope, "uniqueness": verdict})
        if verdict == "holds":
            return JetNumberEstimate(k, "uniqueness", s, "estimated", evidence, tol)
        if verdict == "inconclusive":
            return JetNumberEstimate(k, "uniqueness", None, INCONCLUSIVE, evidence, tol)
    return JetNumberEstimate(k, "uniqueness", None, "saturated at tested range", evidence, tol, saturated=True)


def _interpolation_degree(rho: float) -> int:
    return int(math.ceil(2 * math.pi * rho * rho)) + 10


def interpolation_number_estimate(Lc: ComplexLattice, k: float, radii=INTERPOLATION_RADII, tol: float = 1e-6,
                                  s_max: int | None = None) -> JetNumberEstimate:
    """sigma_k: the largest s whose s-jets can be interpolated; -1 if none.

    For each s, the covariant jet matrix over lattice points with
    ``sqrt(k)|lambda| <= rho`` is tested for surjectivity onto the jet data
    (smallest singular value of the short side) with degree cap
    ``2 pi rho^2 + 10``, along the ladder of scaled radii ``rho``.
    Interpolation gets harder with s, so the scan stops at the first failure.
    """
    if not k > 0:
        raise ValueError("weight k must be positive")
    if s_max is None:
        s_max = int(math.ceil(k * float(np.abs(np.linalg.det(Lc.realify().gens))))) + 2
    evidence = []
    best = -1
    for s in range(0, s_max + 1):
        sig = []
        for rho in radii:
            J = jet_evaluation_matrix(Lc, k, s, rho / math.sqrt(k), _interpolation_degree(rho))
            sig.append(jet_sigma_min(J, "surjective")[0])
        verdict, slope = _classify(radii, sig, tol)
        evidence.append({"s": s, "rho": list(radii), "sigma_min_rel": sig, "slope": slope, "interpolation": verdict})
        if verdict == "fails":
            return JetNumberEstimate(k, "interpolation", best, "estimated", evidence, tol)
        if verdict == "inconclusive":
            return JetNumberEstimate(k, "interpolation", None, INCONCLUSIVE, evidence, tol)
        best = s
    return JetNumberEstimate(k, "interpolation", None, "saturated at tested range", evidence, tol, saturated=True)


def asymptotic_report(Lc: ComplexLattice, k_list, tol: float = 1e-6, threshold: float | None = None,
                      slack: float = 1e-9) -> dict:
    """Table of mu_k/k and sigma_k/k against lambda_0 = epsilon_0.

    The closed-form target assumes transcendence (automatic for n = 1).
    ``slack`` is the tolerance allowed in the one-sided checks.
    """
    ks = list(k_list)
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValueError("k-list must be increasing")
    n = Lc.n
    covol = float(abs(np.linalg.det(Lc.realify().gens)))
    target = threshold if threshold is not None else (math.factorial(n) * covol) ** (1.0 / n)
    rows = []
    for k in ks:
        mu = uniqueness_number_estimate(Lc, k, tol=tol)
        sg = interpolation_number_estimate(Lc, k, tol=tol)
        mu_ratio = None if mu.value is None else mu.value / k
        sg_ratio = None if sg.value is None else sg.value / k
        rows.append({
            "k": k,
            "mu": mu.value,
            "mu_status": mu.status,
            "mu_over_k": mu_ratio,
            "mu_check": None if mu_ratio is None else mu_ratio <= target + slack,
            "sigma": sg.value,
            "sigma_status": sg.status,
            "sigma_over_k": sg_ratio,
            "sigma_check": None if sg_ratio is None else sg_ratio <= target + slack,
            "mu_evidence": mu.evidence,
            "sigma_evidence": sg.evidence,
        })
    return {"n": n, "covolume": covol, "lambda0": target, "epsilon0": target, "rows": rows}
