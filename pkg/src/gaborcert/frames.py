"""Finite-section frame and Riesz estimates, and the density+transcendence criterion.

Numbers produced here are estimates.  A frame-operator section compresses the
frame operator to the Hermite span ``N_D`` and sums over lattice points with
``|lambda| <= R``; the smallest eigenvalue of that matrix is neither an upper
nor a lower bound for the true lower frame bound.  Every result therefore
carries its (R, D) ladder and a bound on the omitted lattice terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .errors import TruncationCapExceeded
from .exact import Surd
from .fock import stft_block
from .lattice import (
    Lattice,
    complexify,
    covolume,
    covolume_exact,
    enumerate_points,
    multi_indices,
    symplectic_dual,
)
from .relations import DEFAULT_HEIGHT, DEFAULT_PRECISION, INCONCLUSIVE
from .transcendence import NOT_TRANSCENDENTAL, TRANSCENDENTAL, TranscendenceVerdict, is_transcendental

__all__ = [
    "GaborSystem",
    "BoundsEstimate",
    "CriterionVerdict",
    "frame_operator_section",
    "frame_bounds_estimate",
    "riesz_gram_section",
    "riesz_bounds_estimate",
    "criterion_verdict",
    "entry_bound",
    "section_tail_bound",
    "density_threshold",
    "DEFAULT_LADDER",
    "SMALL_LADDER",
    "default_ladder",
    "CERTIFIED",
    "NOT_CERTIFIED",
]

DEFAULT_LADDER = ((4, 10), (6, 20), (8, 30))
# the n = 1 ladder is far too large in 2n = 4 real dimensions
SMALL_LADDER = ((2, 6), (2.5, 8), (3, 10))
MAX_SECTION = 20000
MAX_STFT_ENTRIES = 4 * 10**7
CERTIFIED = "CertifiedUpToHeight"
NOT_CERTIFIED = "NotCertifiedByCriterion"


@dataclass(frozen=True, eq=False)
class GaborSystem:
    lattice: Lattice
    s: int = 0
    mode: str = "multiwindow"
    R: float = 6.0
    D: int = 20

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("window level s must be nonnegative")
        if self.R <= 0 or self.D <= 0:
            raise ValueError("truncation radius and degree must be positive")
        if self.s > self.D:
            raise ValueError("N_s must be contained in N_D (need s <= D)")
        if self.mode not in ("multiwindow", "super"):
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def n(self) -> int:
        return self.lattice.n

    def with_truncation(self, R, D) -> "GaborSystem":
        return GaborSystem(self.lattice, self.s, self.mode, R, D)


def _poly_bound_1d(b: int, a: int, r: np.ndarray) -> np.ndarray:
    """Upper bound for |<h_b, pi h_a>| e^{|u|^2/2} as a polynomial in r = |u|.

    Uses |L_m^{(d)}(x)| <= sum_j C(m+d, m-j) x^j / j!.
    """
    lo, hi = min(a, b), max(a, b)
    d = hi - lo
    pref = math.exp(0.5 * (math.lgamma(lo + 1) - math.lgamma(hi + 1)))
    acc = np.zeros_like(r)
    for j in range(lo + 1):
        acc = acc + math.comb(hi, lo - j) * r ** (2 * j) / math.factorial(j)
    return pref * r**d * acc


def entry_bound(beta, alpha, lam_norm) -> np.ndarray:
    """Bound p(|lambda|) e^{-pi |lambda|^2 / 2} on |<h_beta, pi_lambda h_alpha>|.

    The polynomial has degree |alpha| + |beta| in |lambda|.
    """
    r = math.sqrt(math.pi) * np.asarray(lam_norm, dtype=float)
    val = np.exp(-r * r / 2)
    for b, a in zip(beta, alpha):
        val = val * _poly_bound_1d(b, a, r)
    return val


def _trace_density(n: int, D: int, s: int, r: np.ndarray) -> np.ndarray:
    """Bound on sum_{beta in N_D, alpha in N_s} |<h_beta, pi_lambda h_alpha>|^2 at |lambda| = r."""
    out = np.zeros_like(r)
    for beta in multi_indices(n, D).elements:
        for alpha in multi_indices(n, s).elements:
            out = out + entry_bound(beta, alpha, r) ** 2
    return out


def default_ladder(n: int):
    return DEFAULT_LADDER if n == 1 else SMALL_LADDER


def section_tail_bound(L: Lattice, R: float, D: int, s: int, extra: float = 3.0) -> float:
    """Bound on the trace (hence the norm) of the omitted lattice terms.

    Points with R < |lambda| <= R + extra are enumerated; beyond that the
    count of points in a ball of radius r is bounded by vol(B(r + delta)) /
    covolume, delta the diameter of the generator parallelepiped, and the
    per-point bound is summed over unit shells.
    """
    n = L.n
    d = 2 * n
    R2 = R + extra
    pts = enumerate_points(L, R2)
    norms = np.linalg.norm(pts, axis=1)
    shell = norms[norms > R * (1 + 1e-12)]
    total = float(np.sum(_trace_density(n, D, s, shell))) if shell.size else 0.0
    G = L.gens
    delta = float(np.sum(np.linalg.norm(G, axis=0)))
    covol = abs(float(np.linalg.det(G)))
    unit_ball = math.pi ** (d / 2) / math.gamma(d / 2 + 1)
    r = R2
    for _ in range(10000):
        count = unit_ball * (r + 1 + delta) ** d / covol
        f = float(_trace_density(n, D, s, np.array([r]))[0])
        term = count * f
        total += term
        if term < 1e-300 or (term < 1e-30 * max(total, 1e-300) and r > math.sqrt(2 * D / math.pi) + 2):
            break
        r += 1.0
    return total


def frame_operator_section(sys: GaborSystem, points=None) -> np.ndarray:
    """S_{beta gamma} = sum_{|lambda| <= R} sum_{alpha in N_s} <h_beta, pi h_alpha><pi h_alpha, h_gamma>."""
    if points is None:
        points = enumerate_points(sys.lattice, sys.R)
    nD = len(multi_indices(sys.n, sys.D))
    if nD > MAX_SECTION:
        raise TruncationCapExceeded(f"section of size {nD} exceeds {MAX_SECTION}")
    work = len(points) * nD * len(multi_indices(sys.n, sys.s))
    if work > MAX_STFT_ENTRIES:
        raise TruncationCapExceeded(f"{len(points)} points x {nD} degrees needs {work} STFT entries (cap {MAX_STFT_ENTRIES})")
    V = stft_block(points, sys.D, sys.s)
    S = np.einsum("pba,pca->bc", V, np.conj(V))
    return (S + S.conj().T) / 2


@dataclass
class BoundsEstimate:
    A_est: float
    B_est: float
    tail_bound: float
    ladder: list = field(default_factory=list)
    monotonicity: list = field(default_factory=list)
    kind: str = "frame"

    @property
    def drift(self) -> float:
        """Relative spread (max - min) / max of the lower estimate along the ladder."""
        A = [r["A"] for r in self.ladder]
        return (max(A) - min(A)) / max(A) if A and max(A) > 0 else float("inf")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "A_est": self.A_est,
            "B_est": self.B_est,
            "tail_bound": self.tail_bound,
            "relative_drift": self.drift,
            "ladder": self.ladder,
            "monotonicity": self.monotonicity,
        }


def frame_bounds_estimate(sys: GaborSystem, ladder=None) -> BoundsEstimate:
    """Extremal eigenvalues of the frame-operator section along an (R, D) ladder."""
    if ladder is None:
        ladder = default_ladder(sys.n)
    rungs = []
    for R, D in ladder:
        sub = sys.with_truncation(R, D)
        pts = enumerate_points(sys.lattice, R)
        ev = np.linalg.eigvalsh(frame_operator_section(sub, pts))
        tail = section_tail_bound(sys.lattice, R, D, sys.s)
        rungs.append({"R": R, "D": D, "points": int(len(pts)), "A": float(max(ev[0], 0.0)),
                      "B": float(ev[-1]), "lambda_min_raw": float(ev[0]), "tail_bound": tail})
    log = []
    for prev, cur in zip(rungs, rungs[1:]):
        dA = cur["A"] - prev["A"]
        dB = cur["B"] - prev["B"]
        log.append(f"(R,D)=({prev['R']},{prev['D']})->({cur['R']},{cur['D']}): "
                   f"A {'up' if dA > 0 else 'down'} {abs(dA):.3e}, B {'up' if dB > 0 else 'down'} {abs(dB):.3e}")
    last = rungs[-1]
    return BoundsEstimate(last["A"], last["B"], last["tail_bound"], rungs, log)


def riesz_gram_section(L: Lattice, s: int, R: float, points=None) -> np.ndarray:
    """Gram matrix <pi_lambda h_alpha, pi_mu h_beta> over |lambda|, |mu| <= R, alpha, beta in N_s.

    Rows and columns are ordered lattice-point-major.  Entries use
    pi_mu^* pi_lambda = e^{2 pi i (xi - eta).y} pi_{lambda - mu}.
    """
    if points is None:
        points = enumerate_points(L, R)
    P = np.atleast_2d(points)
    N, d = P.shape
    n = d // 2
    m = len(multi_indices(n, s))
    if N * m > MAX_SECTION:
        raise TruncationCapExceeded(f"Gram section of size {N * m} exceeds {MAX_SECTION}")
    diff = (P[:, None, :] - P[None, :, :]).reshape(-1, d)   # lambda - mu
    K = stft_block(diff, s, s).reshape(N, N, m, m)          # <h_b, pi_{lambda-mu} h_a>
    xi_l, xi_m, y = P[:, None, :n], P[None, :, :n], P[None, :, n:]
    phase = np.exp(2j * np.pi * np.sum((xi_l - xi_m) * y, axis=-1))   # (N, N)
    # <pi_lambda h_a, pi_mu h_b> = <pi_mu^* pi_lambda h_a, h_b> = phase * conj(<h_b, pi_{lambda-mu} h_a>)
    G = phase[:, :, None, None] * np.conj(K).transpose(0, 1, 3, 2)
    G = G.transpose(0, 2, 1, 3).reshape(N * m, N * m)
    return (G + G.conj().T) / 2


def riesz_bounds_estimate(L: Lattice, s: int, radii=(4, 6, 8)) -> BoundsEstimate:
    # a principal section of the Gram matrix drops no terms, so there is no
    # tail; by interlacing its lambda_min can only overestimate the full one
    rungs = []
    for R in radii:
        pts = enumerate_points(L, R)
        ev = np.linalg.eigvalsh(riesz_gram_section(L, s, R, pts))
        rungs.append({"R": R, "D": s, "points": int(len(pts)), "A": float(max(ev[0], 0.0)),
                      "B": float(ev[-1]), "lambda_min_raw": float(ev[0]), "tail_bound": 0.0})
    log = [f"R={a['R']}->{b['R']}: lambda_min {'up' if b['A'] > a['A'] else 'down'} {abs(b['A'] - a['A']):.3e}"
           for a, b in zip(rungs, rungs[1:])]
    last = rungs[-1]
    return BoundsEstimate(last["A"], last["B"], 0.0, rungs, log, kind="riesz")


def density_threshold(n: int, s: int, mode: str) -> Fraction:
    if mode == "multiwindow":
        return Fraction((s + 1) ** n, math.factorial(n))
    if mode == "super":
        return Fraction(math.factorial(n), (n + s) ** n)
    raise ValueError(f"unknown mode {mode!r}")


def _less_than(L: Lattice, bound: Fraction) -> bool:
    exact = covolume_exact(L)
    if exact is not None:
        if isinstance(exact, Fraction):
            return exact < bound
        return exact < Surd.rational(bound)
    with mpmath.workprec(L.prec):
        return bool(covolume(L) < mpmath.mpf(bound.numerator) / bound.denominator)


@dataclass
class CriterionVerdict:
    mode: str
    n: int
    s: int
    covolume: float
    threshold: Fraction
    density_ok: bool
    transcendence: TranscendenceVerdict
    overall: str
    alt_threshold: Fraction | None
    alt_density_ok: bool | None
    alt_threshold_note: str

    @property
    def height(self):
        return self.transcendence.height

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "n": self.n,
            "s": self.s,
            "covolume": self.covolume,
            "threshold": str(self.threshold),
            "density_ok": self.density_ok,
            "alt_threshold": None if self.alt_threshold is None else str(self.alt_threshold),
            "alt_density_ok": self.alt_density_ok,
            "alt_threshold_note": self.alt_threshold_note,
            "transcendence": self.transcendence.to_dict(),
            "overall": self.overall,
            "height": self.height,
        }


def criterion_verdict(L: Lattice, s: int = 0, mode: str = "multiwindow", H: int = DEFAULT_HEIGHT,
                      p: int = DEFAULT_PRECISION, transcendence_mode: str = "auto") -> CriterionVerdict:
    """Density plus transcendence: sufficient, never necessary.

    Multiwindow: covolume < (s+1)^n / n! and the torus of Lambda_C is
    transcendental.  Super: covolume < n! / (n+s)^n and the torus of the
    complexified symplectic dual is transcendental.
    """
    n = L.n
    bound = density_threshold(n, s, mode)
    density_ok = _less_than(L, bound)
    if mode == "multiwindow":
        alt = Fraction(s**n, math.factorial(n))
        alt_ok = _less_than(L, alt)
        note = (f"stricter variant |Lambda| < s^n/n! = {alt} "
                f"{'holds' if alt_ok else 'fails'}; the default threshold is (s+1)^n/n!")
        target = complexify(L)
    else:
        alt, alt_ok = None, None
        note = "both statements of the theorem give n!/(n+s)^n in super mode"
        target = complexify(symplectic_dual(L))
    tv = is_transcendental(target, H=H, p=p, mode=transcendence_mode)
    if not density_ok or tv.overall == NOT_TRANSCENDENTAL:
        overall = NOT_CERTIFIED
    elif tv.overall == INCONCLUSIVE:
        overall = INCONCLUSIVE
    else:
        assert tv.overall == TRANSCENDENTAL
        overall = CERTIFIED
    return CriterionVerdict(mode, n, s, float(covolume(L)), bound, density_ok, tv, overall, alt, alt_ok, note)
