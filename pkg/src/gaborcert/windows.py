"""Hermite windows, Gaussian windows and time-frequency shifts on R^n.

Hermite functions use the normalisation with a positive leading constant:

    h_m(t) = c_m e^{pi t^2} d^m/dt^m e^{-2 pi t^2},   c_m > 0,

which equals ``(-1)^m`` times the physicists' Hermite function scaled to
``e^{-pi t^2}``.  Values come from the normalised three-term recurrence in
``x = sqrt(2 pi) t``; the Rodrigues form is only used as a test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import roots_hermite

from .errors import NotInSiegelHalfSpace

__all__ = [
    "hermite_eval",
    "hermite_eval_multi",
    "hermite_table",
    "HermiteWindow",
    "GaussianWindow",
    "gaussian_eval",
    "TFPoint",
    "tf_shift",
    "integrate_gaussian",
    "inner_product",
    "l2_norm",
]

_SQRT2PI = math.sqrt(2 * math.pi)
_RESCALE = 1e150


def hermite_table(D: int, t) -> np.ndarray:
    """Array of shape ``(D+1,) + shape(t)`` holding h_0..h_D at ``t``.

    The recurrence runs on ``h_m / h_0`` with periodic rescaling and the
    Gaussian is applied at the end in log-magnitude, so large ``|t|`` neither
    overflows the polynomial part nor underflows before cancellation.
    """
    t = np.asarray(t, dtype=float)
    x = _SQRT2PI * t
    out = np.empty((D + 1,) + t.shape)
    logscale = np.zeros(t.shape)
    prev = np.zeros(t.shape)
    cur = np.ones(t.shape)
    base = 0.25 * math.log(2.0) - math.pi * t * t

    def emit(m, v):
        with np.errstate(divide="ignore", over="ignore", under="ignore"):
            mag = np.log(np.abs(v)) + logscale + base
            out[m] = np.where(v == 0, 0.0, np.sign(v) * np.exp(mag))

    emit(0, cur)
    for m in range(D):
        nxt = -math.sqrt(2.0 / (m + 1)) * x * cur - math.sqrt(m / (m + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE
        if np.any(big):
            f = np.where(big, _RESCALE, 1.0)
            cur = cur / f
            prev = prev / f
            logscale = logscale + np.log(f)
        emit(m + 1, cur)
    return out


def hermite_eval(m: int, t):
    """Normalised Hermite function h_m at real ``t`` (scalar or array)."""
    if m < 0:
        raise ValueError("level must be nonnegative")
    v = hermite_table(m, t)[m]
    return float(v) if np.ndim(v) == 0 else v


def hermite_eval_multi(alpha, t):
    """h_alpha(t) = prod_i h_{alpha_i}(t_i); ``t`` has trailing axis n."""
    alpha = tuple(int(a) for a in alpha)
    t = np.asarray(t, dtype=float)
    if t.shape[-1] != len(alpha):
        raise ValueError(f"expected points with {len(alpha)} coordinates")
    val = np.ones(t.shape[:-1])
    for i, a in enumerate(alpha):
        val = val * hermite_table(a, t[..., i])[a]
    return float(val) if np.ndim(val) == 0 else val


@dataclass(frozen=True)
class HermiteWindow:
    alpha: tuple

    def __post_init__(self):
        if any(a < 0 for a in self.alpha):
            raise ValueError("multi-index entries must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.alpha)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.n == 1 and (t.ndim == 0 or t.shape[-1] != 1):
            return hermite_eval(self.alpha[0], t)
        return hermite_eval_multi(self.alpha, t)


def _validate_siegel(Omega) -> np.ndarray:
    Om = np.atleast_2d(np.asarray(Omega, dtype=complex))
    if Om.shape[0] != Om.shape[1]:
        raise NotInSiegelHalfSpace("matrix must be square")
    if np.max(np.abs(Om - Om.T)) > 1e-14:
        raise NotInSiegelHalfSpace("matrix must be symmetric")
    ev = np.linalg.eigvalsh((Om.imag + Om.imag.T) / 2)
    if ev.min() <= 0:
        raise NotInSiegelHalfSpace("imaginary part must be positive definite")
    return Om


@dataclass(frozen=True, eq=False)
class GaussianWindow:
    """g_Omega(t) = conj(exp(pi i t^T Omega t)) for Omega in the Siegel half space."""

    Omega: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "Omega", _validate_siegel(self.Omega))

    @property
    def n(self) -> int:
        return self.Omega.shape[0]

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.n == 1 and (t.ndim == 0 or t.shape[-1] != 1):
            t = t[..., None]
        quad = np.einsum("...i,ij,...j->...", t, self.Omega, t)
        return np.conj(np.exp(1j * np.pi * quad))


def gaussian_eval(Omega, t):
    return GaussianWindow(Omega)(t)


@dataclass(frozen=True)
class TFPoint:
    """A time-frequency point lambda = (xi, x)."""

    xi: tuple
    x: tuple

    def __post_init__(self):
        xi = tuple(float(v) for v in np.atleast_1d(self.xi))
        x = tuple(float(v) for v in np.atleast_1d(self.x))
        if len(xi) != len(x):
            raise ValueError("xi and x must have the same length")
        if not all(math.isfinite(v) for v in xi + x):
            raise ValueError("time-frequency point must be finite")
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "x", x)

    @classmethod
    def from_vector(cls, v) -> "TFPoint":
        v = np.asarray(v, dtype=float)
        n = v.shape[0] // 2
        return cls(tuple(v[:n]), tuple(v[n:]))

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def z(self) -> np.ndarray:
        return np.asarray(self.x) + 1j * np.asarray(self.xi)

    def __neg__(self):
        return TFPoint(tuple(-v for v in self.xi), tuple(-v for v in self.x))


def tf_shift(lam: TFPoint, f) -> Callable:
    """(pi_lambda f)(t) = e^{2 pi i xi.t} f(t - x), returned as a closure.

    ``f`` may be a callable or any object with an ``evaluate(t)`` method
    (e.g. Hermite coefficient vectors); evaluation is lazy.
    """
    g = f.evaluate if hasattr(f, "evaluate") else f
    xi = np.asarray(lam.xi)
    x = np.asarray(lam.x)

    def shifted(t):
        t = np.asarray(t, dtype=float)
        if lam.n == 1 and (t.ndim == 0 or t.shape[-1] != 1):
            return np.exp(2j * np.pi * xi[0] * t) * g(t - x[0])
        return np.exp(2j * np.pi * (t @ xi)) * g(t - x)

    return shifted


def _nodes(count: int):
    u, w = roots_hermite(count)
    t = u / _SQRT2PI
    with np.errstate(over="ignore"):
        W = np.exp(np.log(w) + u * u) / _SQRT2PI
    return t, W


def integrate_gaussian(F: Callable, n: int = 1, center=0.0, start: int = 32,
                       max_nodes: int = 256, tol: float = 1e-12):
    """Integral of ``F`` over R^n for integrands of the form poly x e^{-2 pi |t|^2}.

    Gauss-Hermite nodes are rescaled to the weight e^{-2 pi t^2} (shifted to
    ``center``) and the node count is doubled until two successive estimates
    agree to ``tol``.  Returns ``(value, nodes_used)``.
    """
    center = np.broadcast_to(np.asarray(center, dtype=float), (n,))
    prev = None
    count = start
    while True:
        t, W = _nodes(count)
        if n == 1:
            val = np.sum(W * F(t + center[0]))
        else:
            grids = np.meshgrid(*([t] * n), indexing="ij")
            pts = np.stack([g + c for g, c in zip(grids, center)], axis=-1)
            weights = np.ones_like(grids[0])
            for g in np.meshgrid(*([W] * n), indexing="ij"):
                weights = weights * g
            val = np.sum(weights * F(pts))
        if prev is not None and abs(val - prev) < tol * max(1.0, abs(val)):
            return val, count
        if count >= max_nodes:
            return val, count
        prev = val
        count *= 2


def inner_product(f: Callable, g: Callable, n: int = 1, center=0.0, **kw):
    """(f, g) = int f conj(g) by adaptive Gaussian quadrature."""
    val, _ = integrate_gaussian(lambda t: f(t) * np.conj(g(t)), n=n, center=center, **kw)
    return val


def l2_norm(f: Callable, n: int = 1, center=0.0, **kw) -> float:
    return float(math.sqrt(abs(inner_product(f, f, n=n, center=center, **kw))))
