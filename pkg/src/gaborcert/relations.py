"""Integer-relation detection with a three-valued, certified outcome.

Given complex numbers ``v_1..v_m`` (or several such rows sharing one index
set) we look for one integer vector ``a`` with ``sum a_i v_i = 0`` in every
row, real and imaginary parts alike.

* Exact mode: all inputs are :class:`~gaborcert.exact.Surd`.  The
  coefficient vectors over the radicals sqrt(m) are rational and the square
  roots are linearly independent over Q(i), so the relation module is the
  rational kernel of a small matrix.  This is complete; no height bound is
  involved.
* Numeric mode: LLL on the embedding ``[I | round(S*X)]``.  A reduced row
  whose leading block satisfies the residual test is a relation; otherwise the
  smallest Gram-Schmidt norm of the reduced basis bounds every embedded vector
  from below and, when large enough, proves that no ``a`` with
  ``max|a_i| <= H`` has a residual below ``tau_cert``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from .exact import Surd, rational_kernel
from .lll import lll_reduce

__all__ = [
    "RELATION_FOUND",
    "NO_RELATION",
    "INCONCLUSIVE",
    "RelationVerdict",
    "integer_relation",
    "relation_search",
    "DEFAULT_HEIGHT",
    "DEFAULT_PRECISION",
]

RELATION_FOUND = "RelationFound"
NO_RELATION = "NoRelationUpToHeight"
INCONCLUSIVE = "Inconclusive"

DEFAULT_HEIGHT = 10**6
DEFAULT_PRECISION = 256
GUARD_BITS = 16


@dataclass(frozen=True)
class RelationVerdict:
    kind: str
    certificate: tuple | None
    height: int | None
    residual: float | None
    precision: int
    mode: str
    tau_cert: float | None = None
    residual_doubled: float | None = None
    detail: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.kind == RELATION_FOUND

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "certificate": list(self.certificate) if self.certificate is not None else None,
            "height": self.height,
            "residual": self.residual,
            "residual_doubled_precision": self.residual_doubled,
            "tau_cert": self.tau_cert,
            "precision_bits": self.precision,
            "mode": self.mode,
            "detail": self.detail,
        }


def _as_rows(values) -> list[list]:
    rows = list(values)
    if rows and not isinstance(rows[0], (list, tuple)):
        rows = [rows]
    return [list(r) for r in rows]


def _all_exact(rows) -> bool:
    return all(isinstance(x, Surd) for r in rows for x in r)


def _exact_relation(rows, H) -> RelationVerdict:
    m = len(rows[0])
    radicals = sorted({rad for r in rows for x in r for rad in x.radicals()})
    lin: list[list[Fraction]] = []
    for r in rows:
        coeffs = [x.coefficient_rows(radicals) for x in r]
        for t in range(2 * len(radicals)):
            lin.append([coeffs[i][t] for i in range(m)])
    kernel = rational_kernel(lin, m)
    if not kernel:
        return RelationVerdict(
            kind=NO_RELATION, certificate=None, height=None, residual=None,
            precision=0, mode="exact",
            detail="rational kernel is trivial: no relation of any height",
        )
    reduced = lll_reduce(kernel).basis
    best = min(reduced, key=lambda v: (max(abs(x) for x in v), sum(x * x for x in v)))
    if next(x for x in best if x) < 0:
        best = [-x for x in best]
    for r in rows:
        total = sum((x * a for x, a in zip(r, best)), Surd())
        if not total.is_zero():
            raise AssertionError("exact certificate failed substitution")
    return RelationVerdict(
        kind=RELATION_FOUND, certificate=tuple(best), height=H, residual=0.0,
        precision=0, mode="exact", residual_doubled=0.0,
        detail=f"exact kernel of rank {len(kernel)}",
        extra={"kernel_rank": len(kernel)},
    )


def _numeric_rows(rows, prec):
    """Real rows (re, im of each complex row) as mpf at ``prec`` bits."""
    out = []
    with mpmath.workprec(prec):
        for r in rows:
            vals = [x.to_mp(prec) if isinstance(x, Surd) else mpmath.mpmathify(x) for x in r]
            out.append([mpmath.re(v) for v in vals])
            out.append([mpmath.im(v) for v in vals])
    return out


def _residual(real_rows, a, prec):
    with mpmath.workprec(prec):
        worst = mpmath.mpf(0)
        for r in real_rows:
            worst = max(worst, abs(mpmath.fsum(x * c for x, c in zip(r, a))))
        return worst


def relation_search(
    values,
    H: int = DEFAULT_HEIGHT,
    p: int = DEFAULT_PRECISION,
    mode: str = "auto",
    recompute: Callable[[int], Sequence] | None = None,
) -> RelationVerdict:
    """Search for one integer vector annihilating every row of ``values``.

    ``values`` is a list of complex numbers or a list of such lists (all of
    the same length).  ``recompute(prec)`` may return the same rows at a
    higher precision; relations found numerically are re-checked there.
    """
    rows = _as_rows(values)
    if not rows or not rows[0]:
        raise ValueError("need at least one value")
    m = len(rows[0])
    if any(len(r) != m for r in rows):
        raise ValueError("rows must share one index set")
    if H < 1:
        raise ValueError("height bound must be at least 1")
    if mode not in ("auto", "exact", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    exact_ok = _all_exact(rows)
    if mode == "exact" and not exact_ok:
        raise ValueError("exact mode needs exact (surd) inputs")
    if exact_ok and mode != "numeric":
        return _exact_relation(rows, H)
    return _numeric_relation(rows, H, p, recompute)


def integer_relation(v, H: int = DEFAULT_HEIGHT, p: int = DEFAULT_PRECISION, mode: str = "auto", recompute=None):
    """Integer relation among a single list of complex numbers."""
    return relation_search([list(v)], H=H, p=p, mode=mode, recompute=recompute)


def _numeric_relation(rows, H, p, recompute) -> RelationVerdict:
    m = len(rows[0])
    real_rows = _numeric_rows(rows, p)
    with mpmath.workprec(p):
        scales = [max(abs(x) for x in r) for r in real_rows]
        vmax = max(scales)
    if vmax == 0:
        cert = (1,) + (0,) * (m - 1)
        return RelationVerdict(RELATION_FOUND, cert, H, 0.0, p, "numeric", residual_doubled=0.0,
                               detail="all values vanish")
    # columns that vanish identically give unit-vector relations
    for i in range(m):
        if all(r[i] == 0 for r in real_rows):
            cert = tuple(int(j == i) for j in range(m))
            return RelationVerdict(RELATION_FOUND, cert, H, 0.0, p, "numeric", residual_doubled=0.0,
                                   detail=f"value {i} vanishes")
    active = [(r, s) for r, s in zip(real_rows, scales) if s != 0]
    q = p - math.ceil(math.log2(m * H)) - GUARD_BITS
    if q < 8:
        return RelationVerdict(INCONCLUSIVE, None, H, None, p, "numeric",
                               detail="precision too low for the requested height")
    S = mpmath.mpf(2) ** q
    with mpmath.workprec(p):
        cols = [[int(mpmath.nint(S * x / s)) for x in r] for r, s in active]
    basis = [[int(i == j) for j in range(m)] + [c[i] for c in cols] for i in range(m)]
    red = lll_reduce(basis)
    eps_rel = mpmath.mpf(2) ** (-(p // 3))

    def accept(a):
        amax = max(abs(x) for x in a)
        if amax == 0 or amax > H:
            return None
        res = _residual(real_rows, a, p)
        if res <= eps_rel * vmax * amax:
            return res
        return None

    candidates = sorted(red.basis, key=lambda v: sum(x * x for x in v))
    for vec in candidates:
        a = vec[:m]
        res = accept(a)
        if res is None:
            continue
        if next(x for x in a if x) < 0:
            a = [-x for x in a]
        res2 = None
        if recompute is not None:
            res2 = _residual(_numeric_rows(_as_rows(recompute(2 * p)), 2 * p), a, 2 * p)
        else:
            res2 = _residual(_numeric_rows(rows, 2 * p), a, 2 * p)
        shrink_ok = res == 0 or res2 <= max(res * mpmath.mpf(2) ** (-(p // 2)), eps_rel**2 * vmax * H)
        if recompute is not None and not shrink_ok:
            continue
        return RelationVerdict(RELATION_FOUND, tuple(a), H, float(res), p, "numeric",
                               residual_doubled=float(res2),
                               detail="LLL candidate verified by substitution")
    r = len(active)
    gs_min = min(red.gs_norms_sq())
    bound = m * H * H + r * (Fraction(m * H, 2) + 1) ** 2
    tau = float(1 / S)
    if gs_min > bound:
        return RelationVerdict(NO_RELATION, None, H, None, p, "numeric", tau_cert=tau,
                               detail="reduced-basis Gram-Schmidt bound excludes every vector of height <= H",
                               extra={"gs_min": math.sqrt(gs_min)})
    return RelationVerdict(INCONCLUSIVE, None, H, None, p, "numeric", tau_cert=tau,
                           detail="LLL gap too small to certify; raise precision",
                           extra={"gs_min": math.sqrt(gs_min)})
