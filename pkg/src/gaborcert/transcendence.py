"""Transcendence of the complex torus C^n / Lambda_C via minor tables.

For ``0 < k < n`` and ascending form indices ``P, Q`` in ``{1..n}`` with
``|P| + |Q| = 2k`` and ``|P| > |Q|``, the minor ``C^i_{P,Q}`` is the
determinant of the ``2k x 2k`` matrix whose row ``j`` is

    (e_{i_j,P_1}, ..., e_{i_j,P_p}, conj(e_{i_j,Q_1}), ..., conj(e_{i_j,Q_q}))

where ``e_{g,l}`` is coordinate ``l`` of generator ``g`` and ``i`` runs over
the ascending ``2k``-subsets of the ``2n`` generators.  The torus has no
proper positive-dimensional analytic subvariety iff, for every ``k``, no
nonzero integer vector annihilates the tables of all ``(P, Q)`` at once.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import BadFormIndex, PrecisionLoss, WrongDimension
from .exact import Surd, exact_det, parse_literal
from .lattice import ComplexLattice, complexify, homology_indices, make_lattice
from .relations import (
    DEFAULT_HEIGHT,
    DEFAULT_PRECISION,
    INCONCLUSIVE,
    NO_RELATION,
    RELATION_FOUND,
    RelationVerdict,
    integer_relation,
    relation_search,
)

__all__ = [
    "MinorTable",
    "minor_table",
    "form_indices",
    "simultaneous_relation",
    "TranscendenceVerdict",
    "is_transcendental",
    "n2_shortcut",
    "ProductLatticeCheck",
    "product_lattice_check",
    "GenericityReport",
    "genericity_sample",
    "NOT_TRANSCENDENTAL",
    "TRANSCENDENTAL",
]

NOT_TRANSCENDENTAL = "NotTranscendental"
TRANSCENDENTAL = "TranscendentalUpToHeight"


def _check_form(n, k, P, Q):
    P, Q = tuple(P), tuple(Q)
    if not 1 <= k < n:
        raise BadFormIndex(f"k must lie in [1, {n - 1}], got {k}")
    if len(P) + len(Q) != 2 * k or len(P) <= len(Q):
        raise BadFormIndex(f"need |P|+|Q| = {2 * k} and |P| > |Q|, got P={P}, Q={Q}")
    for idx in (P, Q):
        if any(not 1 <= x <= n for x in idx) or any(a >= b for a, b in zip(idx, idx[1:])):
            raise BadFormIndex(f"form index {idx} must be strictly ascending in 1..{n}")
    return P, Q


def form_indices(n: int, k: int) -> list[tuple[tuple, tuple]]:
    """All admissible (P, Q) for level ``k``, P longer than Q."""
    out = []
    for p in range(2 * k, k, -1):
        q = 2 * k - p
        if p > n:
            continue
        for P in itertools.combinations(range(1, n + 1), p):
            for Q in itertools.combinations(range(1, n + 1), q):
                out.append((P, Q))
    return out


def _conj(x):
    return x.conjugate() if isinstance(x, Surd) else mpmath.conj(x)


def _row(Lc, g, P, Q, prec=None):
    """Row for generator ``g`` (1-based); exact entries stay surds."""
    col = [Lc.entries[l][g - 1] for l in range(Lc.n)]
    if prec is not None:
        with mpmath.workprec(prec):
            col = [x.to_mp(prec) if isinstance(x, Surd) else mpmath.mpc(x) for x in col]
    return [col[p - 1] for p in P] + [_conj(col[q - 1]) for q in Q]


def _mp_complex_det(rows, prec):
    """Complex determinant with partial pivoting; returns (det, pivot growth)."""
    with mpmath.workprec(prec + 32):
        a = [[mpmath.mpc(x) for x in r] for r in rows]
        n = len(a)
        amax = max(abs(x) for r in a for x in r)
        if amax == 0:
            return mpmath.mpc(0), mpmath.mpf(1)
        growth = mpmath.mpf(1)
        det = mpmath.mpc(1)
        for k in range(n):
            piv = max(range(k, n), key=lambda i: abs(a[i][k]))
            if a[piv][k] == 0:
                return mpmath.mpc(0), growth
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det *= a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] / a[k][k]
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
            rest = [abs(x) for r in a[k + 1:] for x in r[k + 1:]]
            if rest:
                growth = max(growth, max(rest) / amax)
    with mpmath.workprec(prec):
        return +det, growth


@dataclass(frozen=True, eq=False)
class MinorTable:
    n: int
    k: int
    P: tuple
    Q: tuple
    indices: tuple
    values: tuple
    exact: bool
    prec: int
    lattice: ComplexLattice = field(repr=False)

    def numeric(self, prec: int | None = None) -> list:
        prec = prec or self.prec
        if self.exact:
            return [v.to_mp(prec) for v in self.values]
        if prec == self.prec:
            return list(self.values)
        return list(minor_table(self.lattice, self.k, self.P, self.Q, prec=prec).values)

    def as_dict(self) -> dict:
        return {tuple(i): v for i, v in zip(self.indices, self.values)}


def minor_table(Lc: ComplexLattice, k: int, P, Q, prec: int | None = None) -> MinorTable:
    """Table of ``C^i_{P,Q}`` over ``i`` in ``I_k``, rows in ascending ``i``.

    Exact lattices give exact surd minors (fraction-free elimination).
    Otherwise elimination runs at ``prec`` bits and raises
    :class:`PrecisionLoss` when pivot growth eats more than a quarter of the
    working precision.
    """
    n = Lc.n
    P, Q = _check_form(n, k, P, Q)
    prec = prec or Lc.prec
    indices = homology_indices(n, k).elements
    if Lc.exact:
        vals = tuple(exact_det([_row(Lc, g, P, Q) for g in i]) for i in indices)
        return MinorTable(n, k, P, Q, indices, vals, True, prec, Lc)
    vals = []
    limit = mpmath.mpf(2) ** (prec // 4)
    for i in indices:
        det, growth = _mp_complex_det([_row(Lc, g, P, Q, prec) for g in i], prec)
        if growth > limit:
            raise PrecisionLoss(f"pivot growth {mpmath.nstr(growth, 3)} at minor {i}")
        vals.append(det)
    return MinorTable(n, k, P, Q, indices, tuple(vals), False, prec, Lc)


def _table_rows(tables, prec=None):
    if prec is None:
        return [list(t.values) for t in tables]
    return [t.numeric(prec) for t in tables]


def _mode_for(Lc: ComplexLattice, mode: str) -> str:
    if mode == "auto":
        return "exact" if Lc.gaussian_rational else "numeric"
    if mode == "exact" and not Lc.exact:
        raise ValueError("exact mode needs exact lattice entries")
    if mode not in ("exact", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    return mode


def simultaneous_relation(tables, H: int = DEFAULT_HEIGHT, p: int = DEFAULT_PRECISION, mode: str = "auto") -> RelationVerdict:
    """One integer vector over ``I_k`` annihilating every table."""
    tables = list(tables)
    if not tables:
        raise ValueError("no tables")
    if len({t.indices for t in tables}) != 1:
        raise ValueError("tables must share the index set I_k")
    exact = all(t.exact for t in tables)
    if mode == "auto":
        mode = "exact" if exact and all(v.is_gaussian_rational() for t in tables for v in t.values) else "numeric"
    if mode == "exact":
        return relation_search(_table_rows(tables), H=H, p=p, mode="exact")
    return relation_search(
        _table_rows(tables, p), H=H, p=p, mode="numeric",
        recompute=lambda prec: _table_rows(tables, prec),
    )


@dataclass
class TranscendenceVerdict:
    overall: str
    mode: str
    height: int | None
    precision: int
    per_k: list = field(default_factory=list)
    certificate: dict | None = None

    def to_dict(self) -> dict:
        return {
            "overall": self.overall,
            "mode": self.mode,
            "height": self.height,
            "precision_bits": self.precision,
            "certificate": self.certificate,
            "per_k": self.per_k,
        }


def is_transcendental(Lc: ComplexLattice, H: int = DEFAULT_HEIGHT, p: int = DEFAULT_PRECISION, mode: str = "auto") -> TranscendenceVerdict:
    """Decide ``ker int = 0`` up to height ``H``.

    ``mode``: ``exact`` (needs surd entries; complete, no height), ``numeric``
    (LLL at ``p`` bits) or ``auto`` (exact iff every entry is a Gaussian
    rational).
    """
    n = Lc.n
    mode = _mode_for(Lc, mode)
    if n == 1:
        return TranscendenceVerdict(TRANSCENDENTAL, mode, None, p,
                                    per_k=[], certificate=None)
    per_k = []
    found = None
    inconclusive = False
    all_exact_none = True
    for k in range(1, n):
        forms = form_indices(n, k)
        tables = [minor_table(Lc, k, P, Q, prec=p) for P, Q in forms]
        entry = {"k": k, "forms": len(forms), "size": len(tables[0].indices)}
        decided = False
        single_inconclusive = False
        for t in tables:
            if mode == "exact":
                v = relation_search([list(t.values)], H=H, p=p, mode="exact")
            else:
                v = relation_search([t.numeric(p)], H=H, p=p, mode="numeric",
                                    recompute=lambda prec, t=t: [t.numeric(prec)])
            if v.kind == NO_RELATION:
                entry.update(method="single-form", form=[list(t.P), list(t.Q)], relation=v.to_dict())
                decided = True
                if v.mode != "exact":
                    all_exact_none = False
                break
            if v.kind == INCONCLUSIVE:
                single_inconclusive = True
        if not decided:
            v = simultaneous_relation(tables, H=H, p=p, mode=mode)
            entry.update(method="simultaneous", relation=v.to_dict())
            if v.kind == RELATION_FOUND:
                entry["result"] = NOT_TRANSCENDENTAL
                if found is None:
                    found = {"k": k, "a": list(v.certificate),
                             "indices": [list(i) for i in tables[0].indices]}
            elif v.kind == INCONCLUSIVE:
                inconclusive = True
                entry["result"] = INCONCLUSIVE
            else:
                if v.mode != "exact":
                    all_exact_none = False
            entry.setdefault("result", TRANSCENDENTAL)
            entry["single_form_inconclusive"] = single_inconclusive
        else:
            entry["result"] = TRANSCENDENTAL
        per_k.append(entry)
    if found is not None:
        overall = NOT_TRANSCENDENTAL
    elif inconclusive:
        overall = INCONCLUSIVE
    else:
        overall = TRANSCENDENTAL
    height = None if (overall == TRANSCENDENTAL and all_exact_none) else H
    return TranscendenceVerdict(overall, mode, height, p, per_k=per_k, certificate=found)


def n2_shortcut(Lc: ComplexLattice) -> list:
    """The six minors ``a_j b_k - a_k b_j`` (j < k) of a rank-2 complex lattice."""
    if Lc.n != 2:
        raise WrongDimension(f"n2_shortcut needs n = 2, got n = {Lc.n}")
    e = [[Lc.entries[l][j] for l in range(2)] for j in range(4)]
    out = []
    for j, k in itertools.combinations(range(4), 2):
        a, b = e[j], e[k]
        if all(isinstance(x, Surd) for x in a + b):
            out.append(a[0] * b[1] - b[0] * a[1])
        else:
            with mpmath.workprec(Lc.prec):
                A = [x.to_mp(Lc.prec) if isinstance(x, Surd) else x for x in a]
                B = [x.to_mp(Lc.prec) if isinstance(x, Surd) else x for x in b]
                out.append(A[0] * B[1] - B[0] * A[1])
    return out


@dataclass
class ProductLatticeCheck:
    det_irrational: object   # True / False / None (inconclusive)
    independent: object
    small_covolume: bool
    verdict: str
    det_value: float
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "conditions": {
                "det_irrational": self.det_irrational,
                "entries_independent": self.independent,
                "det_below_half": self.small_covolume,
            },
            "ad_minus_bc": self.det_value,
            "verdict": self.verdict,
            "details": self.details,
        }


def _literal_or_mp(x, p):
    try:
        return parse_literal(x) if not isinstance(x, float) else mpmath.mpf(x)
    except Exception:
        with mpmath.workprec(p):
            return mpmath.mpf(x)


def product_lattice_check(a, b, c, d, H: int = DEFAULT_HEIGHT, p: int = DEFAULT_PRECISION) -> ProductLatticeCheck:
    """Evaluate the three product-lattice conditions for A Z^2 x Z^2.

    A failed condition means the lattice is not certified by this criterion;
    it says nothing about whether it generates a frame.
    """
    vals = [_literal_or_mp(x, p) for x in (a, b, c, d)]
    exact = all(isinstance(v, Surd) for v in vals)
    details = {}
    with mpmath.workprec(p):
        if exact:
            det = vals[0] * vals[3] - vals[1] * vals[2]
            det_irr = not det.is_rational()
            details["det_irrational"] = "decided exactly"
            small = abs(det) < Surd.rational(Fraction(1, 2))
            det_value = float(det)
        else:
            mp = [v.to_mp(p) if isinstance(v, Surd) else v for v in vals]
            det = mp[0] * mp[3] - mp[1] * mp[2]
            rel = integer_relation([mpmath.mpf(1), det], H=H, p=p, mode="numeric")
            det_irr = {RELATION_FOUND: False, NO_RELATION: True}.get(rel.kind)
            details["det_irrational"] = rel.to_dict()
            small = bool(abs(det) < mpmath.mpf(1) / 2)
            det_value = float(det)
        gaussian = exact and all(v.is_rational() for v in vals)
        rel = integer_relation(vals, H=H, p=p, mode="exact" if gaussian else "numeric")
        independent = {RELATION_FOUND: False, NO_RELATION: True}.get(rel.kind)
        details["entries_independent"] = rel.to_dict()
    conds = [det_irr, independent, small]
    if all(c is True for c in conds):
        verdict = "FrameCertifiedUpToHeight"
    elif any(c is False for c in conds):
        verdict = "NotCertifiedByCriterion"
    else:
        verdict = INCONCLUSIVE
    return ProductLatticeCheck(det_irr, independent, bool(small), verdict, det_value, details)


@dataclass
class GenericityReport:
    trials: int
    n: int
    height: int
    precision: int
    seed: int
    passes: int
    failing_seeds: list
    inconclusive_seeds: list

    @property
    def fraction(self) -> float:
        return self.passes / self.trials

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "n": self.n,
            "height": self.height,
            "precision_bits": self.precision,
            "seed": self.seed,
            "passes": self.passes,
            "pass_fraction": self.fraction,
            "failing_seeds": self.failing_seeds,
            "inconclusive_seeds": self.inconclusive_seeds,
        }


def trial_seed(seed: int, i: int) -> int:
    return seed * 1000003 + i


def uniform_sampler(tseed: int, n: int, p: int):
    """Entries i.i.d. uniform on [-1, 1] with ``p`` random bits each."""
    rng = random.Random(tseed)
    d = 2 * n
    with mpmath.workprec(p + 8):
        scale = mpmath.mpf(2) ** (-p)
        return [[2 * mpmath.mpf(rng.getrandbits(p)) * scale - 1 for _ in range(d)] for _ in range(d)]


def genericity_sample(trials: int, n: int = 2, H: int = 10**4, p: int = DEFAULT_PRECISION,
                      seed: int = 0, sampler=None) -> GenericityReport:
    """Fraction of random lattices whose torus tests transcendental.

    ``sampler(trial_seed, n, p)`` returns a 2n x 2n matrix of entries; the
    default draws uniform reals.  Trial ``i`` uses seed ``seed*1000003 + i``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    sampler = sampler or uniform_sampler
    passes, failing, inconclusive = 0, [], []
    for i in range(trials):
        ts = trial_seed(seed, i)
        L = make_lattice(sampler(ts, n, p), prec=p)
        v = is_transcendental(complexify(L), H=H, p=p, mode="auto")
        if v.overall == TRANSCENDENTAL:
            passes += 1
        elif v.overall == INCONCLUSIVE:
            inconclusive.append(ts)
        else:
            failing.append(ts)
    return GenericityReport(trials, n, H, p, seed, passes, failing, inconclusive)
