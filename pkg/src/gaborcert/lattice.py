"""Lattices in R^{2n}, their symplectic duals and complexifications.

A point of R^{2n} is written ``(xi, x)`` with ``xi, x`` in R^n, and the
complexification sends it to ``x + i*xi`` in C^n.  Generator matrices hold
one generator per *column*.

Entries are either exact (:class:`~gaborcert.exact.Surd`) or inexact
``mpmath.mpf`` values; a lattice is *exact* when every entry is a surd and
*rational* when every entry is rational.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import mpmath
import numpy as np

from .errors import (
    BadRange,
    DimensionMismatch,
    LatticeSpecError,
    LiteralError,
    NonPositiveScale,
    RadiusTooLarge,
    SingularGenerators,
)
from .exact import Surd, exact_det, exact_inverse, parse_literal

__all__ = [
    "Lattice",
    "ComplexLattice",
    "MultiIndexSet",
    "HomologyIndexSet",
    "make_lattice",
    "covolume",
    "symplectic_dual",
    "complexify",
    "scale",
    "enumerate_points",
    "multi_indices",
    "homology_indices",
    "same_lattice",
    "parse_lattice_spec",
    "read_lattice_spec",
    "product_lattice",
    "symplectic_form",
    "DEFAULT_PREC",
    "DEFAULT_POINT_CAP",
]

DEFAULT_PREC = 256
DEFAULT_POINT_CAP = 10**6


def _entry(value, prec):
    """Normalise one entry to a Surd (exact) or an mpf/mpc (inexact)."""
    if isinstance(value, Surd):
        return value
    if isinstance(value, (str, int, Fraction)) and not isinstance(value, bool):
        return parse_literal(value)
    if isinstance(value, (float, np.floating)):
        with mpmath.workprec(prec):
            return mpmath.mpf(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        with mpmath.workprec(prec):
            return mpmath.mpc(complex(value))
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return value
    raise LiteralError(f"unsupported entry {value!r}")


def _to_mp(x, prec):
    if isinstance(x, Surd):
        return x.to_mp(prec)
    with mpmath.workprec(prec):
        return +x


def _mp_det(rows, prec):
    """Determinant by partial-pivot elimination; also returns pivot growth."""
    with mpmath.workprec(prec + 32):
        a = [[_to_mp(x, prec + 32) for x in r] for r in rows]
        n = len(a)
        amax = max((abs(x) for r in a for x in r), default=mpmath.mpf(0))
        growth = mpmath.mpf(1)
        det = mpmath.mpf(1)
        for k in range(n):
            piv = max(range(k, n), key=lambda i: abs(a[i][k]))
            if a[piv][k] == 0:
                return mpmath.mpf(0), mpmath.inf
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det *= a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] / a[k][k]
                if f:
                    for j in range(k + 1, n):
                        a[i][j] -= f * a[k][j]
            if amax:
                growth = max(growth, max(abs(x) for r in a[k:] for x in r[k:]) / amax)
        with mpmath.workprec(prec):
            return +det, growth


@dataclass(frozen=True, eq=False)
class Lattice:
    """Lattice in R^{2n} spanned by the columns of a 2n x 2n matrix."""

    n: int
    entries: tuple
    prec: int = DEFAULT_PREC

    @property
    def dim(self) -> int:
        return 2 * self.n

    @cached_property
    def exact(self) -> bool:
        return all(isinstance(x, Surd) for r in self.entries for x in r)

    @cached_property
    def rational(self) -> bool:
        return self.exact and all(x.is_rational() for r in self.entries for x in r)

    @cached_property
    def det_exact(self):
        """Exact determinant (Fraction when rational, Surd when exact, else None)."""
        if not self.exact:
            return None
        d = exact_det(self.entries)
        return d.as_fraction() if d.is_rational() else d

    @cached_property
    def det(self):
        if self.exact:
            d = self.det_exact
            if isinstance(d, Fraction):
                with mpmath.workprec(self.prec):
                    return mpmath.mpf(d.numerator) / d.denominator
            return d.to_mp(self.prec)
        return _mp_det(self.entries, self.prec)[0]

    @cached_property
    def gens(self) -> np.ndarray:
        """Float64 image of the generator matrix (columns are generators)."""
        return np.array([[float(_to_mp(x, 64)) for x in r] for r in self.entries])

    def matrix(self, prec: int | None = None) -> mpmath.matrix:
        prec = prec or self.prec
        with mpmath.workprec(prec):
            return mpmath.matrix([[_to_mp(x, prec) for x in r] for r in self.entries])

    def generators(self) -> list[list]:
        """Generators as rows (the lattice-spec orientation)."""
        return [list(col) for col in zip(*self.entries)]

    def with_generators(self, cols) -> "Lattice":
        return make_lattice([list(r) for r in zip(*cols)], prec=self.prec)

    def __repr__(self):
        kind = "rational" if self.rational else ("exact" if self.exact else "numeric")
        return f"Lattice(n={self.n}, {kind}, covolume={float(abs(self.det)):.6g})"


@dataclass(frozen=True, eq=False)
class ComplexLattice:
    """Lattice in C^n spanned over Z by the 2n columns of an n x 2n matrix."""

    n: int
    entries: tuple
    prec: int = DEFAULT_PREC

    @cached_property
    def exact(self) -> bool:
        return all(isinstance(x, Surd) for r in self.entries for x in r)

    @cached_property
    def gaussian_rational(self) -> bool:
        return self.exact and all(x.is_gaussian_rational() for r in self.entries for x in r)

    @cached_property
    def gens(self) -> np.ndarray:
        return np.array([[complex(_to_mp(x, 64)) for x in r] for r in self.entries])

    def generator(self, j: int, prec: int | None = None) -> list:
        """Coordinates of generator ``j`` (0-based) as mpmath numbers."""
        prec = prec or self.prec
        return [_to_mp(self.entries[l][j], prec) for l in range(self.n)]

    def realify(self) -> Lattice:
        """Inverse of :func:`complexify`: rows (Im, Re) in (xi, x) order."""
        rows = []
        for part in ("imag", "real"):
            for l in range(self.n):
                row = []
                for x in self.entries[l]:
                    if isinstance(x, Surd):
                        row.append(getattr(x, part)())
                    else:
                        with mpmath.workprec(self.prec):
                            row.append(mpmath.mpf(getattr(mpmath.mpc(x), part)))
                rows.append(row)
        return make_lattice(rows, prec=self.prec)

    def __repr__(self):
        kind = "gaussian-rational" if self.gaussian_rational else ("exact" if self.exact else "numeric")
        return f"ComplexLattice(n={self.n}, {kind})"


def make_lattice(gens, prec: int = DEFAULT_PREC) -> Lattice:
    """Build a :class:`Lattice` from a 2n x 2n matrix of entry literals.

    ``gens[i][j]`` is coordinate ``i`` of generator ``j``.  Literals may be
    strings (``"3/2"``, ``"0.25"``, ``"sqrt(7)"``), ints, Fractions, surds,
    floats or mpmath numbers; the last two are treated as inexact.
    """
    rows = [list(r) for r in gens]
    d = len(rows)
    if d == 0 or d % 2 or any(len(r) != d for r in rows):
        raise DimensionMismatch(f"expected a square even-dimensional matrix, got {d} rows")
    entries = tuple(tuple(_entry(x, prec) for x in r) for r in rows)
    lat = Lattice(n=d // 2, entries=entries, prec=prec)
    det = lat.det_exact if lat.exact else None
    if lat.exact:
        if (isinstance(det, Fraction) and det == 0) or (isinstance(det, Surd) and det.is_zero()):
            raise SingularGenerators("generator matrix has zero determinant")
    else:
        value, _ = _mp_det(entries, prec)
        with mpmath.workprec(prec):
            hadamard = mpmath.mpf(1)
            for j in range(d):
                hadamard *= mpmath.sqrt(sum(abs(_to_mp(entries[i][j], prec)) ** 2 for i in range(d)))
            if hadamard == 0 or abs(value) <= hadamard * mpmath.mpf(2) ** (-(prec // 2)):
                raise SingularGenerators("generator matrix is numerically singular")
    return lat


def covolume(L: Lattice):
    """|det gens| as an mpf at the lattice precision."""
    with mpmath.workprec(L.prec):
        return abs(L.det)


def covolume_exact(L: Lattice):
    """Exact covolume (Fraction or real Surd), or None for numeric lattices."""
    d = L.det_exact
    if d is None:
        return None
    return abs(d)


def symplectic_form(n: int) -> np.ndarray:
    """Matrix J with u^T J v = eta.x - xi.y for u = (eta, y), v = (xi, x)."""
    eye = np.eye(n, dtype=int)
    zero = np.zeros((n, n), dtype=int)
    return np.block([[zero, eye], [-eye, zero]])


def symplectic_dual(L: Lattice) -> Lattice:
    """Lattice of points pairing integrally with every point of ``L``.

    Computed as ``J (G^T)^{-1}``; the pairing matrix between the generators
    of the dual and of ``L`` is then the identity.
    """
    n, d = L.n, L.dim
    J = symplectic_form(n)
    if L.exact:
        inv = exact_inverse(L.entries)  # G^{-1}
        inv_t = [[inv[j][i] for j in range(d)] for i in range(d)]
        rows = [
            [sum((inv_t[k][j] * int(J[i, k]) for k in range(d) if J[i, k]), Surd()) for j in range(d)]
            for i in range(d)
        ]
        return make_lattice(rows, prec=L.prec)
    with mpmath.workprec(L.prec + 32):
        G = L.matrix(L.prec + 32)
        D = mpmath.matrix(J.tolist()) * (G.T) ** -1
        rows = [[+D[i, j] for j in range(d)] for i in range(d)]
    return make_lattice(rows, prec=L.prec)


def complexify(L: Lattice) -> ComplexLattice:
    """Send each generator (xi, x) to x + i*xi."""
    n = L.n
    rows = []
    for l in range(n):
        row = []
        for j in range(2 * n):
            xi, x = L.entries[l][j], L.entries[n + l][j]
            if isinstance(xi, Surd) and isinstance(x, Surd):
                row.append(x + Surd.i() * xi)
            else:
                with mpmath.workprec(L.prec):
                    row.append(mpmath.mpc(_to_mp(x, L.prec), _to_mp(xi, L.prec)))
        rows.append(tuple(row))
    return ComplexLattice(n=n, entries=tuple(rows), prec=L.prec)


def scale(Lc, k):
    """Multiply every generator by sqrt(k); covolume scales by k^n."""
    if isinstance(k, (str, int, Fraction, Surd)) and not isinstance(k, bool):
        kk = parse_literal(k) if not isinstance(k, Surd) else k
        if not kk.is_rational() or kk.as_fraction() <= 0:
            raise NonPositiveScale(f"scale factor must be a positive rational, got {k}")
        factor = Surd.sqrt(kk.as_fraction())
    else:
        if not k > 0:
            raise NonPositiveScale(f"scale factor must be positive, got {k}")
        with mpmath.workprec(Lc.prec):
            factor = mpmath.sqrt(mpmath.mpf(k))

    def mul(x):
        if isinstance(x, Surd) and isinstance(factor, Surd):
            return x * factor
        with mpmath.workprec(Lc.prec):
            return _to_mp(x, Lc.prec) * _to_mp(factor, Lc.prec)

    if isinstance(Lc, ComplexLattice):
        entries = tuple(tuple(mul(x) for x in r) for r in Lc.entries)
        return ComplexLattice(n=Lc.n, entries=entries, prec=Lc.prec)
    return make_lattice([[mul(x) for x in r] for r in Lc.entries], prec=Lc.prec)


def _real_generators(L) -> np.ndarray:
    if isinstance(L, ComplexLattice):
        G = L.gens
        return np.vstack([G.imag, G.real])
    return L.gens


def enumerate_points(L, R: float, cap: int = DEFAULT_POINT_CAP, return_coeffs: bool = False):
    """All lattice points of Euclidean norm <= R.

    Returns an ``(N, 2n)`` float array of ``(xi, x)`` points for a
    :class:`Lattice`, or an ``(N, n)`` complex array for a
    :class:`ComplexLattice`.  Points are sorted by norm, then
    lexicographically.  With ``return_coeffs`` the integer coefficient
    vectors are returned as well.
    """
    if R < 0:
        raise ValueError("radius must be nonnegative")
    G = _real_generators(L)
    d = G.shape[0]
    vol = abs(np.linalg.det(G))
    estimate = math.pi ** (d / 2) / math.gamma(d / 2 + 1) * R**d / vol
    if estimate > 4 * cap:
        raise RadiusTooLarge(f"about {estimate:.3g} points within R={R}, cap is {cap}")
    _, Rm = np.linalg.qr(G)
    R2 = R * R * (1 + 1e-12) + 1e-300
    found: list[np.ndarray] = []
    count = 0
    c = np.zeros(d, dtype=np.int64)

    def rec(i: int, partial: float):
        nonlocal count
        rii = Rm[i, i]
        center = -float(Rm[i, i + 1:] @ c[i + 1:]) / rii
        rem = R2 - partial
        if rem < 0:
            return
        half = math.sqrt(rem) / abs(rii)
        lo, hi = math.ceil(center - half - 1e-9), math.floor(center + half + 1e-9)
        if i == 0:
            if hi < lo:
                return
            block = np.zeros((hi - lo + 1, d), dtype=np.int64)
            block[:, 1:] = c[1:]
            block[:, 0] = np.arange(lo, hi + 1)
            count += len(block)
            if count > cap:
                raise RadiusTooLarge(f"more than {cap} points within R={R}")
            found.append(block)
            return
        for ci in range(lo, hi + 1):
            c[i] = ci
            t = rii * ci + float(Rm[i, i + 1:] @ c[i + 1:])
            rec(i - 1, partial + t * t)
        c[i] = 0

    rec(d - 1, 0.0)
    coeffs = np.vstack(found) if found else np.zeros((0, d), dtype=np.int64)
    pts = coeffs @ G.T
    norms = np.linalg.norm(pts, axis=1)
    keep = norms <= R * (1 + 1e-12)
    coeffs, pts, norms = coeffs[keep], pts[keep], norms[keep]
    keys = [np.round(pts[:, j], 10) for j in reversed(range(d))] + [np.round(norms, 10)]
    order = np.lexsort(keys)
    coeffs, pts = coeffs[order], pts[order]
    if isinstance(L, ComplexLattice):
        n = L.n
        pts = pts[:, n:] + 1j * pts[:, :n]
    return (pts, coeffs) if return_coeffs else pts


def same_lattice(A, B, tol: float = 1e-9) -> bool:
    """True when the generator matrices differ by a unimodular integer matrix."""
    if A.n != B.n:
        return False
    if isinstance(A, Lattice) and A.exact and B.exact:
        inv = exact_inverse(A.entries)
        d = A.dim
        C = [[sum((inv[i][k] * B.entries[k][j] for k in range(d)), Surd()) for j in range(d)] for i in range(d)]
        if not all(x.is_rational() and x.as_fraction().denominator == 1 for r in C for x in r):
            return False
        det = exact_det(C)
        return det.is_rational() and abs(det.as_fraction()) == 1
    Ga, Gb = _real_generators(A), _real_generators(B)
    C = np.linalg.solve(Ga, Gb)
    Ci = np.rint(C)
    if np.max(np.abs(C - Ci)) > tol:
        return False
    return abs(abs(round(np.linalg.det(Ci))) - 1) == 0


@dataclass(frozen=True)
class MultiIndexSet:
    """N_s = {alpha in N_0^n : |alpha| <= s}, graded by total degree."""

    n: int
    s: int
    elements: tuple = field(repr=False)

    @property
    def cardinality(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def position(self) -> dict:
        return {a: i for i, a in enumerate(self.elements)}


@dataclass(frozen=True)
class HomologyIndexSet:
    """I_k: ascending 2k-subsets of {1, ..., 2n}."""

    n: int
    k: int
    elements: tuple = field(repr=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _compositions(n: int, total: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(n - 1, total - first):
            yield (first,) + rest


def multi_indices(n: int, s: int) -> MultiIndexSet:
    """All multi-indices of length ``n`` and total degree at most ``s``.

    Ordered by degree, and within a degree in descending lexicographic
    order, so ``N_s`` is always a prefix of ``N_D`` for ``s <= D``.
    """
    if n < 1 or s < 0:
        raise BadRange(f"need n >= 1 and s >= 0, got n={n}, s={s}")
    elems = tuple(a for deg in range(s + 1) for a in _compositions(n, deg))
    return MultiIndexSet(n=n, s=s, elements=elems)


def homology_indices(n: int, k: int) -> HomologyIndexSet:
    if not 1 <= k < n:
        raise BadRange(f"k must lie in [1, n-1] = [1, {n - 1}], got {k}")
    elems = tuple(itertools.combinations(range(1, 2 * n + 1), 2 * k))
    return HomologyIndexSet(n=n, k=k, elements=elems)


def product_lattice(a, b, c, d, prec: int = DEFAULT_PREC) -> Lattice:
    """Lattice A Z^2 x Z^2 in (xi, x) order, A(x, y) = (ax + by, cx + dy).

    Its complexification is generated by (1, 0), (0, 1), (ia, ic), (ib, id),
    in that order.
    """
    z, o = "0", "1"
    gens_rows = [
        [z, z, o, z],   # generator 1: x = e1
        [z, z, z, o],   # generator 2: x = e2
        [a, c, z, z],   # generator 3: xi = A e1
        [b, d, z, z],   # generator 4: xi = A e2
    ]
    return make_lattice([list(r) for r in zip(*gens_rows)], prec=prec)


def parse_lattice_spec(text: str, prec: int = DEFAULT_PREC) -> Lattice:
    """Parse lattice-spec text: ``n = <int>`` then 2n generator lines."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise LatticeSpecError("empty lattice spec")
    lineno, head = lines[0]
    key, eq, val = head.partition("=")
    if not eq or key.strip() != "n":
        raise LatticeSpecError(f"line {lineno}: expected 'n = <int>', got {head!r}")
    try:
        n = int(val.strip())
    except ValueError as exc:
        raise LatticeSpecError(f"line {lineno}: bad dimension {val.strip()!r}") from exc
    if n < 1:
        raise LatticeSpecError(f"line {lineno}: n must be positive")
    body = lines[1:]
    if len(body) != 2 * n:
        raise LatticeSpecError(f"expected {2 * n} generator lines, found {len(body)}")
    generators = []
    for lineno, line in body:
        toks = line.split()
        if len(toks) != 2 * n:
            raise LatticeSpecError(f"line {lineno}: expected {2 * n} entries, found {len(toks)}")
        try:
            generators.append([parse_literal(t) for t in toks])
        except LiteralError as exc:
            raise LatticeSpecError(f"line {lineno}: {exc}") from exc
    try:
        return make_lattice([list(r) for r in zip(*generators)], prec=prec)
    except SingularGenerators as exc:
        raise LatticeSpecError(str(exc)) from exc


def read_lattice_spec(path, prec: int = DEFAULT_PREC) -> Lattice:
    return parse_lattice_spec(Path(path).read_text(), prec=prec)


def format_lattice_spec(L: Lattice) -> str:
    """Inverse of :func:`parse_lattice_spec` for exact lattices."""
    if not L.exact:
        raise ValueError("only exact lattices have a literal form")

    def lit(x: Surd) -> str:
        parts = []
        for m in sorted(x.terms):
            a, _ = x.terms[m]
            parts.append(f"({a})" if m == 1 else f"({a})*sqrt({m})")
        return "+".join(parts) if parts else "0"

    out = [f"n = {L.n}"]
    for g in L.generators():
        out.append(" ".join(lit(x) for x in g))
    return "\n".join(out) + "\n"
