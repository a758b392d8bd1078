"""Exact arithmetic in Q(i, sqrt(2), sqrt(3), ...).

Lattice entries are written as literals such as ``3/2``, ``0.125``,
``sqrt(5)`` or ``(1+sqrt(5))/2``.  Each parses to a :class:`Surd`, a finite
sum ``sum_m c_m * sqrt(m)`` over squarefree ``m`` with Gaussian-rational
coefficients ``c_m``.  The square roots of distinct squarefree integers are
linearly independent over Q(i), so equality, rationality and Z-linear
dependence of surds all reduce to exact rational linear algebra on the
coefficient vectors.
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from functools import reduce

import mpmath

from .errors import LiteralError

__all__ = [
    "Surd",
    "parse_literal",
    "exact_det",
    "exact_inverse",
    "rational_kernel",
    "squarefree_decompose",
]


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == f*f*s`` and ``s`` squarefree."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    s, f = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        f *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1 if p == 2 else 2
    return s * n, f


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _coerce(x) -> "Surd":
    if isinstance(x, Surd):
        return x
    if isinstance(x, (int, Fraction)):
        return Surd({1: (Fraction(x), Fraction(0))})
    if isinstance(x, complex):
        return Surd({1: (Fraction(x.real), Fraction(x.imag))})
    return NotImplemented


class Surd:
    """Exact number ``sum_m (a_m + i b_m) sqrt(m)``; immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for m, (re, im) in (terms or {}).items():
            re, im = Fraction(re), Fraction(im)
            if re or im:
                clean[int(m)] = (re, im)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def rational(cls, q) -> "Surd":
        return cls({1: (Fraction(q), 0)})

    @classmethod
    def sqrt(cls, q) -> "Surd":
        """Exact square root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise LiteralError("sqrt of a negative number")
        if q == 0:
            return cls()
        s, f = squarefree_decompose(q.numerator * q.denominator)
        return cls({s: (Fraction(f, q.denominator), 0)})

    @classmethod
    def i(cls) -> "Surd":
        return cls({1: (0, 1)})

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    __bool__ = lambda self: bool(self.terms)  # noqa: E731

    def is_gaussian_rational(self) -> bool:
        return all(m == 1 for m in self.terms)

    def is_real(self) -> bool:
        return all(im == 0 for _, im in self.terms.values())

    def is_rational(self) -> bool:
        return self.is_gaussian_rational() and self.is_real()

    def radicals(self) -> list[int]:
        return sorted(self.terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.terms.get(1, (Fraction(0), 0))[0]

    # -- arithmetic ---------------------------------------------------
    def __neg__(self):
        return Surd({m: (-a, -b) for m, (a, b) in self.terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for m, (a, b) in other.terms.items():
            a0, b0 = t.get(m, (0, 0))
            t[m] = (a0 + a, b0 + b)
        return Surd(t)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        t: dict[int, tuple[Fraction, Fraction]] = {}
        for m1, (a1, b1) in self.terms.items():
            for m2, (a2, b2) in other.terms.items():
                g = math.gcd(m1, m2)
                m = (m1 // g) * (m2 // g)
                re = (a1 * a2 - b1 * b2) * g
                im = (a1 * b2 + a2 * b1) * g
                a0, b0 = t.get(m, (0, 0))
                t[m] = (a0 + re, b0 + im)
        return Surd(t)

    __rmul__ = __mul__

    def conjugate(self) -> "Surd":
        return Surd({m: (a, -b) for m, (a, b) in self.terms.items()})

    def real(self) -> "Surd":
        return Surd({m: (a, 0) for m, (a, _) in self.terms.items()})

    def imag(self) -> "Surd":
        return Surd({m: (b, 0) for m, (_, b) in self.terms.items()})

    def _galois_flip(self, p: int) -> "Surd":
        return Surd({m: ((-a, -b) if m % p == 0 else (a, b)) for m, (a, b) in self.terms.items()})

    def inverse(self) -> "Surd":
        """Exact reciprocal by successive Galois-conjugate rationalisation."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero surd")
        num = Surd({1: (1, 0)})
        den = self
        primes = sorted({p for m in self.terms for p in _prime_factors(m)})
        for p in primes:
            flip = den._galois_flip(p)
            num = num * flip
            den = den * flip
        # den is now Gaussian rational
        a, b = den.terms[1]
        norm = a * a + b * b
        return num * Surd({1: (a / norm, -b / norm)})

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out = Surd({1: (1, 0)})
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- numerics -----------------------------------------------------
    def to_mp(self, prec: int = 256):
        """Value as an mpmath number at ``prec`` bits (mpf if real, else mpc)."""
        with mpmath.workprec(prec + 16):
            re = mpmath.mpf(0)
            im = mpmath.mpf(0)
            for m, (a, b) in self.terms.items():
                r = mpmath.sqrt(m) if m != 1 else mpmath.mpf(1)
                if a:
                    re += mpmath.mpf(a.numerator) / a.denominator * r
                if b:
                    im += mpmath.mpf(b.numerator) / b.denominator * r
        with mpmath.workprec(prec):
            if self.is_real():
                return +re
            return mpmath.mpc(+re, +im)

    def __complex__(self):
        return complex(self.to_mp(64))

    def __float__(self):
        if not self.is_real():
            raise TypeError("complex surd has no float value")
        return float(self.to_mp(64))

    def sign(self) -> int:
        """Sign of a real surd, decided with escalating precision."""
        if not self.is_real():
            raise ValueError("sign of a non-real surd")
        if self.is_zero():
            return 0
        prec = 64
        scale = sum(abs(a) for a, _ in self.terms.values()) + 1
        while True:
            v = self.to_mp(prec)
            if abs(v) > mpmath.mpf(2) ** (-prec // 2) * float(scale):
                return 1 if v > 0 else -1
            prec *= 2
            if prec > 1 << 16:
                raise ArithmeticError("could not resolve sign")

    def __abs__(self):
        if not self.is_real():
            raise ValueError("abs of a non-real surd is not a surd in general")
        return -self if self.sign() < 0 else self

    def _cmp(self, other) -> int:
        return (self - _coerce(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def coefficient_rows(self, radicals) -> list[Fraction]:
        """Real and imaginary coefficients over ``radicals`` (re block, then im)."""
        re = [self.terms.get(m, (Fraction(0), Fraction(0)))[0] for m in radicals]
        im = [self.terms.get(m, (Fraction(0), Fraction(0)))[1] for m in radicals]
        return re + im

    def __repr__(self):
        return f"Surd({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            a, b = self.terms[m]
            if b == 0:
                c = str(a)
            elif a == 0:
                c = f"{b}i"
            else:
                c = f"({a}{'+' if b > 0 else '-'}{abs(b)}i)"
            parts.append(c if m == 1 else f"{c}*sqrt({m})")
        return " + ".join(parts)


# -- literal parsing ---------------------------------------------------------

def parse_literal(text) -> Surd:
    """Parse an entry literal into an exact :class:`Surd`.

    Accepts integers, ``p/q``, decimal strings (read exactly), ``sqrt(q)``
    for a nonnegative rational ``q``, and ``+ - * /`` and integer ``**``
    combinations of those.
    """
    if isinstance(text, Surd):
        return text
    if isinstance(text, (int, Fraction)):
        return Surd.rational(text)
    if not isinstance(text, str):
        raise LiteralError(f"unsupported literal type {type(text).__name__}")
    src = text.strip()
    if not src:
        raise LiteralError("empty literal")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise LiteralError(f"cannot parse literal {text!r}") from exc
    return _eval_node(tree.body, src)


def _eval_node(node, src: str) -> Surd:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise LiteralError(f"unsupported constant in {src!r}")
        seg = ast.get_source_segment(src, node)
        return Surd.rational(Fraction(seg))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        v = _eval_node(node.operand, src)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, src)
        if isinstance(node.op, ast.Pow):
            right = _eval_node(node.right, src)
            if not right.is_rational() or right.as_fraction().denominator != 1:
                raise LiteralError(f"only integer powers allowed in {src!r}")
            return left ** int(right.as_fraction())
        right = _eval_node(node.right, src)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if right.is_zero():
                raise LiteralError(f"division by zero in {src!r}")
            return left / right
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id == "sqrt"
        and len(node.args) == 1
        and not node.keywords
    ):
        arg = _eval_node(node.args[0], src)
        if not arg.is_rational():
            raise LiteralError(f"sqrt argument must be rational in {src!r}")
        return Surd.sqrt(arg.as_fraction())
    raise LiteralError(f"unsupported syntax in literal {src!r}")


# -- exact linear algebra ----------------------------------------------------

def exact_det(rows) -> Surd:
    """Determinant of a square matrix of surds by fraction-free elimination."""
    a = [[_coerce(x) for x in row] for row in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    if n == 0:
        return Surd.rational(1)
    sign = 1
    prev = Surd.rational(1)
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
        if piv is None:
            return Surd()
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = Surd()
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def exact_inverse(rows) -> list[list[Surd]]:
    """Gauss-Jordan inverse over the surd field."""
    n = len(rows)
    a = [[_coerce(x) for x in row] + [Surd.rational(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[k], a[piv] = a[piv], a[k]
        inv = a[k][k].inverse()
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and not a[i][k].is_zero():
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


def rational_kernel(rows: list[list[Fraction]], m: int) -> list[list[int]]:
    """Basis of the integer kernel ``{a in Z^m : rows @ a == 0}``.

    Each basis vector comes from the reduced row-echelon form over Q and is
    scaled to a primitive integer vector.
    """
    a = [[Fraction(x) for x in r] for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * m
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fcol]
        lcm = reduce(lambda x, y: x * y // math.gcd(x, y), (x.denominator for x in v), 1)
        iv = [int(x * lcm) for x in v]
        g = reduce(math.gcd, (abs(x) for x in iv), 0) or 1
        basis.append([x // g for x in iv])
    return basis
