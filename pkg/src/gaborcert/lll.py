"""Integral LLL reduction on rows of Python integers.

This is the all-integer variant (Cohen, *A Course in Computational Algebraic
Number Theory*, Alg. 2.6.7): Gram-Schmidt data is carried as the integers
``d_i`` (Gram determinants) and ``lam[i][j] = d_j * mu_ij``, so no rounding
ever enters the reduction itself.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["lll_reduce", "LLLResult"]


class LLLResult:
    """Reduced basis plus the Gram determinants ``d_0 = 1, d_1, ..., d_m``."""

    def __init__(self, basis, d):
        self.basis = basis
        self.d = d

    def gs_norms_sq(self) -> list[Fraction]:
        """Squared Gram-Schmidt norms ``|b_i*|^2 = d_i / d_{i-1}``."""
        return [Fraction(self.d[i + 1], self.d[i]) for i in range(len(self.basis))]


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b for b > 0."""
    return (2 * a + b) // (2 * b)


def lll_reduce(rows, delta: Fraction = Fraction(99, 100)) -> LLLResult:
    """LLL-reduce linearly independent integer row vectors."""
    b = [list(map(int, r)) for r in rows]
    m = len(b)
    if m == 0:
        return LLLResult([], [1])
    p, q = delta.numerator, delta.denominator
    d = [1] + [0] * m
    lam = [[0] * m for _ in range(m)]
    d[1] = _dot(b[0], b[0])
    if d[1] == 0:
        raise ValueError("zero vector in LLL input")
    if m == 1:
        return LLLResult(b, d)

    def red(k, l):
        # 1-based indices
        dl = d[l]
        if 2 * abs(lam[k - 1][l - 1]) > dl:
            qq = _round_div(lam[k - 1][l - 1], dl)
            bk, bl = b[k - 1], b[l - 1]
            for t in range(len(bk)):
                bk[t] -= qq * bl[t]
            lam[k - 1][l - 1] -= qq * dl
            for i in range(1, l):
                lam[k - 1][i - 1] -= qq * lam[l - 1][i - 1]

    def swap(k, kmax):
        b[k - 1], b[k - 2] = b[k - 2], b[k - 1]
        for j in range(1, k - 1):
            lam[k - 1][j - 1], lam[k - 2][j - 1] = lam[k - 2][j - 1], lam[k - 1][j - 1]
        lm = lam[k - 1][k - 2]
        B = (d[k - 2] * d[k] + lm * lm) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i - 1][k - 1]
            lam[i - 1][k - 1] = (d[k] * lam[i - 1][k - 2] - lm * t) // d[k - 1]
            lam[i - 1][k - 2] = (B * t + lm * lam[i - 1][k - 1]) // d[k]
        d[k - 1] = B

    k, kmax = 2, 1
    while k <= m:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = _dot(b[k - 1], b[j - 1])
                for i in range(1, j):
                    u = (d[i] * u - lam[k - 1][i - 1] * lam[j - 1][i - 1]) // d[i - 1]
                if j < k:
                    lam[k - 1][j - 1] = u
                else:
                    if u == 0:
                        raise ValueError("LLL input rows are linearly dependent")
                    d[k] = u
        red(k, k - 1)
        lm = lam[k - 1][k - 2]
        if q * d[k] * d[k - 2] < p * d[k - 1] * d[k - 1] - q * lm * lm:
            swap(k, kmax)
            k = max(2, k - 1)
        else:
            for l in range(k - 2, 0, -1):
                red(k, l)
            k += 1
    return LLLResult(b, d)
