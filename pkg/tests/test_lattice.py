import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from gaborcert.errors import BadRange, LatticeSpecError, NonPositiveScale, SingularGenerators, DimensionMismatch
from gaborcert.exact import Surd
from gaborcert.lattice import (
    complexify,
    covolume,
    covolume_exact,
    enumerate_points,
    format_lattice_spec,
    homology_indices,
    make_lattice,
    multi_indices,
    parse_lattice_spec,
    product_lattice,
    same_lattice,
    scale,
    symplectic_dual,
    symplectic_form,
)
from oracles import brute_force_points

SURDS = ("sqrt(2)", "sqrt(3)", "sqrt(5)", "sqrt(7)")


def test_identity_covolume():
    L = make_lattice([["1", "0"], ["0", "1"]])
    assert covolume_exact(L) == 1


def test_diagonal_covolume():
    L = make_lattice([["3/4", "0"], ["0", "5/3"]])
    assert covolume_exact(L) == Fraction(5, 4)


def test_product_lattice_covolume():
    L = product_lattice(*SURDS)
    with mpmath.workprec(300):
        ref = abs(mpmath.sqrt(14) - mpmath.sqrt(15))
        assert abs(covolume(L) - ref) < mpmath.mpf(10) ** -60
    assert float(covolume(L)) == pytest.approx(0.1313259594, abs=1e-10)


@pytest.mark.parametrize("gens", [
    [["0", "0"], ["0", "0"]],
    [["1", "2"], ["2", "4"]],
    [[1.0, 2.0], [2.0, 4.0]],
])
def test_singular(gens):
    with pytest.raises(SingularGenerators):
        make_lattice(gens)


def test_odd_dimension():
    with pytest.raises(DimensionMismatch):
        make_lattice([["1"]])


def test_dual_rectangular():
    a, b = Fraction(2, 3), Fraction(5, 4)
    L = make_lattice([[a, 0], [0, b]])   # xi-spacing a, x-spacing b
    Lo = symplectic_dual(L)
    expected = make_lattice([[1 / b, 0], [0, 1 / a]])
    assert same_lattice(Lo, expected)
    # pairing eta*x - xi*y is an integer on every pair of generators
    J = symplectic_form(1)
    P = Lo.gens.T @ J @ L.gens
    assert np.allclose(P, np.rint(P), atol=1e-13)


def test_dual_pairing_is_identity_exact():
    L = product_lattice(*SURDS)
    Lo = symplectic_dual(L)
    J = symplectic_form(2)
    P = Lo.gens.T @ J @ L.gens
    assert np.allclose(P, np.eye(4), atol=1e-12)


def test_double_dual():
    L = make_lattice([["1/2", "1/3", "0", "1"], ["0", "1", "2", "0"], ["1", "0", "1/5", "0"], ["0", "0", "1", "3"]])
    assert same_lattice(symplectic_dual(symplectic_dual(L)), L)
    assert covolume_exact(symplectic_dual(L)) * covolume_exact(L) == 1


def test_complexify_unit():
    Lc = complexify(make_lattice([["1", "0"], ["0", "1"]]))
    # generator 1 is xi = 1 -> i ; generator 2 is x = 1 -> 1
    assert sorted(map(complex, Lc.gens.ravel()), key=lambda z: (z.real, z.imag)) == [1j, 1 + 0j]


def test_complexify_product_lattice():
    a, b, c, d = (Surd.sqrt(m) for m in (2, 3, 5, 7))
    Lc = complexify(product_lattice(*SURDS))
    cols = [tuple(Lc.entries[l][j] for l in range(2)) for j in range(4)]
    i = Surd.i()
    assert cols == [(Surd.rational(1), Surd()), (Surd(), Surd.rational(1)), (i * a, i * c), (i * b, i * d)]


def test_realify_covolume():
    L = make_lattice([["1/2", "1/3"], ["0", "7/5"]])
    assert covolume_exact(complexify(L).realify()) == covolume_exact(L)


def test_scale():
    L = make_lattice([["1", "0"], ["0", "1"]])
    L4 = scale(L, 4)
    assert covolume_exact(L4) == 4
    assert sorted(np.abs(L4.gens).max(axis=0)) == [2.0, 2.0]
    assert covolume_exact(scale(L, 1)) == 1
    L2 = scale(product_lattice(*SURDS), 2)
    assert float(covolume(L2)) == pytest.approx(4 * float(covolume(product_lattice(*SURDS))), rel=1e-14)
    with pytest.raises(NonPositiveScale):
        scale(L, 0)
    with pytest.raises(NonPositiveScale):
        scale(L, -1.5)


def test_enumerate_origin_only():
    pts = enumerate_points(make_lattice([["1", "0"], ["0", "1"]]), 0)
    assert pts.shape == (1, 2) and not pts.any()


def test_enumerate_unit_15():
    L = make_lattice([["1", "0"], ["0", "1"]])
    assert len(enumerate_points(L, 1.5)) == 9
    assert len(brute_force_points(L.gens, 1.5, 2)) == 9


@pytest.mark.parametrize("R", [2.0, 3.3, 5.0])
def test_enumerate_matches_brute_force(R):
    G = [["1/2", "1/3", "0", "1/4"], ["0", "1", "1/2", "0"], ["1/5", "0", "1", "0"], ["0", "1/7", "1/3", "1"]]
    L = make_lattice(G)
    pts = enumerate_points(L, R)
    ref = brute_force_points(L.gens, R, 14)
    assert len(pts) == len(ref)
    key = lambda A: sorted(map(tuple, np.round(A, 9)))
    assert key(pts) == key(ref)


def test_enumerate_basis_change_invariant():
    L = make_lattice([["1", "0"], ["0", "1"]])
    U = make_lattice([["1", "3"], ["2", "7"]])   # unimodular change: det = 1
    assert len(enumerate_points(L, 4.2)) == len(enumerate_points(U, 4.2))


def test_enumerate_complex_lattice():
    L = make_lattice([["1", "0"], ["0", "1"]])
    pts = enumerate_points(complexify(L), 1.5)
    assert pts.dtype == complex and len(pts) == 9


def test_multi_indices():
    assert multi_indices(2, 1).elements == ((0, 0), (1, 0), (0, 1))
    assert len(multi_indices(3, 2)) == 10 == math.comb(5, 3)
    assert multi_indices(2, 3).elements[:3] == multi_indices(2, 1).elements
    with pytest.raises(BadRange):
        multi_indices(0, 1)


def test_homology_indices():
    assert len(homology_indices(2, 1)) == 6
    assert homology_indices(2, 1).elements[0] == (1, 2)
    with pytest.raises(BadRange):
        homology_indices(1, 1)


SPEC = """# a comment
n = 2
0 0 1 0      # generator 1
0 0 0 1
sqrt(2) sqrt(5) 0 0
sqrt(3) sqrt(7) 0 0
"""


def test_spec_roundtrip():
    L = parse_lattice_spec(SPEC)
    assert same_lattice(L, product_lattice(*SURDS))
    again = parse_lattice_spec(format_lattice_spec(L))
    assert [list(r) for r in again.entries] == [list(r) for r in L.entries]


@pytest.mark.parametrize("text", [
    "",
    "m = 1\n1 0\n0 1\n",
    "n = one\n1 0\n0 1\n",
    "n = 1\n1 0\n",
    "n = 1\n1 0 0\n0 1\n",
    "n = 1\n1 foo\n0 1\n",
    "n = 1\n1 2\n2 4\n",
])
def test_spec_errors(text):
    with pytest.raises(LatticeSpecError):
        parse_lattice_spec(text)
