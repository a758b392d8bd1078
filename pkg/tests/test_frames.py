from fractions import Fraction

import numpy as np
import pytest

from gaborcert.frames import (
    CERTIFIED,
    NOT_CERTIFIED,
    GaborSystem,
    criterion_verdict,
    density_threshold,
    frame_bounds_estimate,
    frame_operator_section,
    riesz_bounds_estimate,
    riesz_gram_section,
    section_tail_bound,
)
from gaborcert.lattice import make_lattice, product_lattice, symplectic_dual

SQ08 = [["sqrt(4/5)", "0"], ["0", "sqrt(4/5)"]]
SQ04 = [["sqrt(2/5)", "0"], ["0", "sqrt(2/5)"]]
RATIONAL_N2 = [["1/2", "0", "0", "0"], ["0", "1/2", "0", "0"], ["0", "0", "1", "0"], ["1/3", "0", "0", "1"]]

# frozen from this implementation's converged ladder
ANCHOR_09_R6_D20 = 0.7046459874683859


def test_single_point_is_projector():
    L = make_lattice([["1", "0"], ["0", "1"]])
    S = frame_operator_section(GaborSystem(L, 0, D=8), points=np.zeros((1, 2)))
    E = np.zeros((9, 9))
    E[0, 0] = 1
    assert np.allclose(S, E, atol=1e-15)


def test_empty_point_set_gives_zero_section():
    L = make_lattice([["1", "0"], ["0", "1"]])
    S = frame_operator_section(GaborSystem(L, 0, D=8), points=np.zeros((0, 2)))
    ev = np.linalg.eigvalsh(S)
    assert ev[0] == ev[-1] == 0


def test_section_hermitian_psd():
    L = make_lattice([["1/2", "1/3"], ["0", "3/2"]])
    S = frame_operator_section(GaborSystem(L, 2, R=5, D=15))
    assert np.max(np.abs(S - S.conj().T)) <= 1e-12
    ev = np.linalg.eigvalsh(S)
    assert ev[0] >= -1e-10 * ev[-1]


def test_section_anchor_09():
    L = make_lattice([["9/10", "0"], ["0", "9/10"]])
    lam = np.linalg.eigvalsh(frame_operator_section(GaborSystem(L, 0, R=6, D=20)))[0]
    assert lam > 0.05
    assert lam == pytest.approx(ANCHOR_09_R6_D20, rel=1e-9)


def test_diagonal_monotone_in_radius():
    L = make_lattice(SQ08)
    prev = None
    for R in (1, 2, 3, 4):
        d = np.real(np.diag(frame_operator_section(GaborSystem(L, 1, R=R, D=12))))
        if prev is not None:
            assert np.all(d >= prev - 1e-15)
        prev = d


def test_tail_bound_dominates_omitted_trace():
    L = make_lattice(SQ08)
    R, D, s = 2.5, 12, 1
    tr_R = np.trace(frame_operator_section(GaborSystem(L, s, R=R, D=D))).real
    tr_big = np.trace(frame_operator_section(GaborSystem(L, s, R=12, D=D))).real
    assert 0 <= tr_big - tr_R <= section_tail_bound(L, R, D, s)


def test_covolume_08_ladder_stable():
    est = frame_bounds_estimate(GaborSystem(make_lattice(SQ08), 0))
    assert est.A_est > 0.5
    assert est.drift < 0.2
    assert 0 <= est.A_est <= est.B_est
    assert est.tail_bound < 1e-40
    assert len(est.monotonicity) == 2


def test_von_neumann_regression():
    # the section only decays slowly at these sizes; recorded, not a limit claim
    est = frame_bounds_estimate(GaborSystem(make_lattice([["1", "0"], ["0", "1"]]), 0), ladder=((8, 10), (8, 40)))
    ratio = est.ladder[0]["A"] / est.ladder[1]["A"]
    assert ratio == pytest.approx(2.4378, abs=1e-3)


def test_riesz_single_element():
    L = make_lattice([["1", "0"], ["0", "1"]])
    G = riesz_gram_section(L, 0, 0.5)
    assert np.allclose(G, [[1]])


def test_riesz_gram_psd_and_entry():
    L = symplectic_dual(make_lattice(SQ04))
    G = riesz_gram_section(L, 1, 4)
    assert np.linalg.eigvalsh(G)[0] >= -1e-12
    assert np.max(np.abs(G - G.conj().T)) < 1e-13


def test_riesz_dual_of_super_lattice():
    L = make_lattice(SQ04)
    est = riesz_bounds_estimate(symplectic_dual(L), 1, radii=(4, 6, 8))
    A = [r["A"] for r in est.ladder]
    assert min(A) > 0.3
    assert est.drift < 0.2


def test_ron_shen_direction_s0():
    L = make_lattice(SQ08)
    assert frame_bounds_estimate(GaborSystem(L, 0)).A_est > 0
    assert riesz_bounds_estimate(symplectic_dual(L), 0).A_est > 0.3


def test_density_thresholds():
    assert density_threshold(1, 2, "multiwindow") == 3
    assert density_threshold(2, 0, "multiwindow") == Fraction(1, 2)
    assert density_threshold(1, 1, "super") == Fraction(1, 2)
    assert density_threshold(2, 1, "super") == Fraction(2, 9)


def test_criterion_n1():
    v = criterion_verdict(make_lattice(SQ08), s=0)
    assert v.overall == CERTIFIED and v.density_ok
    assert v.transcendence.height is None


def test_criterion_product_lattice():
    v = criterion_verdict(product_lattice("sqrt(2)", "sqrt(3)", "sqrt(5)", "sqrt(7)"), s=0)
    assert v.overall == CERTIFIED
    assert v.transcendence.height == 10**6


@pytest.mark.parametrize("s", [0, 1, 2])
def test_criterion_rational_n2(s):
    v = criterion_verdict(make_lattice(RATIONAL_N2), s=s)
    assert v.overall == NOT_CERTIFIED
    assert v.transcendence.certificate is not None


def test_criterion_super_uses_dual():
    v = criterion_verdict(make_lattice(SQ04), s=1, mode="super")
    assert v.overall == CERTIFIED and v.threshold == Fraction(1, 2)
    assert not criterion_verdict(make_lattice(SQ08), s=1, mode="super").density_ok


def test_criterion_alt_threshold_recorded():
    v = criterion_verdict(make_lattice([["3/2", "0"], ["0", "1"]]), s=1)
    assert v.density_ok and v.alt_threshold == 1 and v.alt_density_ok is False
    assert v.alt_threshold_note


def test_criterion_basis_invariance():
    L = product_lattice("sqrt(2)", "sqrt(3)", "sqrt(5)", "sqrt(7)")
    U = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 2, 1, 0], [0, 0, 1, 1]]
    cols = L.generators()
    new = [[sum((cols[k][i] * U[k][j] for k in range(4)), cols[0][0] * 0) for i in range(4)] for j in range(4)]
    L2 = L.with_generators(new)
    a, b = criterion_verdict(L, s=0), criterion_verdict(L2, s=0)
    assert a.overall == b.overall and a.covolume == pytest.approx(b.covolume, rel=1e-14)


def test_frame_system_validation():
    L = make_lattice(SQ08)
    with pytest.raises(ValueError):
        GaborSystem(L, -1)
    with pytest.raises(ValueError):
        GaborSystem(L, 5, D=3)
    with pytest.raises(ValueError):
        GaborSystem(L, 0, mode="other")
