import mpmath
import numpy as np
import pytest

from gaborcert.errors import BadFormIndex, BadRange, WrongDimension
from gaborcert.exact import Surd
from gaborcert.lattice import ComplexLattice, complexify, homology_indices, make_lattice, product_lattice
from gaborcert.relations import RELATION_FOUND, integer_relation
from gaborcert.transcendence import (
    NOT_TRANSCENDENTAL,
    TRANSCENDENTAL,
    form_indices,
    genericity_sample,
    is_transcendental,
    minor_table,
    n2_shortcut,
    product_lattice_check,
)
from oracles import permutation_det

SURDS = ("sqrt(2)", "sqrt(3)", "sqrt(5)", "sqrt(7)")
RATIONAL_N2 = [["1/2", "0", "0", "0"], ["0", "1/2", "0", "0"], ["0", "0", "1", "0"], ["1/3", "0", "0", "1"]]


def _expected_product_minors():
    a, b, c, d = (Surd.sqrt(m) for m in (2, 3, 5, 7))
    i = Surd.i()
    return [Surd.rational(1), b * c - a * d, i * a, i * b, i * c, i * d]


def _match_up_to_sign(got, expected):
    left = list(expected)
    for g in got:
        hit = next((e for e in left if e == g or e == -g), None)
        if hit is None:
            return False
        left.remove(hit)
    return not left


def test_product_lattice_minors_exact():
    Lc = complexify(product_lattice(*SURDS))
    t = minor_table(Lc, 1, (1, 2), ())
    assert t.exact and len(t.values) == 6
    assert _match_up_to_sign(t.values, _expected_product_minors())


def test_product_lattice_minors_numeric():
    with mpmath.workprec(256):
        a, b, c, d = (mpmath.sqrt(m) for m in (2, 3, 5, 7))
        L = make_lattice([[0, 0, a, b], [0, 0, c, d], [1, 0, 0, 0], [0, 1, 0, 0]])
    t = minor_table(complexify(L), 1, (1, 2), ())
    exp = [complex(float(v.real()), float(v.imag())) for v in _expected_product_minors()]
    got = [complex(v) for v in t.values]
    for g in got:
        assert min(min(abs(g - e), abs(g + e)) for e in exp) < 1e-12


def test_n2_shortcut_agrees_with_minor_table():
    Lc = complexify(product_lattice(*SURDS))
    t = minor_table(Lc, 1, (1, 2), ())
    assert _match_up_to_sign(n2_shortcut(Lc), t.values)


def test_n2_shortcut_wrong_dimension():
    with pytest.raises(WrongDimension):
        n2_shortcut(complexify(make_lattice([["1", "0"], ["0", "1"]])))


def test_n3_minors_vs_permutation_oracle():
    rng = np.random.default_rng(7)
    G = rng.uniform(-1, 1, (6, 6))
    L = make_lattice(G.tolist(), prec=128)
    Lc = complexify(L)
    t = minor_table(Lc, 2, (1, 2, 3), (2,))
    C = Lc.gens     # n x 2n complex
    for i, val in zip(t.indices, t.values):
        M = [[C[0, g - 1], C[1, g - 1], C[2, g - 1], np.conj(C[1, g - 1])] for g in i]
        assert abs(complex(val) - permutation_det(M)) < 1e-12
    assert len(t.indices) == 15


def test_form_indices():
    assert form_indices(2, 1) == [((1, 2), ())]
    forms = form_indices(3, 2)
    assert ((1, 2, 3), (2,)) in forms and all(len(P) > len(Q) for P, Q in forms)
    with pytest.raises(BadFormIndex):
        minor_table(complexify(product_lattice(*SURDS)), 1, (2, 1), ())
    with pytest.raises(BadFormIndex):
        minor_table(complexify(product_lattice(*SURDS)), 1, (1,), (2,))
    assert form_indices(1, 1) == []
    with pytest.raises(BadRange):
        homology_indices(1, 1)


def test_n1_is_vacuous():
    v = is_transcendental(complexify(make_lattice([["1/2", "0"], ["0", "2"]])))
    assert v.overall == TRANSCENDENTAL and v.height is None


def test_rational_lattice_not_transcendental():
    v = is_transcendental(complexify(make_lattice(RATIONAL_N2)))
    assert v.overall == NOT_TRANSCENDENTAL
    assert v.mode == "exact"
    a = v.certificate["a"]
    Lc = complexify(make_lattice(RATIONAL_N2))
    t = minor_table(Lc, 1, (1, 2), ())
    assert sum((x * y for x, y in zip(a, t.values)), Surd()).is_zero()


def test_rational_lattice_numeric_agrees():
    v = is_transcendental(complexify(make_lattice(RATIONAL_N2)), mode="numeric")
    assert v.overall == NOT_TRANSCENDENTAL


def test_repeated_generator_gives_zero_minor():
    # a degenerate generator family (e_3 = e_1) built directly, bypassing the
    # nonsingularity check of make_lattice
    r2, r3, r5 = (Surd.sqrt(m) for m in (2, 3, 5))
    one, i = Surd.rational(1), Surd.i()
    Lc = ComplexLattice(n=2, entries=((one, i * r2, one, r3), (i * r5, one, i * r5, i)))
    minors = n2_shortcut(Lc)
    assert any(m.is_zero() for m in minors)
    v = integer_relation(minors, mode="exact")
    assert v.kind == RELATION_FOUND


def test_product_lattice_transcendental():
    Lc = complexify(product_lattice(*SURDS))
    v = is_transcendental(Lc, H=10**6, p=256)
    assert v.overall == TRANSCENDENTAL and v.height == 10**6 and v.mode == "numeric"
    w = is_transcendental(Lc, mode="exact")
    assert w.overall == TRANSCENDENTAL and w.height is None


def test_product_lattice_check():
    good = product_lattice_check(*SURDS)
    assert good.verdict == "FrameCertifiedUpToHeight"
    assert good.det_irrational is True and good.independent is True and good.small_covolume
    rational = product_lattice_check("1/2", "1/3", "1/5", "1/7")
    assert rational.verdict == "NotCertifiedByCriterion"
    assert rational.det_irrational is False
    dependent = product_lattice_check("sqrt(2)", "2*sqrt(2)", "sqrt(3)", "sqrt(5)")
    assert dependent.independent is False
    assert dependent.verdict == "NotCertifiedByCriterion"


def test_genericity_small_and_deterministic():
    a = genericity_sample(3, n=2, H=10**4, seed=11)
    b = genericity_sample(3, n=2, H=10**4, seed=11)
    assert a.to_dict() == b.to_dict()
    assert a.passes == 3


def test_genericity_injected_rational_sampler_fails():
    rep = genericity_sample(1, n=2, H=10**4, seed=0, sampler=lambda ts, n, p: RATIONAL_N2)
    assert rep.passes == 0 and rep.failing_seeds == [0]
