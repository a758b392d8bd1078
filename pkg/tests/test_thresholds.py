import math
import numpy as np
import pytest

from gaborcert.errors import TruncationCapExceeded
from gaborcert.lattice import complexify, covolume_exact, make_lattice, product_lattice, scale
from gaborcert.thresholds import (
    asymptotic_report,
    interpolation_number_estimate,
    jet_evaluation_matrix,
    jet_sigma_min,
    seshadri_transcendental,
    uniqueness_number_estimate,
)
from gaborcert.transcendence import is_transcendental

UNIT = complexify(make_lattice([["1", "0"], ["0", "1"]]))


def test_seshadri_n1():
    r = seshadri_transcendental("1/2", 1)
    assert r.exact == "1/2" and r.epsilon0 == r.lambda0 == 0.5


def test_seshadri_n2():
    r = seshadri_transcendental("9/20", 2)
    assert r.exact is not None and "sqrt" in r.exact
    assert r.epsilon0 == pytest.approx(math.sqrt(0.9), rel=1e-15)


def test_seshadri_surd_covolume_and_verdict():
    L = product_lattice("sqrt(2)", "sqrt(3)", "sqrt(5)", "sqrt(7)")
    v = is_transcendental(complexify(L))
    r = seshadri_transcendental(covolume_exact(L), 2, verdict=v)
    assert r.valid is True
    assert r.epsilon0 == pytest.approx(math.sqrt(2 * (math.sqrt(15) - math.sqrt(14))), rel=1e-14)


def test_seshadri_monotone():
    vals = [seshadri_transcendental(c, 3).epsilon0 for c in (0.1, 0.5, 1.0, 2.0, 7.5)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_seshadri_rejects():
    with pytest.raises(ValueError):
        seshadri_transcendental(0, 2)
    with pytest.raises(ValueError):
        seshadri_transcendental(1.0, 0)


def test_single_point_row():
    J = jet_evaluation_matrix(UNIT, 1.0, 0, 0.1, 10)
    assert J.shape == (1, 11)
    assert np.allclose(J[0], np.eye(11)[0])
    assert 11 - np.linalg.matrix_rank(J) == 10


def test_empty_ball_has_full_kernel():
    J = jet_evaluation_matrix(UNIT, 1.0, 0, 0.5, 10, points=np.zeros((0, 1)))
    assert J.shape == (0, 11)
    assert jet_sigma_min(J, "injective")[0] == 0.0


def test_unit_lattice_k1_decays_slowly():
    # the density-one lattice is critical: the smallest singular value
    # shrinks as the section grows but stays far above 1e-6 at R = 6, D = 30
    s30 = jet_sigma_min(jet_evaluation_matrix(UNIT, 1.0, 0, 6, 30), "injective")[0]
    s80 = jet_sigma_min(jet_evaluation_matrix(UNIT, 1.0, 0, 12, 80), "injective")[0]
    assert s80 < s30
    assert s30 == pytest.approx(0.28195, abs=1e-4)
    assert uniqueness_number_estimate(UNIT, 1.0).value == 1


def test_weight_equals_scaling():
    J1 = jet_evaluation_matrix(UNIT, 2.0, 1, 3, 20)
    J2 = jet_evaluation_matrix(scale(UNIT, 2), 1.0, 1, 3 * math.sqrt(2), 20)
    s1 = np.linalg.svd(J1, compute_uv=False)
    s2 = np.linalg.svd(J2, compute_uv=False)
    assert np.max(np.abs(s1 - s2)) < 1e-10


def test_row_cap():
    with pytest.raises(TruncationCapExceeded):
        jet_evaluation_matrix(UNIT, 1.0, 0, 80, 10)


@pytest.mark.parametrize("k, mu", [(0.5, 0), (2.5, 2), (3, 3)])
def test_uniqueness_values(k, mu):
    est = uniqueness_number_estimate(UNIT, k)
    assert est.value == mu and est.status == "estimated"
    assert est.value >= 0
    assert est.evidence


@pytest.mark.parametrize("k, sigma", [(0.5, -1), (1, -1), (2.5, 1), (3, 1)])
def test_interpolation_values(k, sigma):
    est = interpolation_number_estimate(UNIT, k)
    assert est.value == sigma and est.value >= -1
    assert est.value / k <= 1


def test_sigma_non_decreasing_in_covolume():
    vals = []
    for c in ("3/5", "1", "7/5", "9/5"):
        Lc = complexify(make_lattice([[c, "0"], ["0", "1"]]))
        vals.append(interpolation_number_estimate(Lc, 2.0).value)
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    assert vals[0] < vals[-1]


def test_asymptotic_report_single_row():
    rep = asymptotic_report(UNIT, [2])
    assert len(rep["rows"]) == 1 and rep["lambda0"] == 1.0


def test_asymptotic_report_needs_increasing():
    with pytest.raises(ValueError):
        asymptotic_report(UNIT, [4, 2])


def test_bad_weight():
    with pytest.raises(ValueError):
        uniqueness_number_estimate(UNIT, 0)
    with pytest.raises(ValueError):
        jet_evaluation_matrix(UNIT, -1, 0, 1, 2)
