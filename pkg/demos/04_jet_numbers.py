"""Uniqueness and interpolation with jets on the unit lattice, and how they scale with k."""

import numpy as np

from gaborcert import (
    asymptotic_report,
    complexify,
    interpolation_number_estimate,
    is_transcendental,
    make_lattice,
    seshadri_transcendental,
    uniqueness_number_estimate,
)
from gaborcert.thresholds import jet_evaluation_matrix, jet_sigma_min

L = make_lattice([["1", "0"], ["0", "1"]])
Lc = complexify(L)
print(Lc, Lc.gens)

# closed form for the threshold; exact when the root is rational
tv = is_transcendental(Lc)
rep = seshadri_transcendental("1", 1, verdict=tv)
print("epsilon_0 =", rep.exact, " valid:", rep.valid)
print("n=2, covolume 1/8:", seshadri_transcendental("1/8", 2).exact)

# a single jet matrix: values and first derivatives at lattice points
J = jet_evaluation_matrix(Lc, k=2, s=1, R=4.0, D=30)
print("jet matrix", J.shape, " relative sigma_min (injective side): %.3e" % jet_sigma_min(J, "injective")[0])

# one weight in detail, with the ladder evidence the verdict rests on
mu = uniqueness_number_estimate(Lc, 3)
for e in mu.evidence:
    print("  s=%d  sigma_min %s  -> %s" % (e["s"], np.array2string(np.array(e["sigma_min_rel"]), precision=2), e["uniqueness"]))
print("mu_3 =", mu.value)
sig = interpolation_number_estimate(Lc, 3)
print("sigma_3 =", sig.value)

# mu_k / k and sigma_k / k both approach epsilon_0 = 1, from opposite sides
table = asymptotic_report(Lc, [2, 4, 8])
print("  k   mu  sigma  mu/k   sigma/k")
for r in table["rows"]:
    print("  %-3d %-3s %-6s %-6.3f %-6.3f" % (r["k"], r["mu"], r["sigma"], r["mu_over_k"], r["sigma_over_k"]))
