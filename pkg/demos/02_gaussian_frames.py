"""Finite sections of the Gaussian frame operator, and what happens at the critical density."""

import numpy as np

from gaborcert import GaborSystem, criterion_verdict, frame_bounds_estimate, make_lattice
from gaborcert.frames import frame_operator_section, section_tail_bound

# a square lattice of covolume 0.8 sits below the s=0 threshold of 1
L = make_lattice([["sqrt(4/5)", "0"], ["0", "sqrt(4/5)"]])
print(criterion_verdict(L, s=0).overall)

sys = GaborSystem(L, 0, R=6, D=20)
S = frame_operator_section(sys)
print("section shape", S.shape, "hermitian:", np.allclose(S, S.conj().T))
ev = np.linalg.eigvalsh(S)
print("eigenvalues of the section: min %.6f  max %.6f" % (ev[0], ev[-1]))
print("tail bound at R=6, D=20: %.2e" % section_tail_bound(L, 6, 20, 0))

est = frame_bounds_estimate(sys)
for row in est.ladder:
    print("  R=%-4g D=%-3d  A=%.6f  B=%.6f" % (row["R"], row["D"], row["A"], row["B"]))
print("relative drift of A: %.3f" % est.drift)

# more windows buy more room: covolume 3/2 needs s >= 1
R = make_lattice([["3/2", "0"], ["0", "1"]])
for s in range(3):
    v = criterion_verdict(R, s=s)
    print(f"covolume 3/2, s={s}: {v.overall}")

# at covolume 1 the Gaussian alone is not a frame; the section minimum
# keeps shrinking as the Hermite cutoff grows, just slowly
V = make_lattice([["1", "0"], ["0", "1"]])
vn = frame_bounds_estimate(GaborSystem(V, 0), ladder=((8, 10), (8, 20), (8, 40)))
for row in vn.ladder:
    print("  von Neumann D=%-3d  A=%.5f" % (row["D"], row["A"]))
print("A(D=10)/A(D=40) = %.3f" % (vn.ladder[0]["A"] / vn.ladder[-1]["A"]))
