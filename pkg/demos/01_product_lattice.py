"""Walk a product lattice Z^2 x A Z^2 through the full certification pipeline."""

from pathlib import Path

import numpy as np

from gaborcert import (
    complexify,
    covolume,
    criterion_verdict,
    is_transcendental,
    minor_table,
    product_lattice,
    product_lattice_check,
    read_lattice_spec,
    symplectic_dual,
)

a, b, c, d = "sqrt(2)", "sqrt(3)", "sqrt(5)", "sqrt(7)"
L = product_lattice(a, b, c, d)
print("generators (columns):")
print(L.gens.round(4))

# covolume is |det A| = |sqrt(14) - sqrt(15)|
print("covolume", float(covolume(L)), "vs", abs(np.sqrt(14) - np.sqrt(15)))

# the dual of a lattice is again a lattice with reciprocal covolume
Ld = symplectic_dual(L)
print("dual covolume * covolume =", float(covolume(Ld) * covolume(L)))

# the three scalar conditions on (a, b, c, d)
chk = product_lattice_check(a, b, c, d, H=10**6)
for name, v in chk.to_dict()["conditions"].items():
    print(f"  {name:<22} {v}")
print("product check:", chk.verdict)

# same answer from the general minor-table route
Lc = complexify(L)
tab = minor_table(Lc, 1, (1, 2), ())
print("k=1 minors, P=(1,2):", np.round([complex(v) for v in tab.numeric(64)][:3], 4))
tv = is_transcendental(Lc, H=10**6)
print("transcendence:", tv.overall, "at height", tv.height)

for s in (0, 1):
    cv = criterion_verdict(L, s=s)
    print(f"s={s}: covolume {cv.covolume:.4f} < {cv.threshold}?  {cv.density_ok}  -> {cv.overall}")

# the spec files in lattices/ round-trip through the same reader
here = Path(__file__).parent / "lattices"
for f in sorted(here.glob("*.lat")):
    try:
        M = read_lattice_spec(f)
    except Exception as exc:
        print(f"{f.name:<18} rejected: {type(exc).__name__}")
        continue
    print(f"{f.name:<18} n={M.n}  covolume={float(covolume(M)):.6f}")
