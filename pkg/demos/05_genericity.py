"""Integer relations, and how rarely a random lattice has one among its minors."""

import mpmath

from gaborcert import complexify, genericity_sample, integer_relation, is_transcendental, make_lattice, parse_literal

# numeric search finds the obvious relation and nothing for independent values
with mpmath.workprec(256):
    r = integer_relation([mpmath.sqrt(2), mpmath.sqrt(8), mpmath.pi])
    print(r.kind, r.certificate)
    r = integer_relation([1, mpmath.sqrt(2), mpmath.sqrt(3), mpmath.pi], H=10**4)
    print(r.kind, "tau_cert = %.3g" % r.tau_cert if r.tau_cert else "")

# exact inputs go through the rational kernel and need no height bound
print(integer_relation([parse_literal(t) for t in ("sqrt(2)", "sqrt(8)", "1")]).certificate)

# rational lattices always carry a relation; a sqrt-product lattice does not
Q = make_lattice([["1/2", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1/2"]])
print("rational n=2:", is_transcendental(complexify(Q)).overall)

rep = genericity_sample(20, n=2, H=10**4, seed=0)
print("random lattices: %d/%d pass, failing seeds %s" % (rep.passes, rep.trials, rep.failing_seeds))

# a different seed draws different matrices but the picture is the same
rep = genericity_sample(20, n=2, H=10**4, seed=7)
print("seed 7: pass fraction %.2f" % rep.fraction)
