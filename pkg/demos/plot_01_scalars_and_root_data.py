"""
Exact scalars and root data
===========================

Every coefficient in the package is an element of Q(q), stored as
``q^shift * num / den`` with integer polynomials in canonical form, so that
equality is structural and printing is deterministic.
"""

from qpbw.qscalar import Q, ONE, q_int, q_fact, q_binom, Scalar
from qpbw.rootdata import root_datum

q = Q

# q-integers, q-factorials and q-binomials are symmetric Laurent polynomials
print("[3]     =", q_int(3))
print("[3]!    =", q_fact(3))
print("[4 2]   =", q_binom(4, 2))
print("[2]_{q^2} =", q_int(2, 2))

# rational functions reduce automatically; the canonical string round-trips
x = (q ** 2 - 1) / (q - q ** -1)
print("(q^2-1)/(q-q^-1) =", x, "| canonical:", x.canonical_str())
assert Scalar.parse(x.canonical_str()) == x
# the bar involution q -> q^-1 and the substitution q -> q^3
print("bar((1-q^2)/q) =", ((1 - q ** 2) / q).bar())
print("(1+q) at q^3   =", (1 + q).dilate(3))

# %%
# Root data.  Weights are written in fundamental-weight coordinates and roots
# in simple-root coordinates.  B2 has node 1 long; G2 has node 1 short.
for label in ("A2", "B2", "G2"):
    R = root_datum(label)
    words = R.reduced_words_w0()
    print(f"{label}: d = {[R.di(i) for i in R.nodes]}, {len(words)} reduced words of w0, "
          f"first {words[0]}")
    print("   convex order of positive roots:", R.root_sequence(words[0]))

# Kostant partition numbers count the PBW monomials of a given weight
A2 = root_datum("A2")
print("Kostant count of 2a1+a2 in A2:", A2.kostant_count((2, 1)))
print("dim V(rho) for A2:", A2.dim_irrep(A2.rho))
