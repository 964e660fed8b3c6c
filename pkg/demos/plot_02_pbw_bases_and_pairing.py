"""
PBW root vectors and the Drinfeld pairing
=========================================

Root vectors are obtained from the generators through Lusztig's braid
automorphisms along a reduced word of the longest Weyl group element.  The
Drinfeld pairing between the positive and negative halves, computed from its
Hopf-algebra axioms, makes every element of U_q^+ a vector of "Gram
coordinates" (its pairings with all f-words of the same weight).  The pairing
kills the q-Serre elements, so these coordinates are faithful on U_q^+.
"""

from qpbw.dpair import pair, gram_vector, coords_in_basis, check_lusztig, lusztig_value
from qpbw.qscalar import Q, ONE
from qpbw.repmod import braid_root_vector, pbw_monomial
from qpbw.rootdata import root_datum
from qpbw.wordalg import EWordPoly, FWordPoly, serre_element

q = Q
A2 = root_datum("A2")
word = (1, 2, 1)

# %%
# The middle root vector of the word (1, 2, 1) is a q-commutator of e_1, e_2
for k in range(1, 4):
    print(f"e_{k} =", braid_root_vector(A2, word, k, "e"))

# %%
# Pairing values from the axioms
e1, f1 = EWordPoly.gen(A2, 1), FWordPoly.gen(A2, 1)
print("(e1, f1)       =", pair(e1, f1))
print("(e1 e2, f1 f2) =", pair(EWordPoly.word(A2, (1, 2)), FWordPoly.word(A2, (1, 2))))
print("(e1 e2, f2 f1) =", pair(EWordPoly.word(A2, (1, 2)), FWordPoly.word(A2, (2, 1))))

# the q-Serre element has zero Gram coordinates
print("Gram vector of a Serre element is zero:", gram_vector(serre_element(A2, 1, 2)).is_zero())

# %%
# Coordinates in a basis come from an exact linear solve on Gram vectors
basis = [EWordPoly.word(A2, (2, 1)), EWordPoly.word(A2, (1, 2)) - EWordPoly.word(A2, (2, 1)).scale(q)]
print("e1 e2 in the basis:", [str(c) for c in coords_in_basis(EWordPoly.word(A2, (1, 2)), basis)])

# %%
# PBW monomials are orthogonal, with the diagonal values of Lusztig's formula
m = (1, 1, 1)
print("diagonal value at m = (1,1,1):", lusztig_value(A2, word, m))
for label, bound in (("A2", 2), ("B2", 2), ("G2", 1)):
    R = root_datum(label)
    print(label, check_lusztig(R, R.reduced_words_w0()[0], bound))
