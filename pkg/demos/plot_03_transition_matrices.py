"""
Transition matrices between PBW bases
=====================================

Two reduced words i, j of w0 give two PBW bases of U_q^+; the transition
matrix Gamma expresses one in terms of the other.  It is block diagonal for the
weight grading and Gamma(i->j) Gamma(j->i) is the identity.
"""

from qpbw.dpair import transition_gamma, transition_matrix
from qpbw.rootdata import root_datum

A2 = root_datum("A2")
i, j = (1, 2, 1), (2, 1, 2)

# the weight alpha_1 + alpha_2 block
for m in [(1, 0, 1), (0, 1, 0)]:
    print(f"Gamma_{m} =", {n: str(c) for n, c in transition_gamma(A2, i, j, m).items()})

# %%
# A whole matrix up to |m| <= 3, printed block by block
G = transition_matrix(A2, i, j, 3)
for weight, rows in G.blocks().items():
    print("block", weight, ":", len(rows), "rows")

# %%
# Composition needs complete weight blocks, so use all multi-indices of
# weight height <= 4 rather than a degree window.
for label in ("A2", "B2", "G2"):
    R = root_datum(label)
    ws = R.reduced_words_w0()
    a, b = ws[0], ws[-1]
    H = {"A2": 4, "B2": 3, "G2": 2}[label]
    fwd = transition_matrix(R, a, b, 0, R.block_multiindices(a, H))
    back = transition_matrix(R, b, a, 0, R.block_multiindices(b, H))
    print(f"{label}: Gamma o Gamma = id on height <= {H}:", fwd.compose(back).is_identity())
