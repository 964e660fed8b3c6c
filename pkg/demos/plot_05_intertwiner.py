"""
The intertwiner between Fock representations
=============================================

F_i and F_j are isomorphic A_q-modules; the isomorphism Psi fixing the vacuum
is computed here in two independent ways: by transporting b^+-words from the
vacuum, and by solving the b^- intertwining equations block by block.  Its
matrix in the normalized bases coincides with the PBW transition matrix Gamma,
and the matrix of b_i^+ coincides with left multiplication by e_i.
"""

import time

from qpbw.dpair import transition_matrix, leftmul_matrix
from qpbw.fockrep import (intertwiner_matrix, intertwiner_solve, fock_space, b_ops,
                          to_normalized, from_normalized)
from qpbw.qscalar import ONE
from qpbw.rootdata import root_datum

for label, bound in (("A2", 3), ("B2", 2), ("G2", 1)):
    R = root_datum(label)
    ws = R.reduced_words_w0()
    i, j = ws[0], ws[-1]
    t = time.perf_counter()
    psi = intertwiner_matrix(R, i, j, bound)
    gamma = transition_matrix(R, i, j, bound)
    print(f"{label} {i} -> {j}, |m| <= {bound}: Psi = Gamma is {psi == gamma} "
          f"({len(psi.entries)} rows, {time.perf_counter() - t:.2f} s)")

# %%
# The second route (lowering equations) on complete weight blocks
A2 = root_datum("A2")
i, j = (1, 2, 1), (2, 1, 2)
solved = intertwiner_solve(A2, i, j, 4)
print("lowering-equation route agrees:",
      solved == intertwiner_matrix(A2, i, j, 0, A2.block_multiindices(i, 4)))

# %%
# b_1^+ on the weight-alpha_2 block equals left multiplication by e_1
F = fock_space(A2, i)
bp = b_ops(1, F)[0]
for m in A2.kostant_vectors(i, (0, 1)):
    image = to_normalized(F, bp(from_normalized(F, {m: ONE})))
    print("b_1^+", m, "->", {n: str(c) for n, c in image.items()})
print("rho(e_1) on the same block:", {k: str(c) for k, c in leftmul_matrix(A2, i, 1, (0, 1)).items()})
