"""
R-matrices and RTT relations
============================

The universal R-matrix is only ever evaluated on a pair of modules: a weight
prefactor times an ordered product of q-exponentials of root vectors.  The
constant R-matrix intertwines the coproduct with its opposite, which is the
same as the RTT relations for the matrix coefficients.
"""

from qpbw.qscalar import qpow
from qpbw.repmod import fundamental_module, seed_module, u_w0
from qpbw.rmatrix import (constant_r, quasi_r_op, intertwining_residuals, rtt_check,
                          check_aq_sl2_relations, check_commutation_relations)
from qpbw.rootdata import root_datum

# %%
# sl2: the quasi-R-matrix on V(1) (x) V(1) is 1 + (q - q^-1) e (x) f
A1 = root_datum("A1")
V = seed_module(A1)
print("quasi-R on V(1) x V(1):", quasi_r_op((1,), V, V).entries)
for r in check_aq_sl2_relations(3):
    print("  ", r["relation"], r["status"])

# %%
# A2: independent of the reduced word, intertwining, and the lowest-vector row
A2 = root_datum("A2")
V, W = fundamental_module(A2, 1), fundamental_module(A2, 2)
R1, R2 = constant_r(V, W, (1, 2, 1)), constant_r(V, W, (2, 1, 2))
print("word independent:", R1.matrix == R2.matrix)
print("R Delta = Delta' R:", intertwining_residuals(R1))
(low, _), = u_w0(V).items()
w0w1 = A2.w0_weight(A2.fundamental_weight(1))
print("R(u_low x u_l) = q^{(w0 w1, nu)} u_low x u_l:",
      all(R1.matrix.apply({R1.index(low, l): 1}) ==
          {R1.index(low, l): qpow(A2.form(w0w1, W.weights[l]))} for l in range(W.dim)))

# %%
# RTT as functional identities on triangular monomials, and the commutation
# relations of sigma_i, sigma_i e_i, tau_i f_i with all matrix coefficients
print(rtt_check(A2, (1, 0), (1, 0), 3))
reports = check_commutation_relations(A2, 2)
print(f"{sum(r['status'] == 'pass' for r in reports)} / {len(reports)} commutation checks pass")
