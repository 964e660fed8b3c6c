"""
Fock representations of the quantized coordinate ring
=====================================================

For a reduced word i the tensor product F_i of q_k-oscillator Fock modules
carries an action of A_q(g): a matrix coefficient of a module V acts through
the iterated coproduct as a contraction over intermediate basis vectors of V.
From the matrix coefficients one builds diagonal operators sigma_i, tau_i
and q-boson operators b_i^+-, and the vacuum orbit of b^+ realizes U_q^+.
"""

from qpbw.fockrep import (FockSpace, apply_eword, sigma_op, tau_op, sigma_closed_form,
                          tau_closed_form, verify_relations, b_ops)
from qpbw.qscalar import ONE
from qpbw.rootdata import root_datum
from qpbw.wordalg import EWordPoly, serre_element

# %%
# Rank one: e^m applied to the vacuum is the normalized vector |m>>
A1 = root_datum("A1")
F = FockSpace(A1, (1,))
for m in range(5):
    v = apply_eword(EWordPoly.word(A1, (1,) * m), F)
    print(f"e^{m}|0> =", {n: str(c) for n, c in v.items()})

# %%
# sigma and tau are diagonal with closed-form eigenvalues
A2 = root_datum("A2")
F = FockSpace(A2, (1, 2, 1))
S, T = sigma_op(F, 1), tau_op(F, 1)
for m in [(0, 0, 0), (1, 0, 2), (2, 1, 0)]:
    print(m, "sigma_1:", S.diagonal_value(m), " tau_1:", T.diagonal_value(m),
          " closed forms agree:", S.diagonal_value(m) == sigma_closed_form(F, (1, 0), m)
          and T.diagonal_value(m) == tau_closed_form(F, (1, 0), m))

# %%
# b_i^- kills the vacuum and the q-Serre elements act by zero
print("b_1^-|0> =", b_ops(1, F)[1](F.vacuum()))
print("Serre element on the vacuum:", apply_eword(serre_element(A2, 1, 2), F))

# %%
# All q-boson relations on a window of basis vectors
reports = verify_relations(F, F.window(2))
print(f"{sum(r['status'] == 'pass' for r in reports)} / {len(reports)} relation checks pass")
for r in reports[:6]:
    print("  ", r["relation"], r["status"])
