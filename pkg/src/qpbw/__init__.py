"""qpbw -- exact computations with PBW bases of quantized enveloping algebras.

Submodules
----------
qscalar   elements of Q(q^{1/k}) in canonical form
rootdata  Cartan data, Weyl groups, reduced words, Kostant partitions
wordalg   e-/f-word polynomials, Chevalley involution, star, braid formulas
dpair     Drinfeld pairing, Gram coordinates, transition matrices Gamma
repmod    finite-dimensional modules, S_i operators, PBW root vectors
fockrep   tensor Fock representations, b_i^+-, the intertwiner Psi
rmatrix   universal and constant R-matrices, RTT relations
cli       command-line front end (``python -m qpbw``)
"""
from .qscalar import Scalar, qpow, q_int, q_fact, q_binom, ONE, ZERO, Q
from .rootdata import RootDatum, root_datum, parse_word
from .wordalg import EWordPoly, FWordPoly
from .dpair import pair, gram_vector, transition_gamma, transition_matrix, TransitionMatrix
from .repmod import (fundamental_module, highest_weight_module, s_op, braid_root_vector,
                     pbw_monomial, mco_eval)
from .fockrep import (FockSpace, apply_eword, psi_matrix, intertwiner_matrix, intertwiner_solve,
                      verify_relations)
from .rmatrix import constant_r, quasi_r_op, rtt_check

__version__ = "0.1.0"
