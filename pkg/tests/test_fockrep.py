import itertools

import pytest

from qpbw.dpair import transition_gamma, transition_matrix
from qpbw.fockrep import (FockSpace, pi_sl2_t, sl2_mco_poly, apply_eword, b_ops, sigma_op, tau_op,
                          psi_matrix, intertwiner_matrix, intertwiner_solve, verify_relations,
                          normalization_factor, sigma_closed_form, tau_closed_form,
                          sigma_lambda_op, check_vacuum_orbit, check_serre_fock, check_spectra,
                          sl2_relation_reports, fock_space, mco_op, _phi_apply)
from qpbw.qscalar import Q, ONE, ZERO, qpow, q_int
from qpbw.repmod import seed_module, highest_weight_module, mco_eval, pbw_monomial
from qpbw.rootdata import root_datum
from qpbw.wordalg import EWordPoly, serre_element

q = Q


def test_pi_sl2_t():
    assert pi_sl2_t(1, 1)(0) == {}
    assert pi_sl2_t(1, 1)(3) == {2: ONE - q ** 6}
    for m in range(4):
        assert pi_sl2_t(2, 1)(m) == {m: -q ** (m + 1)}
        assert pi_sl2_t(2, 2)(m) == {m + 1: ONE}
        assert pi_sl2_t(1, 2, 2)(m) == {m: q ** (2 * m)}
    with pytest.raises(ValueError):
        pi_sl2_t(0, 1)


def test_sl2_mco_poly_small():
    for a, b in itertools.product((1, 2), repeat=2):
        assert sl2_mco_poly(1, a - 1, b - 1) == {((a, b),): ONE}
    for l in range(1, 4):
        assert sl2_mco_poly(l, 0, 0) == {((1, 1),) * l: ONE}


def _u_vectors(V, l):
    u = [{V.highest_index(): ONE}]
    for t in range(1, l + 1):
        w = V.apply_f(1, u[-1])
        u.append({b: c / q_int(t) for b, c in w.items()})
    return u


@pytest.mark.parametrize("l", [1, 2, 3])
def test_sl2_mco_poly_evaluation_oracle(l):
    """Phi^{(l)}_{s,t} evaluated on f^a k^c e^b equals <v_s, f^a k^c e^b u_t> on V(l)."""
    A1 = root_datum("A1")
    V1 = seed_module(A1)
    V = highest_weight_module(A1, (l,))
    u = _u_vectors(V, l)
    elements = [(f, (c,), e) for f in [(), (1,), (1, 1)] for e in [(), (1,), (1, 1)] for c in (0, 1)]
    for s, t in itertools.product(range(l + 1), repeat=2):
        poly = sl2_mco_poly(l, s, t)
        for fw, kc, ew in elements:
            vec = dict(u[t])
            for a in reversed(ew):
                vec = V.apply_e(a, vec)
            vec = {b: c * qpow(kc[0] * V.weights[b][0]) for b, c in vec.items()}
            for a in reversed(fw):
                vec = V.apply_f(a, vec)
            # coefficient of u_s (weight spaces of V(l) are one-dimensional)
            (b0, c0), = u[s].items()
            direct = vec.get(b0, ZERO) / c0
            via = ZERO
            for mono, c in poly.items():
                factors = [({a - 1: ONE}, {b - 1: ONE}, V1) for a, b in mono]
                via = via + c * mco_eval(factors, (fw, kc, ew))
            assert via == direct, (s, t, fw, kc, ew)


def test_dilation_regression():
    """Coefficients of Phi^{(l)} must be taken at q_j = q^d on a long-root factor."""
    # Phi^{(2)}_{1,1} acting on the vacuum of F_{q^3}: compare with substituting q -> q^3
    for l, s, t in [(2, 1, 1), (3, 1, 2), (3, 2, 1)]:
        for m in range(3):
            plain = _phi_apply(l, s, t, 1, m)
            dil = _phi_apply(l, s, t, 3, m)
            assert dil == {k: c.dilate(3) for k, c in plain.items()}


def test_vacuum_formula_A1():
    F = fock_space("A1", (1,))
    for m in range(7):
        assert apply_eword(EWordPoly.word(F.datum, (1,) * m), F) == {(m,): ONE}
    bp, bm = b_ops(1, F)
    for m in range(5):
        # b^+ |m>> = |m+1>> in the normalized basis
        v = bp({(m,): normalization_factor(F, (m,))})
        assert v == {(m + 1,): normalization_factor(F, (m + 1,))}
    assert apply_eword(EWordPoly.one(F.datum), F) == {(0,): ONE}


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
def test_b_minus_kills_vacuum(label):
    R = root_datum(label)
    F = fock_space(R, R.reduced_words_w0()[0])
    for i in R.nodes:
        assert b_ops(i, F)[1](F.vacuum()) == {}


def test_sigma_examples(A2):
    F = FockSpace(A2, (1, 2, 1))
    S = sigma_op(F, 1)
    for m in F.window(3):
        assert S.diagonal_value(m) == q ** (m[0] + m[1])
        assert sigma_closed_form(F, (1, 0), m) == q ** (m[0] + m[1])
    T = tau_op(F, 1)
    for m in F.window(2):
        assert T.diagonal_value(m) == tau_closed_form(F, (1, 0), m)


def test_spectra_A2_B2(A2, B2):
    for R, bound in ((A2, 2), (B2, 1)):
        w = R.reduced_words_w0()[0]
        lams = [R.fundamental_weight(i) for i in R.nodes] + [R.rho]
        assert all(r["status"] == "pass" for r in check_spectra(R, w, lams, bound))


def test_exchange_relation_example(A2):
    F = FockSpace(A2, (1, 2, 1))
    bp2, _ = b_ops(2, F)
    _, bm1 = b_ops(1, F)
    for m in F.window(3):
        lhs = bm1(bp2({m: ONE}))
        rhs = {n: c * q for n, c in bp2(bm1({m: ONE})).items()}
        assert lhs == rhs


@pytest.mark.parametrize("label,word,bound", [("A1", (1,), 4), ("A2", (1, 2, 1), 2),
                                              ("A2", (2, 1, 2), 2), ("B2", (1, 2, 1, 2), 1),
                                              ("G2", (1, 2, 1, 2, 1, 2), 1)])
def test_verify_relations(label, word, bound):
    F = FockSpace(root_datum(label), word)
    reports = verify_relations(F, F.window(bound))
    bad = [r for r in reports if r["status"] != "pass"]
    assert not bad, bad[:3]


def test_sl2_relations():
    assert all(r["status"] == "pass" for r in sl2_relation_reports([1, 2, 3], 5))


def test_psi_examples(A2):
    i, j = (1, 2, 1), (2, 1, 2)
    assert psi_matrix(A2, i, j, (0, 1, 0)) == {(1, 0, 1): ONE - q ** 2, (0, 1, 0): -q}
    assert psi_matrix(A2, i, j, (1, 0, 1)) == {(1, 0, 1): q, (0, 1, 0): ONE}
    assert psi_matrix(A2, i, i, (2, 0, 1)) == {(2, 0, 1): ONE}


@pytest.mark.parametrize("label,bound", [("A2", 2), ("B2", 1), ("G2", 1)])
def test_psi_equals_gamma_small(label, bound):
    R = root_datum(label)
    ws = R.reduced_words_w0()
    assert intertwiner_matrix(R, ws[0], ws[-1], bound) == transition_matrix(R, ws[0], ws[-1], bound)


@pytest.mark.parametrize("label,H", [("A2", 4), ("B2", 3), ("G2", 2)])
def test_intertwiner_second_route(label, H):
    R = root_datum(label)
    ws = R.reduced_words_w0()
    ms = R.block_multiindices(ws[0], H)
    assert intertwiner_solve(R, ws[0], ws[-1], H) == intertwiner_matrix(R, ws[0], ws[-1], 0, ms)


@pytest.mark.parametrize("label,bound", [("A1", 4), ("A2", 3), ("B2", 2)])
def test_vacuum_orbit(label, bound):
    R = root_datum(label)
    for w in (R.reduced_words_w0()[0], R.reduced_words_w0()[-1]):
        assert check_vacuum_orbit(R, w, bound)["status"] == "pass"


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
def test_serre_killed(label):
    R = root_datum(label)
    assert all(r["status"] == "pass" for r in check_serre_fock(R, R.reduced_words_w0()[0]))


def test_mco_op_weight_shift(A2):
    """Phi(v (x) u) shifts the Fock weight by w0(wt u) - wt v."""
    F = FockSpace(A2, (1, 2, 1))
    V = highest_weight_module(A2, (1, 0))

    def fund(gamma):  # simple-root coordinates -> fundamental coordinates
        return tuple(sum(A2.a(i, j) * g for j, g in zip(A2.nodes, gamma)) for i in A2.nodes)

    for a, b in itertools.product(range(V.dim), repeat=2):
        expected = tuple(x - y for x, y in zip(A2.w0_weight(V.weights[b]), V.weights[a]))
        op = mco_op(V, {a: ONE}, {b: ONE}, F)
        for m in F.window(2):
            for n in op.on_basis(m):
                diff = tuple(x - y for x, y in zip(F.weight(n), F.weight(m)))
                assert fund(diff) == expected
