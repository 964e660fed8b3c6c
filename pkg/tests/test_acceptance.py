"""Acceptance criteria, one test per criterion.

Each test records a verdict in ``RESULTS``; the pytest terminal summary (see
conftest.py) prints one PASS/FAIL line per criterion, and running this file
directly (``python3 tests/test_acceptance.py``) does the same.
"""
import itertools
import time

import pytest

from qpbw.dpair import (check_lusztig, check_serre_gram, leftmul_matrix, transition_matrix, pair)
from qpbw.fockrep import (FockSpace, apply_eword, b_ops, check_serre_fock, check_spectra,
                          fock_space, from_normalized, intertwiner_matrix, intertwiner_solve,
                          to_normalized, verify_relations)
from qpbw.qscalar import ONE
from qpbw.repmod import check_braid_relations
from qpbw.rmatrix import check_aq_sl2_relations, rtt_check
from qpbw.rootdata import root_datum
from qpbw.wordalg import EWordPoly, serre_element

CRITERIA = {
    1: "sl2 vacuum formula: apply_eword(e^m) = |m>> for m <= 6 (< 1 s)",
    2: "Lusztig diagonal pairing: A2 |m|<=3, B2 |m|<=2, G2 |m|<=1 (< 5 min)",
    3: "Psi = Gamma: A2 |m|<=3, B2 |m|<=2",
    4: "pi(b_i^+) = rho(e_i): A2 blocks of height <= 4, A3 height <= 3",
    5: "braid relations of S_i on V(rho): A2, B2, G2",
    6: "sigma/tau closed forms = Delta-expansion on A2, lambda in {w_i, rho}",
    7: "q-boson relations and b+/b- commutations with matrix coefficients: A1, A2",
    8: "RTT: A1 seven relations incl. determinant; A2 w1 x w1 height <= 3",
    9: "Gamma o Gamma = id and Psi o Psi = id on tested blocks",
    10: "gram_vector and apply_eword kill q-Serre elements: A2, B2, G2",
}
RESULTS = {}


def summary_lines():
    out = []
    for n, name in CRITERIA.items():
        if n in RESULTS:
            ok, secs = RESULTS[n]
            out.append(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({secs:7.2f} s)  {name}")
    return out


class record:
    """Context manager storing the verdict of criterion ``n``."""

    def __init__(self, n):
        self.n = n

    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.t
        RESULTS[self.n] = (exc_type is None, self.elapsed)
        return False


def _words(R):
    ws = R.reduced_words_w0()
    return ws[0], ws[-1]


def _passed(reports):
    bad = [r for r in reports if r["status"] != "pass"]
    assert not bad, bad[:3]


def test_criterion_01_vacuum_formula():
    with record(1) as rec:
        R = root_datum("A1")
        F = FockSpace(R, (1,))   # fresh instance: no warm caches
        for m in range(7):
            assert apply_eword(EWordPoly.word(R, (1,) * m), F) == {(m,): ONE}
    assert rec.elapsed < 1.0


def test_criterion_02_lusztig():
    with record(2) as rec:
        for label, bound in (("A2", 3), ("B2", 2), ("G2", 1)):
            R = root_datum(label)
            for w in _words(R):
                _passed([check_lusztig(R, w, bound)])
    assert rec.elapsed < 300


def test_criterion_03_psi_equals_gamma():
    with record(3):
        for label, bound in (("A2", 3), ("B2", 2)):
            R = root_datum(label)
            i, j = _words(R)
            for a, b in ((i, j), (j, i)):
                psi = intertwiner_matrix(R, a, b, bound)
                gam = transition_matrix(R, a, b, bound)
                assert psi.diff(gam) == []
                assert psi == gam


def _pi_equals_rho(R, word, H):
    """b_i^+ in the normalized basis vs rho(e_i), on every source block of height <= H."""
    F = fock_space(R, word)
    for gamma in itertools.product(range(H + 1), repeat=R.rank):
        for i in R.nodes:
            if sum(gamma) > H:
                continue
            bp, _ = b_ops(i, F)
            pi = {}
            for m in R.kostant_vectors(word, gamma):
                for n, c in to_normalized(F, bp(from_normalized(F, {m: ONE}))).items():
                    pi[(n, m)] = c
            assert pi == leftmul_matrix(R, word, i, gamma), (R.label, word, i, gamma)


def test_criterion_04_pi_equals_rho():
    with record(4):
        A2 = root_datum("A2")
        for w in _words(A2):
            _pi_equals_rho(A2, w, 4)
        A3 = root_datum("A3")
        for w in _words(A3):
            _pi_equals_rho(A3, w, 3)


def test_criterion_05_braid():
    with record(5):
        for label in ("A2", "B2", "G2"):
            reports = check_braid_relations(root_datum(label))
            assert reports
            _passed(reports)


def test_criterion_06_spectra():
    with record(6):
        A2 = root_datum("A2")
        lams = [A2.fundamental_weight(i) for i in A2.nodes] + [A2.rho]
        for w in _words(A2):
            _passed(check_spectra(A2, w, lams, 3))


def test_criterion_07_fock_relations():
    with record(7):
        F = FockSpace("A1", (1,))
        _passed(verify_relations(F, F.window(6)))
        A2 = root_datum("A2")
        for w in _words(A2):
            F = FockSpace(A2, w)
            _passed(verify_relations(F, F.window(3)))


def test_criterion_08_rtt():
    with record(8):
        reports = check_aq_sl2_relations(3)
        assert len(reports) == 7
        _passed(reports)
        _passed([rtt_check(root_datum("A2"), (1, 0), (1, 0), 3)])


def test_criterion_09_inverses():
    with record(9):
        for label, H in (("A2", 4), ("B2", 3), ("G2", 2)):
            R = root_datum(label)
            i, j = _words(R)
            mi, mj = R.block_multiindices(i, H), R.block_multiindices(j, H)
            G, Gi = transition_matrix(R, i, j, 0, mi), transition_matrix(R, j, i, 0, mj)
            assert G.compose(Gi).is_identity() and Gi.compose(G).is_identity()
            P, Pi = intertwiner_matrix(R, i, j, 0, mi), intertwiner_matrix(R, j, i, 0, mj)
            assert P.compose(Pi).is_identity() and Pi.compose(P).is_identity()
            # second route for Psi (lowering equations) agrees on the same blocks
            assert intertwiner_solve(R, i, j, H) == P


def test_criterion_10_serre():
    with record(10):
        for label in ("A2", "B2", "G2"):
            R = root_datum(label)
            _passed(check_serre_gram(R))
            for w in _words(R):
                _passed(check_serre_fock(R, w))
            for a, b in itertools.permutations(R.nodes, 2):
                assert apply_eword(serre_element(R, a, b, "e"), fock_space(R, _words(R)[0])) == {}


if __name__ == "__main__":
    import sys
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except Exception:
                pass
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
