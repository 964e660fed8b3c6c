"""Universal R-matrix on pairs of modules, constant R-matrices and RTT checks.

The universal R-matrix is never formed as an element of U_q (x) U_q.  For
a reduced word i of w0 it is evaluated on V (x) W as

    q^{(wt, wt)} Rt_1 Rt_2 ... Rt_N,   Rt_k = exp_{q_k}((q_k - q_k^-1) e''_k (x) f''_k),

with ``exp_q(x) = sum_n q^{n(n-1)/2} x^n / [n]!``.  The constant R-matrix on
V(lam) (x) V(mu) is the image of the flipped element sigma(R), i.e. the same
product with f''_k acting on the first factor and e''_k on the second.

With root vectors normalized as in :mod:`qpbw.repmod` (T''_i realized as
conjugation by S_i) the factor Rt_N is applied to a vector first; the
opposite order fails R Delta = Delta' R as soon as root vectors of
different heights both act nontrivially.

Operators are sparse matrices ``{(row, col): Scalar}`` on the basis
``a * dim W + b`` <-> u_a (x) u_b.
"""
from __future__ import annotations

import itertools
import logging

from .linalg import Eliminator, vadd
from .qscalar import ONE, ZERO, Scalar, qpow, q_fact
from .rootdata import RootDatum, root_datum
from .repmod import (FinModule, TensorModule, RightModule, highest_weight_module,
                     fundamental_module, root_vector, mco_eval, u_w0)

__all__ = ["SparseMatrix", "poly_matrix", "quasi_r_op", "constant_r", "ConstantR",
           "intertwining_residuals", "delta_matrix", "rtt_check", "rtt_formal_relations",
           "aq_sl2_relations", "check_aq_sl2_relations", "check_commutation_relations"]

log = logging.getLogger(__name__)


class SparseMatrix:
    """A square sparse matrix over Q(q) of size n."""

    def __init__(self, n, entries=None):
        self.n = n
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @classmethod
    def identity(cls, n):
        return cls(n, {(a, a): ONE for a in range(n)})

    def __getitem__(self, key):
        return self.entries.get(key, ZERO)

    def _rows(self):
        rows = {}
        for (r, c), v in self.entries.items():
            rows.setdefault(r, {})[c] = v
        return rows

    def __matmul__(self, other):
        rows = other._rows()
        out = {}
        for (r, c), v in self.entries.items():
            for c2, w in rows.get(c, {}).items():
                key = (r, c2)
                s = out.get(key)
                out[key] = v * w if s is None else s + v * w
        return SparseMatrix(self.n, out)

    def __add__(self, other):
        out = dict(self.entries)
        vadd(out, other.entries)
        return SparseMatrix(self.n, out)

    def __sub__(self, other):
        out = dict(self.entries)
        vadd(out, other.entries, -ONE)
        return SparseMatrix(self.n, out)

    def scale(self, c):
        return SparseMatrix(self.n, {k: v * c for k, v in self.entries.items()})

    def __eq__(self, other):
        return isinstance(other, SparseMatrix) and self.n == other.n and self.entries == other.entries

    def is_zero(self):
        return not self.entries

    def apply(self, vec):
        out = {}
        for (r, c), v in self.entries.items():
            x = vec.get(c)
            if x is not None:
                vadd(out, {r: v * x})
        return out

    def conjugate_by_permutation(self, perm):
        """P M P^-1 for the permutation matrix sending basis c to perm[c]."""
        return SparseMatrix(self.n, {(perm[r], perm[c]): v for (r, c), v in self.entries.items()})

    def to_json(self, labels=None):
        out = {"dim": self.n,
               "entries": [{"row": r, "col": c, "coeff": v.canonical_str()}
                           for (r, c), v in sorted(self.entries.items())]}
        if labels is not None:
            out["basis"] = [list(x) for x in labels]
        return out


def poly_matrix(M, x):
    """The matrix of a (dressed) word polynomial x acting on the FinModule M."""
    out = {}
    for b in range(M.dim):
        for a, c in M.apply_poly(x, {b: ONE}).items():
            out[(a, b)] = c
    return out


def _kron(A, B, nA, nB):
    out = {}
    for (a1, a2), x in A.items():
        for (b1, b2), y in B.items():
            out[(a1 * nB + b1, a2 * nB + b2)] = x * y
    return SparseMatrix(nA * nB, out)


def _exp_factor(X, Y, nX, nY, d):
    """exp_{q^d}((q^d - q^-d) X (x) Y) for nilpotent X, Y given as sparse dicts."""
    n = nX * nY
    total = SparseMatrix.identity(n)
    c = qpow(d) - qpow(-d)
    XX = SparseMatrix(nX, dict(X))
    YY = SparseMatrix(nY, dict(Y))
    Xp, Yp = XX, YY
    k = 1
    while not Xp.is_zero() and not Yp.is_zero():
        coeff = qpow(d * k * (k - 1) // 2) * c ** k / q_fact(k, d)
        total = total + _kron(Xp.entries, Yp.entries, nX, nY).scale(coeff)
        Xp, Yp = Xp @ XX, Yp @ YY
        k += 1
    return total


def _weight_prefactor(V, W):
    R = V.datum
    return SparseMatrix(V.dim * W.dim, {(a * W.dim + b, a * W.dim + b): qpow(R.form(V.weights[a], W.weights[b]))
                                        for a in range(V.dim) for b in range(W.dim)})


def _datum(d):
    return d if isinstance(d, RootDatum) else root_datum(d)


def _root_factors(V, W, word, flipped):
    R = V.datum
    word = tuple(word)
    facs = []
    for k in range(1, len(word) + 1):
        e = root_vector(R, word, k, "''+1", kind="e")
        f = root_vector(R, word, k, "''+1", kind="f")
        d = R.di(word[k - 1])
        if flipped:
            facs.append(_exp_factor(poly_matrix(V, f), poly_matrix(W, e), V.dim, W.dim, d))
        else:
            facs.append(_exp_factor(poly_matrix(V, e), poly_matrix(W, f), V.dim, W.dim, d))
    return facs


def quasi_r_op(word, V, W, prefactor=False):
    """(pi_V (x) pi_W)(Rt_1 ... Rt_N), optionally with the weight prefactor."""
    out = SparseMatrix.identity(V.dim * W.dim)
    for fac in _root_factors(V, W, word, flipped=False):
        out = out @ fac
    if prefactor:
        out = _weight_prefactor(V, W) @ out
    return out


class ConstantR:
    """R on V (x) W with R (u_k (x) u_l) = sum R_{st,kl} u_s (x) u_t."""

    def __init__(self, V, W, word, matrix):
        self.V, self.W = V, W
        self.word = tuple(word)
        self.matrix = matrix
        # normalization: the constant in R ~ (pi (x) pi)(sigma R) is 1, so that
        # R(u_low (x) u) = q^{(w0 lam, nu)} u_low (x) u on the lowest vector
        self.normalization = ONE

    def index(self, s, t):
        return s * self.W.dim + t

    def entry(self, s, t, k, l):
        return self.matrix[(self.index(s, t), self.index(k, l))]

    def to_json(self):
        labels = [(a, b) for a in range(self.V.dim) for b in range(self.W.dim)]
        out = self.matrix.to_json(labels)
        out.update({"word": list(self.word), "normalization": self.normalization.canonical_str(),
                    "first": self.V.name, "second": self.W.name})
        return out


def constant_r(V, W, word):
    """(pi_V (x) pi_W)(sigma R): prefactor * prod_{k=1..N} exp((q-q^-1) f''_k (x) e''_k)."""
    out = SparseMatrix.identity(V.dim * W.dim)
    for fac in _root_factors(V, W, word, flipped=True):
        out = out @ fac
    out = _weight_prefactor(V, W) @ out
    return ConstantR(V, W, word, out)


# -- intertwining and RTT -------------------------------------------------------------

def _flip_perm(V, W):
    """Basis permutation W (x) V -> V (x) W."""
    return {b * V.dim + a: a * W.dim + b for a in range(V.dim) for b in range(W.dim)}


def delta_matrix(V, W, monomial):
    """Delta(P) on V (x) W for P = F k^beta E; entries equal mco_eval values."""
    fw, beta, ew = monomial
    T = TensorModule([V, W])
    out = {}
    for k in range(V.dim):
        for l in range(W.dim):
            vec = T.apply_word("e", tuple(ew), {(k, l): ONE})
            vec = T.apply_k(tuple(beta), vec)
            vec = T.apply_word("f", tuple(fw), vec)
            for (s, t), c in vec.items():
                out[(s * W.dim + t, k * W.dim + l)] = c
    return SparseMatrix(V.dim * W.dim, out)


def delta_op_matrix(V, W, monomial):
    """Delta'(P) = sigma Delta(P) sigma on V (x) W."""
    D = delta_matrix(W, V, monomial)
    return D.conjugate_by_permutation(_flip_perm(V, W))


def intertwining_residuals(Rc):
    """R Delta(x) - Delta'(x) R for all generators e_i, f_i, k_i; list of (name, zero?)."""
    V, W = Rc.V, Rc.W
    R = V.datum
    out = []
    gens = []
    for i in R.nodes:
        alpha = R.simple_root(i)
        gens += [(f"e_{i}", ((), (0,) * R.rank, (i,))), (f"f_{i}", ((i,), (0,) * R.rank, ())),
                 (f"k_{i}", ((), tuple(alpha), ()))]
    for name, mono in gens:
        res = Rc.matrix @ delta_matrix(V, W, mono) - delta_op_matrix(V, W, mono) @ Rc.matrix
        out.append((name, res.is_zero()))
    return out


def triangular_monomials(datum, bound, betas=None):
    """F k^beta E monomials with len(F) + len(E) <= bound."""
    R = _datum(datum)
    if betas is None:
        betas = [(0,) * R.rank] + [tuple(R.simple_root(i)) for i in R.nodes] + \
                [tuple(-x for x in R.simple_root(i)) for i in R.nodes]
    words = [()]
    for n in range(1, bound + 1):
        words += list(itertools.product(R.nodes, repeat=n))
    for fw in words:
        for ew in words:
            if len(fw) + len(ew) <= bound:
                for b in betas:
                    yield (fw, b, ew)


def rtt_check(datum, lam, mu, bound=3, word=None):
    """Check sum R_{st,mp} phi_{m,k} phi_{p,l} = sum phi_{t,p} phi_{s,m} R_{mp,kl}
    as functionals on all triangular monomials of height <= bound.

    Returns a report dict ``{relation, status, witness?, checked}``.
    """
    R = _datum(datum)
    V = highest_weight_module(R, tuple(lam))
    W = highest_weight_module(R, tuple(mu))
    word = tuple(word) if word is not None else R.w0_word()
    Rc = constant_r(V, W, word)
    checked = 0
    for mono in triangular_monomials(R, bound):
        lhs = Rc.matrix @ delta_matrix(V, W, mono)
        rhs = delta_op_matrix(V, W, mono) @ Rc.matrix
        checked += 1
        if lhs != rhs:
            diff = (lhs - rhs).entries
            (r, c), _ = min(diff.items())
            s, t = divmod(r, W.dim)
            k, l = divmod(c, W.dim)
            return {"relation": f"RTT {R.label} {tuple(lam)} x {tuple(mu)}", "status": "fail",
                    "witness": {"monomial": [list(mono[0]), list(mono[1]), list(mono[2])],
                                "s": s, "t": t, "k": k, "l": l,
                                "lhs": lhs[(r, c)].canonical_str(), "rhs": rhs[(r, c)].canonical_str()},
                    "checked": checked}
    return {"relation": f"RTT {R.label} {tuple(lam)} x {tuple(mu)}", "status": "pass", "checked": checked}


# -- A_q(sl2) ------------------------------------------------------------------------

def rtt_formal_relations(Rc):
    """The RTT equations as formal combinations of ordered products phi_{ab} phi_{cd}.

    Each relation is a dict ``{((a, b), (c, d)): coeff}`` (0-based indices); the
    first factor belongs to V and the second to W on the left-hand side.
    """
    V, W = Rc.V, Rc.W
    nV, nW = V.dim, W.dim
    rels = []
    for s, t, k, l in itertools.product(range(nV), range(nW), range(nV), range(nW)):
        rel = {}
        for m, p in itertools.product(range(nV), range(nW)):
            c = Rc.entry(s, t, m, p)
            if c:
                vadd(rel, {((m, k), (p, l)): c})
            c = Rc.entry(m, p, k, l)
            if c:
                vadd(rel, {((t, p), (s, m)): -c})
        if rel:
            rels.append(rel)
    return rels


def aq_sl2_relations():
    """The quadratic defining relations of A_q(sl2) in the indices t_{ab} (1-based)."""
    q = qpow(1)
    t = lambda a, b: (a - 1, b - 1)
    return {
        "t11 t21 = q t21 t11": {(t(1, 1), t(2, 1)): ONE, (t(2, 1), t(1, 1)): -q},
        "t12 t22 = q t22 t12": {(t(1, 2), t(2, 2)): ONE, (t(2, 2), t(1, 2)): -q},
        "t11 t12 = q t12 t11": {(t(1, 1), t(1, 2)): ONE, (t(1, 2), t(1, 1)): -q},
        "t21 t22 = q t22 t21": {(t(2, 1), t(2, 2)): ONE, (t(2, 2), t(2, 1)): -q},
        "t12 t21 = t21 t12": {(t(1, 2), t(2, 1)): ONE, (t(2, 1), t(1, 2)): -ONE},
        "t11 t22 - t22 t11 = (q - q^-1) t12 t21": {(t(1, 1), t(2, 2)): ONE, (t(2, 2), t(1, 1)): -ONE,
                                                   (t(1, 2), t(2, 1)): -(q - q.inverse())},
    }


def check_aq_sl2_relations(bound=3):
    """The seven A_q(sl2) relations, both as consequences of RTT (the six
    quadratic ones lie in the span of the formal RTT equations) and as
    functional identities under mco_eval (all seven, including the quantum
    determinant t11 t22 - q t12 t21 = 1).  Returns a list of reports."""
    R = root_datum("A1")
    V = highest_weight_module(R, (1,))
    Rc = constant_r(V, V, (1,))
    keys = sorted({k for rel in rtt_formal_relations(Rc) for k in rel} |
                  {k for rel in aq_sl2_relations().values() for k in rel})
    idx = {k: n for n, k in enumerate(keys)}
    el = Eliminator()
    for rel in rtt_formal_relations(Rc):
        el.add({idx[k]: c for k, c in rel.items()}, keep_index=False)
    monos = list(triangular_monomials(R, bound))
    reports = []

    def value(pairs, mono):
        total = ZERO
        for ((a, b), (c, d)), x in pairs.items():
            total = total + x * mco_eval([({a: ONE}, {b: ONE}, V), ({c: ONE}, {d: ONE}, V)], mono)
        return total

    for name, rel in aq_sl2_relations().items():
        vec = {idx[k]: c for k, c in rel.items()}
        in_span = not el.reduce(vec)[0]
        bad = next((m for m in monos if value(rel, m)), None)
        ok = in_span and bad is None
        rep = {"relation": f"A_q(sl2): {name}", "status": "pass" if ok else "fail"}
        if not ok:
            rep["witness"] = {"in_rtt_span": in_span, "monomial": None if bad is None else [list(x) for x in bad]}
        reports.append(rep)
    det = {((0, 0), (1, 1)): ONE, ((0, 1), (1, 0)): -qpow(1)}
    bad = None
    for m in monos:
        counit = ONE if not m[0] and not m[2] else ZERO
        if value(det, m) != counit:
            bad = m
            break
    rep = {"relation": "A_q(sl2): t11 t22 - q t12 t21 = 1", "status": "pass" if bad is None else "fail"}
    if bad is not None:
        rep["witness"] = {"monomial": [list(x) for x in bad]}
    reports.append(rep)
    return reports


# -- commutation relations from RTT ----------------------------------------------------

def check_commutation_relations(datum, bound=2, modules=None):
    """Functional checks (via mco_eval on triangular monomials) of

        q^{(w_i, xi)} sigma_i Phi = q^{(w0 w_i, nu)} Phi sigma_i,
        (sigma_i e_i) Phi - q^{(w0 w_i, nu) - (w_i - alpha_i, xi)} Phi (sigma_i e_i)
            = -(q_i - q_i^-1) sigma_i Phi(v e_i (x) u),
        Phi (tau_i f_i) - q^{(w_i', nu) - (w0 w_i' + alpha_i, xi)} (tau_i f_i) Phi
            = -(q_i - q_i^-1) Phi(v f_i (x) u) tau_i,

    for Phi = Phi(v (x) u), v, u basis vectors of weights xi, nu of each
    module in ``modules`` (default: the fundamental modules), i' = -w0 i.
    Returns one report per (relation, i, module).
    """
    R = _datum(datum)
    monos = list(triangular_monomials(R, bound))
    mods = modules if modules is not None else [fundamental_module(R, j) for j in R.nodes]
    reports = []

    def shifted(lam, i, sign):
        return tuple(x + sign * R.a(k, i) for k, x in zip(R.nodes, lam))

    for i in R.nodes:
        Vi = fundamental_module(R, i)
        Vir = RightModule(Vi)
        top, low = {Vi.highest_index(): ONE}, u_w0(Vi)
        sig, sig_e = (top, low, Vi), (Vir.act_gen("e", i, top), low, Vi)
        ip = R.w0_dual(i)
        Wi = fundamental_module(R, ip)
        Wir = RightModule(Wi)
        wlow, wtop = Wir.lowest_w0(), {Wi.highest_index(): ONE}
        tau, tau_f = (wlow, wtop, Wi), (Wir.act_gen("f", i, wlow), wtop, Wi)
        qi = qpow(R.di(i))
        qd = qi - qi.inverse()
        wi = R.fundamental_weight(i)
        w0wi = R.w0_weight(wi)
        wip = R.fundamental_weight(ip)
        w0wip = R.w0_weight(wip)
        for V in mods:
            Vr = RightModule(V)
            fails = {"sigma": None, "sigma e": None, "tau f": None}
            for a, b in itertools.product(range(V.dim), repeat=2):
                xi, nu = V.weights[a], V.weights[b]
                phi = ({a: ONE}, {b: ONE}, V)
                ve = (Vr.act_gen("e", i, {a: ONE}), {b: ONE}, V)
                vf = (Vr.act_gen("f", i, {a: ONE}), {b: ONE}, V)
                c1l, c1r = qpow(R.form(wi, xi)), qpow(R.form(w0wi, nu))
                c2 = qpow(R.form(w0wi, nu) - R.form(shifted(wi, i, -1), xi))
                c3 = qpow(R.form(wip, nu) - R.form(shifted(w0wip, i, 1), xi))
                for m in monos:
                    ev = lambda fs: mco_eval(fs, m)
                    if fails["sigma"] is None and c1l * ev([sig, phi]) != c1r * ev([phi, sig]):
                        fails["sigma"] = (a, b, m)
                    if fails["sigma e"] is None and \
                            ev([sig_e, phi]) - c2 * ev([phi, sig_e]) != -qd * ev([sig, ve]):
                        fails["sigma e"] = (a, b, m)
                    if fails["tau f"] is None and \
                            ev([phi, tau_f]) - c3 * ev([tau_f, phi]) != -qd * ev([vf, tau]):
                        fails["tau f"] = (a, b, m)
            for name, bad in fails.items():
                rep = {"relation": f"{name}_{i} commutation on {V.name}",
                       "status": "pass" if bad is None else "fail"}
                if bad is not None:
                    rep["witness"] = {"v": bad[0], "u": bad[1], "monomial": [list(x) for x in bad[2]]}
                reports.append(rep)
    return reports
