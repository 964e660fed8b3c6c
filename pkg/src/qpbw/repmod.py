"""Integrable U_q-modules, the braid operators S_i, and PBW root vectors.

Modules come in two flavours sharing one interface (:class:`Module`):

* :class:`FinModule` -- explicit basis ``0..dim-1`` with sparse generator
  matrices;
* :class:`TensorModule` -- a lazy tensor product of FinModules whose basis
  vectors are tuples of factor indices; generators act through the coproduct
  ``Delta(e_i) = e_i (x) 1 + k_i (x) e_i`` and ``Delta(f_i) = f_i (x) k_i^-1 + 1 (x) f_i``.

Vectors are sparse dicts ``basis key -> Scalar``.

Root vectors of PBW bases are obtained by conjugating a generator with the
operators ``S_i`` on a module where the relevant weight space of U_q^- (or
U_q^+) acts faithfully, and then solving for a word polynomial with the same
action.
"""
from __future__ import annotations

import itertools
import json
import os
from functools import lru_cache
from pathlib import Path

from .linalg import Eliminator, InconsistentSystem, nullspace, vadd, vscale, rank
from .qscalar import ONE, ZERO, Scalar, qpow, q_int, q_fact
from .rootdata import RootDatum, root_datum
from .wordalg import EWordPoly, FWordPoly, WordPoly, word_content

__all__ = [
    "Module", "FinModule", "TensorModule", "RightModule", "RelationError",
    "seed_module", "fundamental_module", "highest_weight_module", "tensor",
    "cyclic_submodule", "s_op", "s_word_op", "braid_root_vector", "pbw_monomial",
    "faithful_lambda", "mco_eval", "lowest_vector", "highest_vector",
    "set_cache_dir", "FAMILIES",
]


class RelationError(RuntimeError):
    """A module failed the defining relations of U_q."""


def _acc(out, key, c):
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class Module:
    """Common interface: sparse actions of e_i, f_i and k^beta."""

    datum: RootDatum

    # subclasses implement _e_basis, _f_basis, weight, hval
    def apply_e(self, i, vec):
        out = {}
        for key, c in vec.items():
            for k2, c2 in self._e_basis(i, key).items():
                _acc(out, k2, c * c2)
        return out

    def apply_f(self, i, vec):
        out = {}
        for key, c in vec.items():
            for k2, c2 in self._f_basis(i, key).items():
                _acc(out, k2, c * c2)
        return out

    def apply_gen(self, kind, i, vec):
        return self.apply_e(i, vec) if kind == "e" else self.apply_f(i, vec)

    def apply_k(self, beta, vec):
        """k^beta for beta in root coordinates."""
        if not any(beta):
            return dict(vec)
        return {key: c * qpow(self.datum.form_root_weight(beta, self.weight(key)))
                for key, c in vec.items()}

    def apply_ki(self, i, power, vec):
        d = self.datum.di(i)
        return {key: c * qpow(d * power * self.hval(i, key)) for key, c in vec.items()}

    def apply_word(self, kind, word, vec):
        for a in reversed(word):
            vec = self.apply_gen(kind, a, vec)
            if not vec:
                break
        return vec

    def apply_poly(self, x, vec):
        """Action of a (dressed) word polynomial."""
        out = {}
        for (d, w), c in x.terms.items():
            v = self.apply_word(x.kind, w, vec)
            v = self.apply_k(d, v)
            vadd(out, v, c)
        return out

    def weight_of_vector(self, vec):
        ws = {self.weight(k) for k in vec}
        if len(ws) != 1:
            raise ValueError("not a weight vector")
        return ws.pop()


class FinModule(Module):
    """Finite dimensional module with an explicit weight basis.

    ``e[i][b]`` and ``f[i][b]`` are sparse columns ``{a: Scalar}`` giving
    ``e_i u_b = sum_a e[i][b][a] u_a``.
    """

    def __init__(self, datum, weights, e, f, name=None, check=True):
        self.datum = datum
        self.weights = [tuple(w) for w in weights]
        self.dim = len(self.weights)
        self.e = {i: [dict(col) for col in e[i]] for i in datum.nodes}
        self.f = {i: [dict(col) for col in f[i]] for i in datum.nodes}
        self.name = name or f"FinModule(dim={self.dim})"
        self._h = {i: [w[i - 1] for w in self.weights] for i in datum.nodes}
        self._eT = None
        self._fT = None
        self.by_weight = {}
        for b, w in enumerate(self.weights):
            self.by_weight.setdefault(w, []).append(b)
        if check:
            self.check_relations()

    def __repr__(self):
        return f"<{self.name} of {self.datum.label}, dim {self.dim}>"

    def basis(self):
        return range(self.dim)

    def weight(self, b):
        return self.weights[b]

    def hval(self, i, b):
        return self._h[i][b]

    def _e_basis(self, i, b):
        return self.e[i][b]

    def _f_basis(self, i, b):
        return self.f[i][b]

    def unit(self, b):
        return {b: ONE}

    def highest_index(self):
        return 0

    def lowest_index(self):
        w0l = self.datum.w0_weight(self.weights[0])
        (b,) = self.by_weight[w0l]
        return b

    def transposed(self, kind):
        """Row-wise access ``T[i][a] = {b: c}`` with c = coefficient of u_a in x_i u_b."""
        attr = "_eT" if kind == "e" else "_fT"
        if getattr(self, attr) is None:
            src = self.e if kind == "e" else self.f
            T = {i: [dict() for _ in range(self.dim)] for i in self.datum.nodes}
            for i in self.datum.nodes:
                for b, col in enumerate(src[i]):
                    for a, c in col.items():
                        T[i][a][b] = c
            setattr(self, attr, T)
        return getattr(self, attr)

    # -- relation checks -----------------------------------------------------
    def check_relations(self):
        """Verify [e_i, f_j], q-Serre relations and weight compatibility."""
        R = self.datum
        for i in R.nodes:
            al = R.root_to_weight(R.simple_root(i))
            for b in range(self.dim):
                for a in self.e[i][b]:
                    if self.weights[a] != tuple(x + y for x, y in zip(self.weights[b], al)):
                        raise RelationError(f"e_{i} does not raise the weight of basis vector {b}")
                for a in self.f[i][b]:
                    if self.weights[a] != tuple(x - y for x, y in zip(self.weights[b], al)):
                        raise RelationError(f"f_{i} does not lower the weight of basis vector {b}")
        for b in range(self.dim):
            u = {b: ONE}
            for i in R.nodes:
                for j in R.nodes:
                    lhs = self.apply_e(i, self.apply_f(j, u))
                    vadd(lhs, self.apply_f(j, self.apply_e(i, u)), -ONE)
                    if i == j:
                        h = self.hval(i, b)
                        vadd(lhs, u, -q_int(h, R.di(i)))
                    if lhs:
                        raise RelationError(f"[e_{i}, f_{j}] fails on basis vector {b}")
                    if i != j:
                        for kind in "ef":
                            if _serre_apply(self, kind, i, j, u):
                                raise RelationError(f"{kind}-Serre relation ({i},{j}) fails on {b}")
        return True


def _serre_apply(M, kind, i, j, u):
    R = M.datum
    n = 1 - R.a(i, j)
    d = R.di(i)
    out = {}
    for r in range(n + 1):
        v = M.apply_word(kind, (i,) * (n - r), u)
        v = M.apply_gen(kind, j, v)
        v = M.apply_word(kind, (i,) * r, v)
        c = (q_fact(r, d) * q_fact(n - r, d)).inverse()
        vadd(out, v, c if r % 2 == 0 else -c)
    return out


class TensorModule(Module):
    """Lazy tensor product M_1 (x) ... (x) M_n; basis keys are index tuples."""

    def __init__(self, factors):
        self.factors = tuple(factors)
        if not self.factors:
            raise ValueError("empty tensor product")
        self.datum = self.factors[0].datum
        self._ecache = {}
        self._fcache = {}

    def weight(self, key):
        ws = [F.weights[b] for F, b in zip(self.factors, key)]
        return tuple(sum(c) for c in zip(*ws))

    def hval(self, i, key):
        return sum(F._h[i][b] for F, b in zip(self.factors, key))

    def top(self):
        return tuple(0 for _ in self.factors)

    def bottom(self):
        return tuple(F.lowest_index() for F in self.factors)

    def _e_basis(self, i, key):
        ck = (i, key)
        out = self._ecache.get(ck)
        if out is not None:
            return out
        out = {}
        d = self.datum.di(i)
        twist = 0
        for p, F in enumerate(self.factors):
            col = F.e[i][key[p]]
            if col:
                qp = qpow(d * twist)
                for a, c in col.items():
                    _acc(out, key[:p] + (a,) + key[p + 1:], c * qp)
            twist += F._h[i][key[p]]
        self._ecache[ck] = out
        return out

    def _f_basis(self, i, key):
        ck = (i, key)
        out = self._fcache.get(ck)
        if out is not None:
            return out
        out = {}
        d = self.datum.di(i)
        twist = 0
        for p in range(len(self.factors) - 1, -1, -1):
            F = self.factors[p]
            col = F.f[i][key[p]]
            if col:
                qp = qpow(-d * twist)
                for a, c in col.items():
                    _acc(out, key[:p] + (a,) + key[p + 1:], c * qp)
            twist += F._h[i][key[p]]
        self._fcache[ck] = out
        return out


def tensor(M, N):
    """Explicit tensor product M (x) N; basis index ``a * dim N + b`` <-> u_a (x) u_b."""
    if M.datum != N.datum:
        raise ValueError("different root data")
    T = TensorModule([M, N])
    keys = [(a, b) for a in range(M.dim) for b in range(N.dim)]
    index = {k: n for n, k in enumerate(keys)}
    weights = [T.weight(k) for k in keys]
    e = {i: [{index[k2]: c for k2, c in T._e_basis(i, k).items()} for k in keys] for i in M.datum.nodes}
    f = {i: [{index[k2]: c for k2, c in T._f_basis(i, k).items()} for k in keys] for i in M.datum.nodes}
    out = FinModule(M.datum, weights, e, f, name=f"({M.name} x {N.name})", check=False)
    out.labels = keys
    return out


def cyclic_submodule(M, v, name=None, check=True):
    """The submodule generated by a highest weight vector ``v`` of ``M``.

    Returns a FinModule whose basis vector ``b`` is ``embedding[b]`` (a sparse
    vector of ``M``); basis vector 0 is ``v`` itself.
    """
    R = M.datum
    for i in R.nodes:
        if M.apply_e(i, v):
            raise ValueError("generator is not a highest weight vector")
    vecs = [dict(v)]
    weights = [M.weight_of_vector(v)]
    elim = {weights[0]: Eliminator()}
    elim[weights[0]].add(v)
    members = {weights[0]: [0]}
    frontier = [0]
    while frontier:
        new = []
        for b in frontier:
            for i in R.nodes:
                w = M.apply_f(i, vecs[b])
                if not w:
                    continue
                wt = tuple(x - y for x, y in zip(weights[b], R.root_to_weight(R.simple_root(i))))
                el = elim.setdefault(wt, Eliminator())
                if el.add(w, keep_index=False):
                    vecs.append(w)
                    weights.append(wt)
                    members.setdefault(wt, []).append(len(vecs) - 1)
                    new.append(len(vecs) - 1)
        frontier = new
    # generator matrices in the new basis
    e = {i: [] for i in R.nodes}
    f = {i: [] for i in R.nodes}
    for b, vec in enumerate(vecs):
        for i in R.nodes:
            for kind, store in (("e", e), ("f", f)):
                w = M.apply_gen(kind, i, vec)
                col = {}
                if w:
                    wt = M.weight_of_vector(w)
                    coeffs = elim[wt].express(w)
                    ids = members[wt]
                    col = {ids[k]: c for k, c in coeffs.items() if c}
                store[i].append(col)
    sub = FinModule(R, weights, e, f, name=name, check=check)
    sub.embedding = vecs
    sub.ambient = M
    return sub


# -- fundamental modules --------------------------------------------------------

def _orbit(R, lam):
    seen = [tuple(lam)]
    idx = {tuple(lam): 0}
    k = 0
    while k < len(seen):
        mu = seen[k]
        for i in R.nodes:
            nu = R.reflect_weight(i, mu)
            if nu not in idx:
                idx[nu] = len(seen)
                seen.append(nu)
        k += 1
    return seen


def _sort_weights(R, ws, top):
    """Order weights by depth below ``top`` (then lexicographically, descending)."""
    def depth(w):
        diff = tuple(a - b for a, b in zip(top, w))
        return sum(R.weight_to_root(diff))
    return sorted(ws, key=lambda w: (depth(w), tuple(-x for x in w)))


def _minuscule(R, j):
    lam = R.fundamental_weight(j)
    ws = _sort_weights(R, _orbit(R, lam), lam)
    index = {w: n for n, w in enumerate(ws)}
    e = {i: [dict() for _ in ws] for i in R.nodes}
    f = {i: [dict() for _ in ws] for i in R.nodes}
    for i in R.nodes:
        al = R.root_to_weight(R.simple_root(i))
        for w in ws:
            h = w[i - 1]
            if h == -1:
                e[i][index[w]] = {index[tuple(x + y for x, y in zip(w, al))]: ONE}
            if h == 1:
                f[i][index[w]] = {index[tuple(x - y for x, y in zip(w, al))]: ONE}
    return FinModule(R, ws, e, f, name=f"V(w{j})")


def _quasi_minuscule(R, j):
    """Module with weights W.theta_s plus one zero weight (one short simple root)."""
    lam = R.fundamental_weight(j)
    short = [i for i in R.nodes if R.di(i) == min(R.d)]
    if len(short) != 1:
        raise NotImplementedError("quasi-minuscule construction needs a single short node")
    s = short[0]
    zero = R.zero()
    ws = _sort_weights(R, _orbit(R, lam), lam)
    n = len(ws)
    pos = ws.index(tuple(R.root_to_weight(R.simple_root(s))))
    ws = ws[:pos + 1] + [zero] + ws[pos + 1:]
    index = {w: k for k, w in enumerate(ws)}
    e = {i: [dict() for _ in ws] for i in R.nodes}
    f = {i: [dict() for _ in ws] for i in R.nodes}
    two = q_int(2, R.di(s))
    for i in R.nodes:
        al = R.root_to_weight(R.simple_root(i))
        neg = tuple(-x for x in al)
        for w in ws:
            if w == zero:
                if i == s:
                    e[i][index[w]] = {index[al]: two}
                    f[i][index[w]] = {index[neg]: two}
                continue
            up = tuple(x + y for x, y in zip(w, al))
            dn = tuple(x - y for x, y in zip(w, al))
            if i == s and w == neg:
                e[i][index[w]] = {index[zero]: ONE}
            elif w[i - 1] == -1 and up in index:
                e[i][index[w]] = {index[up]: ONE}
            if i == s and w == al:
                f[i][index[w]] = {index[zero]: ONE}
            elif w[i - 1] == 1 and dn in index:
                f[i][index[w]] = {index[dn]: ONE}
    return FinModule(R, ws, e, f, name=f"V(w{j})")


def _highest_short_root_weight(R):
    short = [b for b in R.positive_roots() if R.form_roots(b, b) == 2 * min(R.d)]
    top = max(short, key=lambda b: (sum(b), b))
    return R.root_to_weight(top)


_FUND = {}


def fundamental_module(datum, j):
    """V(varpi_j), built explicitly when minuscule / quasi-minuscule, otherwise
    as a cyclic submodule of a tensor product of smaller fundamentals."""
    R = datum if isinstance(datum, RootDatum) else root_datum(datum)
    key = (R.label, j)
    if key in _FUND:
        return _FUND[key]
    lam = R.fundamental_weight(j)
    dim = R.dim_irrep(lam)
    if len(_orbit(R, lam)) == dim:
        M = _minuscule(R, j)
    elif len(_orbit(R, lam)) + 1 == dim and tuple(lam) == tuple(_highest_short_root_weight(R)):
        M = _quasi_minuscule(R, j)
    else:
        M = _fundamental_from_products(R, j)
    if M.dim != dim:
        raise RelationError(f"V(w{j}) has dimension {M.dim}, expected {dim}")
    _FUND[key] = M
    return M


def _fundamental_from_products(R, j):
    lam = R.fundamental_weight(j)
    known = []
    for a in R.nodes:
        if a == j:
            continue
        la = R.fundamental_weight(a)
        if len(_orbit(R, la)) == R.dim_irrep(la) or (
                len(_orbit(R, la)) + 1 == R.dim_irrep(la)
                and tuple(la) == tuple(_highest_short_root_weight(R))):
            known.append(fundamental_module(R, a))
    for A, B in itertools.combinations_with_replacement(known, 2):
        T = TensorModule([A, B])
        keys = [(x, y) for x in range(A.dim) for y in range(B.dim) if T.weight((x, y)) == lam]
        if not keys:
            continue
        # kernel of all e_i on the weight space
        images = []
        for k in keys:
            img = {}
            for i in R.nodes:
                for k2, c in T._e_basis(i, k).items():
                    img[(i, k2)] = c
            images.append(img)
        ker = nullspace(images)
        if ker:
            v = {}
            for idx, c in ker[0].items():
                v[keys[idx]] = c
            sub = cyclic_submodule(T, v, name=f"V(w{j})")
            return sub
    raise NotImplementedError(f"no construction of V(w{j}) for {R.label}")


def seed_module(datum):
    """The defining representation: A_n (n+1)-dim, B2 5-dim, G2 7-dim."""
    R = datum if isinstance(datum, RootDatum) else root_datum(datum)
    if R.type not in ("A", "B", "G") or (R.type == "B" and R.rank != 2):
        raise NotImplementedError(f"no seed module for {R.label}")
    return fundamental_module(R, 1)


_HW = {}


def highest_weight_module(datum, lam):
    """V(lam) as the cyclic submodule of (x)_i V(varpi_i)^{(x) lam_i} generated by the top vector."""
    R = datum if isinstance(datum, RootDatum) else root_datum(datum)
    lam = tuple(lam)
    key = (R.label, lam)
    if key in _HW:
        return _HW[key]
    if any(c < 0 for c in lam):
        raise ValueError("weight is not dominant")
    if not any(lam):
        M = FinModule(R, [R.zero()], {i: [{}] for i in R.nodes}, {i: [{}] for i in R.nodes}, name="V(0)")
    elif sum(lam) == 1:
        M = fundamental_module(R, lam.index(1) + 1)
    else:
        T = tensor_of_fundamentals(R, lam)
        M = cyclic_submodule(T, {T.top(): ONE}, name=f"V({list(lam)})")
        if M.dim != R.dim_irrep(lam):
            raise RelationError("dimension mismatch with the Weyl dimension formula")
    _HW[key] = M
    return M


def tensor_of_fundamentals(R, lam):
    factors = []
    for i in R.nodes:
        factors += [fundamental_module(R, i)] * lam[i - 1]
    return TensorModule(factors)


def highest_vector(M):
    if isinstance(M, TensorModule):
        return {M.top(): ONE}
    return {M.highest_index(): ONE}


def lowest_vector(M):
    if isinstance(M, TensorModule):
        return {M.bottom(): ONE}
    return {M.lowest_index(): ONE}


# -- S_i operators ----------------------------------------------------------------

def _exp_apply(vec, step, base_exp, d):
    """sum_k q_i^{base_exp k(k-1)/2} step^k(vec) / [k]_i!  (terminates by nilpotency)."""
    out = dict(vec)
    term = vec
    k = 0
    while True:
        term = step(term)
        if not term:
            break
        k += 1
        c = qpow(d * base_exp * k * (k - 1) // 2) / q_fact(k, d)
        vadd(out, term, c)
    return out


def s_op(M, i, sign=1):
    """The operator S_i (sign=+1) or S_i^{-1} (sign=-1) on the module M, as a function.

    S_i = exp_{q_i^-1}(q_i^-1 e_i k_i^-1) exp_{q_i^-1}(-f_i) exp_{q_i^-1}(q_i e_i k_i) q_i^{h_i(h_i+1)/2},
    with exp_q(x) = sum_k q^{k(k-1)/2} x^k / [k]_q!.  On an l-string it maps
    u_k = f_i^{(k)} u_0 to (-1)^{l-k} q_i^{(l-k)(k+1)} u_{l-k}.
    """
    R = M.datum
    d = R.di(i)
    qi = qpow(d)
    qi_inv = qpow(-d)

    def diag(vec, s):
        out = {}
        for key, c in vec.items():
            h = M.hval(i, key)
            out[key] = c * qpow(s * d * h * (h + 1) // 2)
        return out

    def e_k(power, coeff):
        def step(vec):
            return vscale(M.apply_e(i, M.apply_ki(i, power, vec)), coeff)
        return step

    def f_step(coeff):
        def step(vec):
            return vscale(M.apply_f(i, vec), coeff)
        return step

    if sign == 1:
        def op(vec):
            v = diag(vec, 1)
            v = _exp_apply(v, e_k(1, qi), -1, d)
            v = _exp_apply(v, f_step(-ONE), -1, d)
            v = _exp_apply(v, e_k(-1, qi_inv), -1, d)
            return v
    else:
        def op(vec):
            v = _exp_apply(vec, e_k(-1, -qi_inv), 1, d)
            v = _exp_apply(v, f_step(ONE), 1, d)
            v = _exp_apply(v, e_k(1, -qi), 1, d)
            return diag(v, -1)
    return op


def s_word_op(M, word, sign=1):
    """S_w = S_{w_1} ... S_{w_r} (sign=+1) or its inverse (sign=-1)."""
    ops = [s_op(M, i, sign) for i in word]

    def op(vec):
        seq = reversed(ops) if sign == 1 else ops
        for o in seq:
            vec = o(vec)
        return vec
    return op


class RightModule:
    """Dual of a FinModule with the right action <v P, u> = <v, P u>."""

    def __init__(self, M):
        self.M = M
        self.datum = M.datum

    def pair(self, v, u):
        total = ZERO
        for k, c in v.items():
            d = u.get(k)
            if d is not None:
                total = total + c * d
        return total

    def act_gen(self, kind, i, v):
        T = self.M.transposed(kind)[i]
        out = {}
        for a, c in v.items():
            for b, c2 in T[a].items():
                _acc(out, b, c * c2)
        return out

    def act_word(self, kind, word, v):
        """v x_{w_1} ... x_{w_r}: the leftmost letter acts first."""
        for a in word:
            v = self.act_gen(kind, a, v)
            if not v:
                break
        return v

    def act_k(self, beta, v):
        return self.M.apply_k(beta, v)

    def act_poly(self, x, v):
        out = {}
        for (d, w), c in x.terms.items():
            vadd(out, self.act_word(x.kind, w, self.act_k(d, v)), c)
        return out

    def act_op(self, op, v):
        """v P for an arbitrary operator P (a function on vectors)."""
        out = {}
        for b in range(self.M.dim):
            img = op({b: ONE})
            c = self.pair(v, img)
            if c:
                out[b] = c
        return out

    def highest(self):
        return {self.M.highest_index(): ONE}

    def lowest_w0(self):
        """v_{w0 lam} := v_lam S_{w0}."""
        v = self.highest()
        for i in self.datum.w0_word():
            v = self.act_op(s_op(self.M, i, 1), v)
        return v


def u_w0(M):
    """u_{w0 lam} := S_{w0}^{-1} u_lam."""
    return s_word_op(M, M.datum.w0_word(), -1)(highest_vector(M))


# -- PBW root vectors ----------------------------------------------------------

FAMILIES = ("'+1", "''-1", "''+1", "'-1")

_ROOT_CACHE = {}
_CACHE_DIR = [os.environ.get("QPBW_CACHE_DIR") or None]


def set_cache_dir(path):
    """Enable (or disable with ``None``) the on-disk root vector cache."""
    _CACHE_DIR[0] = str(path) if path else None


def _words_of_content(gamma):
    letters = []
    for i, c in enumerate(gamma):
        letters += [i + 1] * c
    return sorted(set(itertools.permutations(letters)))


def faithful_lambda(datum, gamma):
    """lam = sum c_i varpi_i with c_i the coefficient of alpha_i in gamma."""
    return tuple(int(c) for c in gamma)


def _faithful_candidates(R, gamma, kind):
    c = tuple(gamma) if kind == "f" else tuple(gamma[R.w0_dual(i) - 1] for i in R.nodes)
    ranges = [range(0 if x == 0 else 1, x + 1) for x in c]
    cands = sorted(itertools.product(*ranges), key=lambda l: (sum(l), l))
    return cands


def _faithful_setup(R, gamma, kind):
    """A tensor module, start vector and word images with full rank on weight gamma."""
    words = _words_of_content(gamma)
    need = R.kostant_count(tuple(gamma))
    for lam in _faithful_candidates(R, gamma, kind):
        T = tensor_of_fundamentals(R, lam)
        u = {T.top(): ONE} if kind == "f" else {T.bottom(): ONE}
        images = [T.apply_word(kind, w, u) for w in words]
        el = Eliminator()
        for im in images:
            el.add(im)
        if el.rank == need:
            return T, u, words, images, el
    raise RuntimeError("no faithful module found")


def _conjugated_generator(T, u, word_prefix, kind, i):
    v = s_word_op(T, word_prefix, -1)(u)
    v = T.apply_gen(kind, i, v)
    return s_word_op(T, word_prefix, 1)(v)


def _extract(R, word, k, kind):
    beta = R.root_sequence(word)[k - 1]
    T, u, words, images, el = _faithful_setup(R, beta, kind)
    target = _conjugated_generator(T, u, word[:k - 1], kind, word[k - 1])
    coeffs = el.express(target)
    cls = EWordPoly if kind == "e" else FWordPoly
    return cls.from_words(R, {words[j]: c for j, c in coeffs.items() if c})


def braid_root_vector(datum, word, k, kind="f"):
    """T''_{i_1,1} ... T''_{i_{k-1},1}(x_{i_k}) with x = f (default) or e.

    Computed as S_{i_1}...S_{i_{k-1}} x_{i_k} S_{i_{k-1}}^{-1}...S_{i_1}^{-1}
    on a module where the weight space acts faithfully.
    """
    R = datum if isinstance(datum, RootDatum) else root_datum(datum)
    word = tuple(word)
    key = (R.label, word, k, kind)
    if key in _ROOT_CACHE:
        return _ROOT_CACHE[key]
    cls = EWordPoly if kind == "e" else FWordPoly
    if k == 1:
        x = cls.gen(R, word[0])
    else:
        x = _disk_load(R, word, k, kind)
        if x is None:
            x = _extract(R, word, k, kind)
            _disk_store(R, word, k, kind, x)
    _ROOT_CACHE[key] = x
    return x


def _cache_path(R, word, k, kind):
    d = _CACHE_DIR[0]
    if not d:
        return None
    fam = "f''" if kind == "f" else "e''"
    name = f"{R.type}{R.rank}_{''.join(map(str, word))}_{k}_{fam.replace(chr(39), 'p')}.json"
    return Path(d) / name


def _disk_load(R, word, k, kind):
    p = _cache_path(R, word, k, kind)
    if p is None or not p.exists():
        return None
    cls = EWordPoly if kind == "e" else FWordPoly
    with open(p) as fh:
        return cls.from_json(R, json.load(fh)["terms"])


def _disk_store(R, word, k, kind, x):
    p = _cache_path(R, word, k, kind)
    if p is None:
        return
    p.parent.mkdir(parents=True, exist_ok=True)
    data = {"type": R.type, "rank": R.rank, "word": list(word), "k": k,
            "family": "''+1", "kind": kind, "terms": x.to_json()}
    tmp = p.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        json.dump(data, fh, sort_keys=True)
    os.replace(tmp, p)


def clear_caches():
    _ROOT_CACHE.clear()


def root_vector(datum, word, k, family="'+1", kind="e"):
    """Root vector x^{family}_{i,+-1;k} for the families of PBW bases.

    The (',+1) vectors are obtained from the ('',+1) ones by the Chevalley
    involution: e'_{i,1;k} = omega(f''_{i,1;k}).
    """
    family = _norm_family(family)
    if family == "''+1":
        return braid_root_vector(datum, word, k, kind)
    if family == "'+1":
        other = "f" if kind == "e" else "e"
        return braid_root_vector(datum, word, k, other).omega()
    raise ValueError("root vectors of the -1 families are obtained via star on monomials")


def _norm_family(family):
    if isinstance(family, tuple):
        fl, e = family
        family = f"{fl}{'+1' if int(e) > 0 else '-1'}"
    family = family.replace("′′", "''").replace("′", "'").replace("″", "''")
    family = family.replace("+-", "-")
    if family.endswith("1") and family[-2] not in "+-":
        family = family[:-1] + "+1"
    if family not in FAMILIES:
        raise ValueError(f"unknown PBW family {family!r}")
    return family


def pbw_monomial(datum, word, m, family="'+1", kind="e"):
    """PBW monomial x^{family}_{i}(m): ascending product for +1 families and
    the star image (a descending product) for -1 families."""
    R = datum if isinstance(datum, RootDatum) else root_datum(datum)
    word = tuple(word)
    family = _norm_family(family)
    cls = EWordPoly if kind == "e" else FWordPoly
    if len(m) != len(word):
        raise ValueError("multi-index length differs from the word length")
    if family == "''-1":
        return pbw_monomial(R, word, m, "'+1", kind).star()
    if family == "'-1":
        return pbw_monomial(R, word, m, "''+1", kind).star()
    out = cls.one(R)
    for k, mk in enumerate(m, start=1):
        if mk:
            out = out * (root_vector(R, word, k, family, kind) ** mk)
    return out


# -- matrix coefficients --------------------------------------------------------

def mco_eval(factors, monomial):
    """<v_1 (x) ... (x) v_n, F k^beta E (u_1 (x) ... (x) u_n)>.

    ``factors`` is a list of ``(v, u, module)`` with v a dual (row) vector and
    u a vector of the FinModule ``module``; ``monomial`` is a triple
    ``(f_word, beta, e_word)`` of an f-word, a root-lattice element and an e-word.
    """
    fw, beta, ew = monomial
    mods = [F for _, _, F in factors]
    T = TensorModule(mods)
    u = {}
    for combo in itertools.product(*[list(x[1].items()) for x in factors]):
        key = tuple(b for b, _ in combo)
        c = ONE
        for _, cc in combo:
            c = c * cc
        _acc(u, key, c)
    vec = T.apply_word("e", tuple(ew), u)
    vec = T.apply_k(tuple(beta), vec)
    vec = T.apply_word("f", tuple(fw), vec)
    total = ZERO
    for key, c in vec.items():
        p = c
        for (v, _, _), b in zip(factors, key):
            vb = v.get(b)
            if vb is None:
                p = None
                break
            p = p * vb
        if p is not None:
            total = total + p
    return total


def check_braid_relations(datum, lam=None):
    """Braid relations of the S_i and S_i S_i^-1 = 1 on V(lam) (default V(rho))."""
    R = datum if isinstance(datum, RootDatum) else root_datum(datum)
    V = highest_weight_module(R, tuple(lam) if lam is not None else R.rho)
    reports = []
    for i in R.nodes:
        for j in R.nodes:
            if i >= j:
                continue
            m = R.braid_order(i, j)
            w1 = tuple(i if k % 2 == 0 else j for k in range(m))
            w2 = tuple(j if k % 2 == 0 else i for k in range(m))
            A, B = s_word_op(V, w1), s_word_op(V, w2)
            bad = next((b for b in range(V.dim) if A({b: ONE}) != B({b: ONE})), None)
            rep = {"relation": f"braid S_{i} S_{j} ... (length {m}) on V{tuple(V.weights[0])}",
                   "status": "pass" if bad is None else "fail"}
            if bad is not None:
                rep["witness"] = {"basis_vector": bad}
            reports.append(rep)
    for i in R.nodes:
        S, Si = s_op(V, i, 1), s_op(V, i, -1)
        bad = next((b for b in range(V.dim) if Si(S({b: ONE})) != {b: ONE}), None)
        rep = {"relation": f"S_{i}^-1 S_{i} = 1", "status": "pass" if bad is None else "fail"}
        if bad is not None:
            rep["witness"] = {"basis_vector": bad}
        reports.append(rep)
    return reports
