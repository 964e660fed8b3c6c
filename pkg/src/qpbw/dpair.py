"""The Drinfeld pairing between U_q^{>=0} and U_q^{<=0}, and PBW transition matrices.

The pairing is computed from its defining properties.  Expanding
``(e_a X', Y) = (e_a (x) X', Delta(Y))`` with
``Delta(f_b) = f_b (x) k_b^-1 + 1 (x) f_b`` gives, for an f-word
``Y = f_{b_1} ... f_{b_n}``::

    (e_a X', Y) = sum_{j : b_j = a} q^{-(alpha_a, alpha_{b_1} + ... + alpha_{b_{j-1}})}
                  / (q_a - q_a^-1) * (X', Y with the j-th letter removed)

and Cartan dressings are discharged by ``(k^b X, k^c Y) = q^{(b,c)} (X, Y)``.

Because the pairing is nondegenerate on each weight space and kills the
q-Serre elements, the vector of pairings of ``x`` against all f-words of its
weight (the *Gram vector*) is a faithful coordinate system on U_q^+.
"""
from __future__ import annotations

import itertools
import logging
import time
from functools import lru_cache

from .linalg import Eliminator, InconsistentSystem, DependentColumns, vadd
from .qscalar import ONE, ZERO, Scalar, qpow, q_fact
from .rootdata import RootDatum, root_datum
from .wordalg import EWordPoly, FWordPoly, word_content, antipode, coproduct
from . import repmod

__all__ = ["pair", "word_pair", "GramVector", "gram_vector", "coords_in_basis",
           "transition_gamma", "TransitionMatrix", "transition_matrix",
           "leftmul_matrix", "antipode_f", "pair_tensor"]

log = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _inv_qdiff(d):
    return (qpow(d) - qpow(-d)).inverse()


@lru_cache(maxsize=1 << 20)
def _word_pair(label, ew, fw):
    if len(ew) != len(fw):
        return ZERO
    if not ew:
        return ONE
    R = root_datum(label)
    a = ew[0]
    rest = ew[1:]
    total = ZERO
    prefix = 0
    Ba = R.B[a - 1]
    for j, b in enumerate(fw):
        if b == a:
            sub = _word_pair(label, rest, fw[:j] + fw[j + 1:])
            if sub:
                total = total + sub * qpow(-prefix)
        prefix += Ba[b - 1]
    if total:
        total = total * _inv_qdiff(R.di(a))
    return total


def word_pair(datum, ew, fw):
    """(e_{ew}, f_{fw}) for two undressed words."""
    R = datum if isinstance(datum, RootDatum) else root_datum(datum)
    ew, fw = tuple(ew), tuple(fw)
    if sorted(ew) != sorted(fw):
        return ZERO
    return _word_pair(R.label, ew, fw)


def pair(x, y):
    """Drinfeld pairing (x, y) of an e-word polynomial with an f-word polynomial."""
    if x.kind != "e" or y.kind != "f":
        raise TypeError("pair expects (EWordPoly, FWordPoly)")
    R = x.datum
    total = ZERO
    for (dx, wx), cx in x.terms.items():
        for (dy, wy), cy in y.terms.items():
            p = word_pair(R, wx, wy)
            if p:
                if any(dx) and any(dy):
                    p = p * qpow(R.form_roots(dx, dy))
                total = total + cx * cy * p
    return total


def pair_tensor(X, Y):
    """Pairing of tensors given as ``{(termL, termR): c}`` dicts (factorwise)."""
    total = ZERO
    for ((dl, wl), (dr, wr)), c in X.items():
        for ((el, vl), (er, vr)), d in Y.items():
            R = None
            total = total + c * d * _term_pair(dl, wl, el, vl) * _term_pair(dr, wr, er, vr)
    return total


_TP_DATUM = [None]


def _term_pair(dx, wx, dy, wy):
    R = _TP_DATUM[0]
    p = word_pair(R, wx, wy)
    if p and any(dx) and any(dy):
        p = p * qpow(R.form_roots(dx, dy))
    return p


def _tensor_pairing(datum, X, Y):
    _TP_DATUM[0] = datum
    return pair_tensor(X, Y)


def antipode_f(y):
    """S on dressed f-word polynomials, in k-left normal order."""
    return antipode(y)


# -- Gram vectors -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _fwords(gamma):
    letters = []
    for i, c in enumerate(gamma):
        letters += [i + 1] * c
    return tuple(sorted(set(itertools.permutations(letters))))


class GramVector:
    """Pairings of an element of (U_q^+)_gamma with all f-words of content gamma."""

    __slots__ = ("content", "values")

    def __init__(self, content, values):
        self.content = tuple(content)
        self.values = {w: c for w, c in values.items() if c}

    def is_zero(self):
        return not self.values

    def __eq__(self, other):
        if not isinstance(other, GramVector):
            return NotImplemented
        if not self.values and not other.values:
            return True
        return self.content == other.content and self.values == other.values

    def __getitem__(self, w):
        return self.values.get(tuple(w), ZERO)

    def as_vector(self):
        return dict(self.values)

    def __repr__(self):
        return f"GramVector({self.content}, {len(self.values)} nonzero)"


_GRAM_WORD = {}


def _gram_of_word(R, w):
    key = (R.label, w)
    g = _GRAM_WORD.get(key)
    if g is None:
        gamma = word_content(w, R.rank)
        g = {}
        for fw in _fwords(gamma):
            p = _word_pair(R.label, w, fw)
            if p:
                g[fw] = p
        _GRAM_WORD[key] = g
    return g


def gram_vector(x):
    """Faithful coordinates of a homogeneous undressed element of U_q^+."""
    R = x.datum
    if x.is_zero():
        return GramVector(R.zero(), {})
    gamma = x.content()
    out = {}
    for w, c in x.words().items():
        vadd(out, _gram_of_word(R, w), c)
    return GramVector(gamma, out)


def coords_in_basis(x, basis):
    """Exact coordinates of ``x`` in a linearly independent homogeneous family."""
    cols = [gram_vector(b).as_vector() for b in basis]
    el = Eliminator()
    for c in cols:
        if not el.add(c):
            raise DependentColumns("basis elements are linearly dependent")
    coeffs = el.express(gram_vector(x).as_vector())
    return [coeffs.get(j, ZERO) for j in range(len(basis))]


# -- transition matrices ---------------------------------------------------------------

def _datum(d):
    return d if isinstance(d, RootDatum) else root_datum(d)


def _check_word(R, w):
    if not R.is_w0_word(tuple(w)):
        raise ValueError(f"{tuple(w)} is not a reduced word of the longest element of {R.label}")


class _BlockSolver:
    """Gram-coordinate solver for one weight block of a target PBW basis."""

    def __init__(self, R, word, gamma):
        self.R = R
        self.word = tuple(word)
        self.gamma = tuple(gamma)
        self.ns = R.kostant_vectors(self.word, self.gamma)
        self.el = Eliminator()
        for n in self.ns:
            g = gram_vector(repmod.pbw_monomial(R, self.word, n, "'+1")).as_vector()
            if not self.el.add(g):
                raise DependentColumns("PBW monomials are dependent (this should not happen)")

    def coords(self, x):
        c = self.el.express(gram_vector(x).as_vector())
        return {self.ns[j]: v for j, v in sorted(c.items()) if v}


_BLOCKS = {}


def _block(R, word, gamma):
    key = (R.label, tuple(word), tuple(gamma))
    b = _BLOCKS.get(key)
    if b is None:
        b = _BLOCKS[key] = _BlockSolver(R, word, gamma)
    return b


def transition_gamma(datum, i, j, m):
    """Gamma_m^n with e'_{i,1}(m) = sum_n Gamma_m^n e'_{j,1}(n)."""
    R = _datum(datum)
    i, j, m = tuple(i), tuple(j), tuple(m)
    _check_word(R, i)
    _check_word(R, j)
    if i == j:
        return {m: ONE}
    gamma = R.weight_of_multiindex(i, m)
    x = repmod.pbw_monomial(R, i, m, "'+1")
    return _block(R, j, gamma).coords(x)


class TransitionMatrix:
    """Block-diagonal matrix {m: {n: Scalar}} between two PBW bases."""

    def __init__(self, datum, source, target, entries):
        self.datum = datum
        self.source = tuple(source)
        self.target = tuple(target)
        self.entries = {tuple(m): dict(row) for m, row in entries.items()}

    def __getitem__(self, m):
        return self.entries[tuple(m)]

    def blocks(self):
        out = {}
        for m in sorted(self.entries):
            w = self.datum.weight_of_multiindex(self.source, m)
            out.setdefault(w, []).append(m)
        return out

    def compose(self, other):
        """(self o other): first other (a -> b) then self (b -> c), as rows m -> ..."""
        out = {}
        for m, row in other.entries.items():
            acc = {}
            for n, c in row.items():
                if n not in self.entries:
                    raise KeyError(f"missing row {n}")
                vadd(acc, self.entries[n], c)
            out[m] = acc
        return TransitionMatrix(self.datum, other.source, self.target, out)

    def is_identity(self):
        return all(row == {m: ONE} for m, row in self.entries.items())

    def diff(self, other):
        """Entries where two matrices disagree: list of (m, n, mine, theirs)."""
        out = []
        for m in sorted(set(self.entries) | set(other.entries)):
            a = self.entries.get(m, {})
            b = other.entries.get(m, {})
            for n in sorted(set(a) | set(b)):
                x, y = a.get(n, ZERO), b.get(n, ZERO)
                if x != y:
                    out.append((m, n, x, y))
        return out

    def __eq__(self, other):
        return isinstance(other, TransitionMatrix) and not self.diff(other)

    def to_json(self):
        blocks = []
        for w, ms in sorted(self.blocks().items(), key=lambda kv: (sum(kv[0]), kv[0])):
            entries = []
            for m in ms:
                for n in sorted(self.entries[m]):
                    entries.append({"m": list(m), "n": list(n),
                                    "coeff": self.entries[m][n].canonical_str()})
            blocks.append({"weight": list(w), "entries": entries})
        return {"source": list(self.source), "target": list(self.target), "blocks": blocks}

    @classmethod
    def from_json(cls, datum, data):
        entries = {}
        for blk in data["blocks"]:
            for ent in blk["entries"]:
                entries.setdefault(tuple(ent["m"]), {})[tuple(ent["n"])] = Scalar.parse(ent["coeff"])
        return cls(datum, data["source"], data["target"], entries)


def transition_matrix(datum, i, j, bound, multiindices=None):
    """Gamma(i -> j) on all m with |m| <= bound (or on the given multi-indices)."""
    R = _datum(datum)
    i, j = tuple(i), tuple(j)
    ms = multiindices if multiindices is not None else R.multiindices(i, bound)
    entries = {}
    blocks = {}
    for m in ms:
        blocks.setdefault(R.weight_of_multiindex(i, m), []).append(tuple(m))
    for w in sorted(blocks, key=lambda g: (sum(g), g)):
        t = time.perf_counter()
        for m in blocks[w]:
            entries[m] = transition_gamma(R, i, j, m)
        log.info("Gamma block %s: %d rows in %.3fs", w, len(blocks[w]), time.perf_counter() - t)
    return TransitionMatrix(R, i, j, entries)


def leftmul_matrix(datum, word, gen, gamma):
    """rho_i(e_gen) restricted to the weight block gamma: {(n, m): Scalar}.

    Columns are the coordinates of e_gen * e'_{i,1}(m) in the PBW basis of
    weight gamma + alpha_gen.
    """
    R = _datum(datum)
    word = tuple(word)
    gamma = tuple(gamma)
    target = tuple(g + int(k == gen) for k, g in zip(R.nodes, gamma))
    solver = _block(R, word, target)
    eg = EWordPoly.gen(R, gen)
    out = {}
    for m in R.kostant_vectors(word, gamma):
        x = eg * repmod.pbw_monomial(R, word, m, "'+1")
        for n, c in solver.coords(x).items():
            out[(n, m)] = c
    return out


# -- checks ------------------------------------------------------------------------------

def lusztig_value(datum, word, m):
    """prod_k q_k^{-m_k(m_k-1)/2} [m_k]_k! / (q_k - q_k^-1)^{m_k}."""
    R = _datum(datum)
    out = ONE
    for i, mk in zip(word, m):
        if mk:
            d = R.di(i)
            out = out * qpow(-d * mk * (mk - 1) // 2) * q_fact(mk, d) * _inv_qdiff(d) ** mk
    return out


def check_lusztig(datum, word, bound):
    """(e''_{i,-1}(m), f''_{i,-1}(n)) = delta_{m,n} lusztig_value(m) for |m|, |n| <= bound."""
    R = _datum(datum)
    word = tuple(word)
    ms = R.multiindices(word, bound)
    E = {m: repmod.pbw_monomial(R, word, m, "''-1", "e") for m in ms}
    F = {m: repmod.pbw_monomial(R, word, m, "''-1", "f") for m in ms}
    count = 0
    for m in ms:
        wm = R.weight_of_multiindex(word, m)
        for n in ms:
            if R.weight_of_multiindex(word, n) != wm:
                continue
            count += 1
            p = pair(E[m], F[n])
            expected = lusztig_value(R, word, m) if m == n else ZERO
            if p != expected:
                return {"relation": f"Lusztig pairing {R.label} {word}", "status": "fail",
                        "witness": {"m": list(m), "n": list(n), "value": p.canonical_str(),
                                    "expected": expected.canonical_str()}, "checked": count}
    return {"relation": f"Lusztig pairing {R.label} {word}", "status": "pass", "checked": count}


def check_serre_gram(datum):
    """Gram vectors of all q-Serre elements (e and f side) vanish."""
    from .wordalg import serre_element
    R = _datum(datum)
    reports = []
    for i in R.nodes:
        for j in R.nodes:
            if i == j:
                continue
            x = serre_element(R, i, j, "e")
            ok = gram_vector(x).is_zero()
            reports.append({"relation": f"Serre ({i},{j}) in gram coordinates", "status": "pass" if ok else "fail"})
    return reports
