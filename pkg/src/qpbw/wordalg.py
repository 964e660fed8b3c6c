"""Noncommutative word polynomials for U_q^+ and U_q^- (free algebra picture).

An element is a finite sum ``sum c * k^beta * x_{w_1} ... x_{w_r}`` where
``x`` is ``e`` (kind ``"e"``) or ``f`` (kind ``"f"``), ``beta`` is a root
lattice element (the *dressing*) and the Cartan part is always written on
the left.  Words are tuples of node labels.  No Serre relation is imposed,
so two word polynomials may represent the same element of U_q while being
different as word polynomials; equality in U_q is decided by the Drinfeld
pairing (see :mod:`qpbw.dpair`).

Commutation with the Cartan part uses ``k_i e_j = q^{(a_i,a_j)} e_j k_i`` and
``k_i f_j = q^{-(a_i,a_j)} f_j k_i``.
"""
from __future__ import annotations

from .qscalar import ZERO, ONE, Scalar, as_scalar, qpow, q_fact, q_int
from .rootdata import RootDatum

__all__ = ["WordPoly", "EWordPoly", "FWordPoly", "word_content", "serre_element",
           "divided_power", "qboson_fprime", "braid_T_generator", "coproduct",
           "antipode"]


def word_content(word, rank):
    c = [0] * rank
    for i in word:
        c[i - 1] += 1
    return tuple(c)


class WordPoly:
    """Sum of dressed words ``{(dress, word): Scalar}``."""

    kind = None

    __slots__ = ("datum", "terms")

    def __init__(self, datum, terms=None):
        self.datum = datum
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = as_scalar(c)
                if c:
                    dress, word = key
                    key = (tuple(dress), tuple(word))
                    old = self.terms.get(key)
                    c = c if old is None else old + c
                    if c:
                        self.terms[key] = c
                    else:
                        self.terms.pop(key, None)

    # -- constructors ---------------------------------------------------------
    @classmethod
    def from_words(cls, datum, words):
        """Build from ``{word: coeff}`` (undressed)."""
        z = datum.zero()
        return cls(datum, {(z, tuple(w)): c for w, c in words.items()})

    @classmethod
    def one(cls, datum):
        return cls(datum, {(datum.zero(), ()): ONE})

    @classmethod
    def gen(cls, datum, i):
        return cls(datum, {(datum.zero(), (i,)): ONE})

    @classmethod
    def k(cls, datum, beta):
        return cls(datum, {(tuple(beta), ()): ONE})

    @classmethod
    def word(cls, datum, word, coeff=ONE):
        return cls(datum, {(datum.zero(), tuple(word)): coeff})

    def _new(self, terms):
        obj = object.__new__(type(self))
        obj.datum = self.datum
        obj.terms = terms
        return obj

    # -- inspection -------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])))

    def is_undressed(self):
        return all(not any(d) for d, _ in self.terms)

    def words(self):
        """``{word: coeff}`` for an undressed element."""
        if not self.is_undressed():
            raise ValueError("element carries a Cartan part")
        return {w: c for (_, w), c in self.terms.items()}

    def contents(self):
        return {word_content(w, self.datum.rank) for _, w in self.terms}

    def content(self):
        """Common root-lattice content of all words (raises if inhomogeneous)."""
        cs = self.contents()
        if not cs:
            return self.datum.zero()
        if len(cs) != 1:
            raise ValueError("inhomogeneous word polynomial")
        return cs.pop()

    def is_homogeneous(self):
        return len(self.contents()) <= 1

    def weight(self):
        """Q-grading: +content for e-words, -content for f-words."""
        c = self.content()
        return c if self.kind == "e" else tuple(-x for x in c)

    # -- linear structure -------------------------------------------------------
    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.datum != self.datum:
            raise ValueError("different root data")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k)
            v = c if v is None else v + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return self._new(t)

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        if not c:
            return self._new({})
        return self._new({k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, WordPoly):
            self._check(other)
            return self._new(_multiply(self.datum, self.kind, self.terms, other.terms))
        return self.scale(other)

    def __pow__(self, n):
        out = type(self).one(self.datum)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, WordPoly):
            return NotImplemented
        return type(self) is type(other) and self.datum == other.datum and self.terms == other.terms

    def __hash__(self):
        return hash((self.kind, frozenset(self.terms.items())))

    # -- (anti)automorphisms ------------------------------------------------------
    def star(self):
        """The anti-involution fixing e_i, f_i and inverting k_i."""
        out = self._new({})
        for (dress, word), c in self.terms.items():
            t = type(self).word(self.datum, tuple(reversed(word)), c)
            t = t * type(self).k(self.datum, tuple(-b for b in dress))
            out = out + t
        return out

    def omega(self):
        """The automorphism e_i <-> f_i, k_i -> k_i^-1 (changes the kind)."""
        other = FWordPoly if self.kind == "e" else EWordPoly
        obj = object.__new__(other)
        obj.datum = self.datum
        obj.terms = {(tuple(-b for b in d), w): c for (d, w), c in self.terms.items()}
        return obj

    def bar_coeffs(self):
        return self._new({k: c.bar() for k, c in self.terms.items()})

    # -- output -------------------------------------------------------------------
    def to_json(self):
        return [{"word": list(w), "coeff": c.canonical_str(), "dress": list(d)}
                for (d, w), c in self]

    @classmethod
    def from_json(cls, datum, data):
        return cls(datum, {(tuple(t.get("dress", datum.zero())), tuple(t["word"])): Scalar.parse(t["coeff"])
                           for t in data})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (d, w), c in self:
            mon = "".join(f"{self.kind}{i}" for i in w) or "1"
            if any(d):
                mon = f"k^{list(d)}" + ("" if mon == "1" else "*" + mon)
            cs = str(c)
            if cs == "1":
                parts.append(mon)
            elif cs == "-1":
                parts.append("-" + mon)
            else:
                parts.append(f"({cs})*{mon}")
        return " + ".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class EWordPoly(WordPoly):
    kind = "e"
    __slots__ = ()


class FWordPoly(WordPoly):
    kind = "f"
    __slots__ = ()


def _multiply(datum, kind, a, b):
    """(k^beta w1)(k^gamma w2) = q^{-s (gamma, |w1|)} k^{beta+gamma} w1 w2, s = +1 for e."""
    s = 1 if kind == "e" else -1
    rank = datum.rank
    out = {}
    for (d1, w1), c1 in a.items():
        cont = word_content(w1, rank)
        for (d2, w2), c2 in b.items():
            c = c1 * c2
            if any(d2) and w1:
                c = c * qpow(-s * datum.form_roots(d2, cont))
            key = (tuple(x + y for x, y in zip(d1, d2)), w1 + w2)
            v = out.get(key)
            v = c if v is None else v + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def _cls(kind):
    return EWordPoly if kind == "e" else FWordPoly


def divided_power(datum, kind, i, r):
    """x_i^{(r)} = x_i^r / [r]_i!."""
    return _cls(kind).word(datum, (i,) * r, q_fact(r, datum.di(i)).inverse())


def serre_element(datum, i, j, kind="e"):
    """sum_r (-1)^r x_i^{(r)} x_j x_i^{(1-a_ij-r)}; zero in U_q."""
    if i == j:
        raise ValueError("Serre relation needs i != j")
    n = 1 - datum.a(i, j)
    cls = _cls(kind)
    out = cls(datum)
    xj = cls.gen(datum, j)
    for r in range(n + 1):
        t = divided_power(datum, kind, i, r) * xj * divided_power(datum, kind, i, n - r)
        out = out + (t if r % 2 == 0 else -t)
    return out


def qboson_fprime(x, i):
    """The q-derivation f'_i on U_q^+ (acting on undressed e-words).

    f'_i(e_j) = delta_ij and f'_i(XY) = f'_i(X) Y + q_i^{-<h_i, |X|>} X f'_i(Y).
    """
    if x.kind != "e":
        raise TypeError("f'_i acts on U_q^+")
    datum = x.datum
    di = datum.di(i)
    rank = datum.rank
    out = {}
    z = datum.zero()
    for (d, w), c in x.terms.items():
        if any(d):
            raise ValueError("f'_i is defined on U_q^+ only")
        prefix = [0] * rank
        for p, a in enumerate(w):
            if a == i:
                e = -di * sum(datum.a(i, b + 1) * prefix[b] for b in range(rank))
                key = (z, w[:p] + w[p + 1:])
                v = c * qpow(e)
                old = out.get(key)
                v = v if old is None else old + v
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
            prefix[a - 1] += 1
    return x._new(out)


def braid_T_generator(datum, flavour, e, i, j, kind):
    """Direct formula for T'_{i,e}(x_j) or T''_{i,e}(x_j) with i != j.

    ``flavour`` is ``"'"`` or ``"''"`` and ``kind`` is ``"e"`` or ``"f"``.  The
    result lies in U_q^+ (resp. U_q^-).
    """
    if i == j:
        raise ValueError("direct formula only implemented for i != j")
    n = -datum.a(i, j)
    di = datum.di(i)
    cls = _cls(kind)
    xj = cls.gen(datum, j)
    out = cls(datum)
    for r in range(n + 1):
        sign = -1 if r % 2 else 1
        if flavour == "'":
            if kind == "e":
                t = divided_power(datum, kind, i, r) * xj * divided_power(datum, kind, i, n - r)
                c = qpow(di * e * r)
            else:
                t = divided_power(datum, kind, i, n - r) * xj * divided_power(datum, kind, i, r)
                c = qpow(-di * e * r)
        else:
            ee = -e  # T''_{i,-ee}
            if kind == "e":
                t = divided_power(datum, kind, i, n - r) * xj * divided_power(datum, kind, i, r)
                c = qpow(di * ee * r)
            else:
                t = divided_power(datum, kind, i, r) * xj * divided_power(datum, kind, i, n - r)
                c = qpow(-di * ee * r)
        out = out + t.scale(c * sign)
    return out


# -- Hopf structure on dressed words -------------------------------------------

def _tensor_mul(datum, kind, A, B):
    """Multiply elements of (U x U) given as {(termL, termR): c}."""
    out = {}
    for (l1, r1), c1 in A.items():
        for (l2, r2), c2 in B.items():
            L = _multiply(datum, kind, {l1: ONE}, {l2: ONE})
            R = _multiply(datum, kind, {r1: ONE}, {r2: ONE})
            for lk, lc in L.items():
                for rk, rc in R.items():
                    key = (lk, rk)
                    v = c1 * c2 * lc * rc
                    old = out.get(key)
                    v = v if old is None else old + v
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
    return out


def coproduct(x):
    """Delta(x) as ``{((dL, wL), (dR, wR)): c}``.

    Delta(e_i) = e_i (x) 1 + k_i (x) e_i and Delta(f_i) = f_i (x) k_i^-1 + 1 (x) f_i.
    """
    datum = x.datum
    z = datum.zero()
    total = {}
    for (d, w), c in x.terms.items():
        acc = {((d, ()), (d, ())): c}
        for a in w:
            al = datum.simple_root(a)
            if x.kind == "e":
                g = {((z, (a,)), (z, ())): ONE, ((al, ()), (z, (a,))): ONE}
            else:
                neg = tuple(-b for b in al)
                g = {((z, (a,)), (neg, ())): ONE, ((z, ()), (z, (a,))): ONE}
            acc = _tensor_mul(datum, x.kind, acc, g)
        for k, v in acc.items():
            old = total.get(k)
            v = v if old is None else old + v
            if v:
                total[k] = v
            else:
                total.pop(k, None)
    return total


def antipode(x):
    """S(e_i) = -k_i^-1 e_i, S(f_i) = -f_i k_i, S(k) = k^-1 (anti-homomorphism)."""
    datum = x.datum
    cls = type(x)
    out = cls(datum)
    for (d, w), c in x.terms.items():
        t = cls.one(datum).scale(c)
        for a in reversed(w):
            al = datum.simple_root(a)
            if x.kind == "e":
                s = cls.k(datum, tuple(-b for b in al)) * cls.gen(datum, a)
            else:
                s = cls.gen(datum, a) * cls.k(datum, al)
            t = t * s.scale(-1)
        t = t * cls.k(datum, tuple(-b for b in d))
        out = out + t
    return out
