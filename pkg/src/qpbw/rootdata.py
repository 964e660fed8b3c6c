"""Finite root systems: Cartan data, Weyl group words and root sequences.

Nodes are labelled ``1..n``.  Weights are tuples of integers in the basis of
fundamental weights; elements of the root lattice are tuples of integers in
the basis of simple roots.  The Cartan matrix uses ``a[i][j] = <h_i, alpha_j>``
and the symmetrizer ``d`` satisfies ``(alpha_i, alpha_j) = d_i a_ij`` with
``d_i = 1`` on short roots.

Conventions for the non simply-laced types (Bourbaki numbering):

* ``B_n``: nodes ``1..n-1`` long, node ``n`` short (so in ``B2`` node 1 is long);
* ``C_n``: nodes ``1..n-1`` short, node ``n`` long;
* ``G2``: node 1 short, node 2 long (``d = (1, 3)``).
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from fractions import Fraction
from functools import lru_cache

__all__ = ["RootDatum", "root_datum", "parse_word"]


def _cartan(typ, n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    if typ == "A":
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
        d = [1] * n
    elif typ == "B":
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
        if n >= 2:
            a[n - 1][n - 2] = -2
        d = [2] * (n - 1) + [1]
    elif typ == "C":
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
        if n >= 2:
            a[n - 2][n - 1] = -2
        d = [1] * (n - 1) + [2]
    elif typ == "D":
        if n < 3:
            raise ValueError("D_n needs n >= 3")
        for i in range(n - 2):
            a[i][i + 1] = a[i + 1][i] = -1
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        d = [1] * n
    elif typ == "G":
        if n != 2:
            raise ValueError("only G2 exists")
        a = [[2, -3], [-1, 2]]
        d = [1, 3]
    else:
        raise ValueError(f"unsupported Cartan type {typ!r}")
    if n == 1:
        d = [1]
    return tuple(map(tuple, a)), tuple(d)


class RootDatum:
    """Root datum of a finite-type Cartan matrix.

    >>> R = root_datum("A2")
    >>> R.root_sequence((1, 2, 1))
    ((1, 0), (1, 1), (0, 1))
    """

    def __init__(self, typ, rank):
        self.type = typ
        self.rank = rank
        self.label = f"{typ}{rank}"
        self.cartan, self.d = _cartan(typ, rank)
        self.nodes = tuple(range(1, rank + 1))
        n = rank
        # symmetrized form on simple roots
        self.B = tuple(tuple(self.d[i] * self.cartan[i][j] for j in range(n)) for i in range(n))
        self._ainv = _invert(self.cartan)
        self._w0word = None

    def __repr__(self):
        return f"RootDatum({self.label!r})"

    def __eq__(self, other):
        return isinstance(other, RootDatum) and self.label == other.label

    def __hash__(self):
        return hash(self.label)

    def __reduce__(self):
        return (root_datum, (self.label,))

    # -- basic data -------------------------------------------------------
    def a(self, i, j):
        return self.cartan[i - 1][j - 1]

    def di(self, i):
        return self.d[i - 1]

    def simple_root(self, i):
        """alpha_i in root coordinates."""
        return tuple(int(k == i) for k in self.nodes)

    def fundamental_weight(self, i):
        return tuple(int(k == i) for k in self.nodes)

    @property
    def rho(self):
        return (1,) * self.rank

    def zero(self):
        return (0,) * self.rank

    # -- coordinate changes -------------------------------------------------
    def root_to_weight(self, beta):
        """Root coordinates -> fundamental-weight coordinates."""
        n = self.rank
        return tuple(sum(self.cartan[j][i] * beta[i] for i in range(n)) for j in range(n))

    def weight_to_root(self, lam):
        """Fundamental coordinates -> (possibly fractional) root coordinates."""
        n = self.rank
        out = []
        for i in range(n):
            s = sum(self._ainv[i][j] * lam[j] for j in range(n))
            out.append(s.numerator if s.denominator == 1 else s)
        return tuple(out)

    def pairing_hw(self, i, beta):
        """<h_i, beta> for beta in root coordinates."""
        row = self.cartan[i - 1]
        return sum(row[j] * beta[j] for j in range(self.rank))

    def form_roots(self, beta, gamma):
        """(beta, gamma) for root-lattice elements in root coordinates."""
        n = self.rank
        return sum(beta[i] * self.B[i][j] * gamma[j] for i in range(n) for j in range(n)
                   if beta[i] and gamma[j])

    def form_root_weight(self, beta, lam):
        """(beta, lam) with beta in root coordinates and lam a weight."""
        return sum(beta[i] * self.d[i] * lam[i] for i in range(self.rank))

    def form(self, lam, mu):
        """(lam, mu) for two weights (fundamental coordinates); a Fraction."""
        c = self.weight_to_root(mu)
        s = sum(Fraction(self.d[j] * lam[j]) * c[j] for j in range(self.rank))
        return s.numerator if s.denominator == 1 else s

    # -- Weyl group -----------------------------------------------------------
    def reflect_weight(self, i, lam):
        lam = list(lam)
        c = lam[i - 1]
        col = [self.cartan[j][i - 1] for j in range(self.rank)]
        return tuple(lam[j] - c * col[j] for j in range(self.rank))

    def reflect_root(self, i, beta):
        c = self.pairing_hw(i, beta)
        beta = list(beta)
        beta[i - 1] -= c
        return tuple(beta)

    def act_weight(self, word, lam):
        """s_{w_1} ... s_{w_k} (lam); the rightmost letter acts first."""
        for i in reversed(word):
            lam = self.reflect_weight(i, lam)
        return lam

    def act_root(self, word, beta):
        for i in reversed(word):
            beta = self.reflect_root(i, beta)
        return beta

    @property
    def n_positive(self):
        return len(self.positive_roots())

    @lru_cache(maxsize=None)
    def positive_roots(self):
        """Positive roots in root coordinates, sorted by height then lexicographically."""
        roots = set()
        frontier = [self.simple_root(i) for i in self.nodes]
        roots.update(frontier)
        while frontier:
            new = []
            for beta in frontier:
                for i in self.nodes:
                    g = self.reflect_root(i, beta)
                    if all(c >= 0 for c in g) and g not in roots:
                        roots.add(g)
                        new.append(g)
            frontier = new
        return tuple(sorted(roots, key=lambda b: (sum(b), b)))

    def is_reduced(self, word):
        """Whether ``s_{w_1}...s_{w_k}`` is a reduced expression."""
        for k in range(len(word)):
            beta = self.act_root(word[:k], self.simple_root(word[k]))
            if any(c < 0 for c in beta):
                return False
        return True

    def is_w0_word(self, word):
        return len(word) == self.n_positive and self.is_reduced(word)

    def w0_word(self):
        """A reduced expression of the longest element (lexicographically first)."""
        if self._w0word is None:
            self._w0word = min(self.reduced_words_w0())
        return self._w0word

    def _some_w0_word(self):
        lam = self.rho
        word = []
        while True:
            for i in self.nodes:
                if lam[i - 1] > 0:
                    lam = self.reflect_weight(i, lam)
                    word.append(i)
                    break
            else:
                break
        return tuple(word)

    def braid_order(self, i, j):
        p = self.a(i, j) * self.a(j, i)
        return {0: 2, 1: 3, 2: 4, 3: 6}[p]

    @lru_cache(maxsize=None)
    def reduced_words_w0(self):
        """All reduced words of w0 (closure of one word under braid moves)."""
        start = self._some_w0_word()
        seen = {start}
        queue = deque([start])
        while queue:
            w = queue.popleft()
            for nw in self._braid_neighbours(w):
                if nw not in seen:
                    seen.add(nw)
                    queue.append(nw)
        return tuple(sorted(seen))

    def _braid_neighbours(self, w):
        L = len(w)
        for p in range(L - 1):
            i, j = w[p], w[p + 1]
            if i == j:
                continue
            m = self.braid_order(i, j)
            if p + m > L:
                continue
            pattern = tuple(i if t % 2 == 0 else j for t in range(m))
            if w[p:p + m] == pattern:
                repl = tuple(j if t % 2 == 0 else i for t in range(m))
                yield w[:p] + repl + w[p + m:]

    def root_sequence(self, word):
        """beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})."""
        return tuple(self.act_root(word[:k], self.simple_root(word[k])) for k in range(len(word)))

    def w0_weight(self, lam):
        return self.act_weight(self.w0_word(), lam)

    @lru_cache(maxsize=None)
    def w0_dual(self, i):
        """The node i' with w0(varpi_{i'}) = -varpi_i."""
        for j in self.nodes:
            if self.w0_weight(self.fundamental_weight(j)) == tuple(-c for c in self.fundamental_weight(i)):
                return j
        raise RuntimeError("w0 dual not found")

    @property
    def rho_dual_twice(self):
        """2 rho' = sum of positive coroots, as coefficients of the simple coroots."""
        out = [Fraction(0)] * self.rank
        for beta in self.positive_roots():
            norm = self.form_roots(beta, beta)
            for i in range(self.rank):
                out[i] += Fraction(2 * beta[i] * self.d[i], norm)
        return tuple(int(c) for c in out)

    def pair_2rho_dual(self, lam):
        """(2 rho', lam) = sum over positive roots of <beta^vee, lam>."""
        c = self.rho_dual_twice
        return sum(c[i] * lam[i] for i in range(self.rank))

    def pair_2rho(self, lam):
        """(2 rho, lam)."""
        return 2 * self.form(self.rho, lam)

    # -- weights ----------------------------------------------------------------
    def dim_irrep(self, lam):
        """Weyl dimension formula."""
        num, den = Fraction(1), Fraction(1)
        lr = tuple(l + 1 for l in lam)
        for beta in self.positive_roots():
            num *= self.form_root_weight(beta, lr)
            den *= self.form_root_weight(beta, self.rho)
        return int(num / den)

    def kostant_vectors(self, word, gamma):
        """All multi-indices m with sum_k m_k beta_k = gamma, lexicographic order."""
        betas = self.root_sequence(word)
        return _partitions(betas, tuple(gamma))

    def kostant_count(self, gamma):
        return len(_partitions(self.positive_roots(), tuple(gamma)))

    def weight_of_multiindex(self, word, m):
        betas = self.root_sequence(word)
        return tuple(sum(m[k] * betas[k][i] for k in range(len(m))) for i in range(self.rank))

    def multiindices(self, word, bound):
        """All m with |m| = sum m_k <= bound, lexicographic order."""
        N = len(word)
        out = [m for m in itertools.product(range(bound + 1), repeat=N) if sum(m) <= bound]
        return sorted(out)

    def block_multiindices(self, word, max_height):
        """All m whose weight has height <= max_height (a union of full weight blocks)."""
        betas = self.root_sequence(tuple(word))
        hts = [sum(b) for b in betas]
        out = []

        def rec(k, left, acc):
            if k == len(hts):
                out.append(tuple(acc))
                return
            for c in range(left // hts[k] + 1):
                rec(k + 1, left - c * hts[k], acc + [c])

        rec(0, max_height, [])
        return sorted(out)

    def height(self, gamma):
        return sum(gamma)


@lru_cache(maxsize=None)
def _partitions(betas, gamma):
    """Multi-indices over ``betas`` summing to ``gamma`` (lexicographic)."""
    if not betas:
        return [()] if all(c == 0 for c in gamma) else []
    b0, rest = betas[0], betas[1:]
    out = []
    k = 0
    g = gamma
    while all(c >= 0 for c in g):
        for tail in _partitions(rest, g):
            out.append((k,) + tail)
        k += 1
        g = tuple(gi - bi for gi, bi in zip(g, b0))
    return sorted(out)


def _invert(a):
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


@lru_cache(maxsize=None)
def root_datum(label):
    """Root datum from a label such as ``"A2"``, ``"B2"`` or ``"G2"``."""
    mt = re.fullmatch(r"\s*([ABCDG])\s*(\d+)\s*", str(label))
    if not mt:
        raise ValueError(f"bad Cartan type label {label!r}")
    return RootDatum(mt.group(1), int(mt.group(2)))


def parse_word(text):
    """Parse ``"1,2,1"`` (1-based) into a tuple of node labels."""
    if isinstance(text, (tuple, list)):
        return tuple(int(x) for x in text)
    return tuple(int(x) for x in str(text).replace(" ", "").split(",") if x)
