"""Exact sparse linear algebra over Q(q).

Vectors are plain ``dict`` objects mapping hashable keys to nonzero
:class:`~qpbw.qscalar.Scalar` values.  The solvers do Gauss-Jordan
elimination with pivots chosen by lowest polynomial degree, which keeps
the intermediate rational functions small.
"""
from __future__ import annotations

from .qscalar import ZERO, ONE, Scalar

__all__ = ["vadd", "vscale", "vclean", "Eliminator", "solve_combination",
           "nullspace", "rank", "invert_matrix", "InconsistentSystem", "DependentColumns"]


class InconsistentSystem(ValueError):
    pass


class DependentColumns(ValueError):
    pass


def vadd(target, vec, c=ONE):
    """In place ``target += c * vec``; zero entries are dropped."""
    for k, v in vec.items():
        w = target.get(k)
        nv = v * c if w is None else w + v * c
        if nv.is_zero():
            target.pop(k, None)
        else:
            target[k] = nv
    return target


def vscale(vec, c):
    if c.is_zero():
        return {}
    return {k: v * c for k, v in vec.items()}


def vclean(vec):
    return {k: v for k, v in vec.items() if not v.is_zero()}


def _size(s):
    return s.num.degree() + s.den.degree()


class Eliminator:
    """Incremental row echelon form for a family of sparse vectors.

    Each added vector is reduced against the existing pivots.  The reduction
    history is tracked so that a vector in the span can be written as a
    combination of the *original* inputs.
    """

    def __init__(self):
        self.rows = []      # reduced vectors (dict key -> Scalar)
        self.pivots = []    # pivot key of each row
        self.combos = []    # row i = sum combos[i][j] * original_j
        self.pivot_index = {}
        self.n_inputs = 0

    def reduce(self, vec):
        """Reduce ``vec`` modulo the current rows; returns (residual, combo)."""
        vec = dict(vec)
        combo = {}
        # rows are kept fully reduced, so one pass over the pivots suffices
        for key in [k for k in vec if k in self.pivot_index]:
            c = vec.get(key)
            if c is None:
                continue
            r = self.pivot_index[key]
            vadd(vec, self.rows[r], -c)
            vadd(combo, self.combos[r], -c)
        return vec, combo

    def add(self, vec, keep_index=True):
        """Add a vector; returns True when it is independent of earlier ones.

        Every call consumes an input index unless ``keep_index`` is false, in
        which case dependent vectors are discarded without trace.
        """
        idx = self.n_inputs
        self.n_inputs += 1
        res, combo = self.reduce(vec)
        if not res:
            if not keep_index:
                self.n_inputs -= 1
            return False
        combo[idx] = ONE
        key = min(res, key=lambda k: (_size(res[k]), repr(k)))
        inv = res[key].inverse()
        res = vscale(res, inv)
        combo = vscale(combo, inv)
        # keep rows fully reduced with respect to the new pivot
        for r, row in enumerate(self.rows):
            c = row.get(key)
            if c is not None:
                vadd(row, res, -c)
                vadd(self.combos[r], combo, -c)
        self.pivot_index[key] = len(self.rows)
        self.rows.append(res)
        self.pivots.append(key)
        self.combos.append(combo)
        return True

    def express(self, vec):
        """Coefficients (on original inputs) of a vector in the span."""
        res, combo = self.reduce(vec)
        if res:
            raise InconsistentSystem("vector is not in the span")
        return {k: -v for k, v in combo.items()}

    @property
    def rank(self):
        return len(self.rows)


def solve_combination(columns, target):
    """Find ``c`` with ``sum_j c[j] * columns[j] = target``.

    ``columns`` is a list of sparse vectors.  Dependent columns are skipped
    (their coefficient is zero).  Raises :class:`InconsistentSystem` when the
    target is not in the span.
    """
    el = Eliminator()
    for col in columns:
        el.add(col)
    coeffs = el.express(target)
    out = {}
    for k, v in coeffs.items():
        if not v.is_zero():
            out[k] = v
    return out


def rank(vectors):
    el = Eliminator()
    for v in vectors:
        el.add(v)
    return el.rank


def nullspace(columns):
    """Basis of ``{c : sum_j c_j columns[j] = 0}`` as a list of dicts j -> Scalar."""
    el = Eliminator()
    out = []
    for j, col in enumerate(columns):
        res, combo = el.reduce(col)
        if res:
            el.add(col)
        else:
            rel = dict(combo)
            rel[j] = ONE
            out.append(rel)
            el.n_inputs += 1
    return out


def invert_matrix(mat, n):
    """Invert an ``n x n`` matrix given as a dict ``(i, j) -> Scalar``."""
    rows = [{j: mat[(i, j)] for j in range(n) if (i, j) in mat and not mat[(i, j)].is_zero()}
            for i in range(n)]
    aug = [dict(r) for r in rows]
    inv = [{i: ONE} for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if col in aug[r] and (piv is None or _size(aug[r][col]) < _size(aug[piv][col])):
                piv = r
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        c = aug[col][col].inverse()
        aug[col] = vscale(aug[col], c)
        inv[col] = vscale(inv[col], c)
        for r in range(n):
            if r != col and col in aug[r]:
                f = aug[r][col]
                vadd(aug[r], aug[col], -f)
                vadd(inv[r], inv[col], -f)
    return {(i, j): v for i in range(n) for j, v in inv[i].items()}
