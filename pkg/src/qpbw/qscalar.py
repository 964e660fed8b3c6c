"""Exact elements of the rational function field Q(q).

A :class:`Scalar` is stored as ``q**shift * num(q) / den(q)`` where ``num`` and
``den`` are integer polynomials (``flint.fmpz_poly``) with nonzero constant
term, ``gcd(num, den) = 1`` and a positive leading coefficient in ``den``.
The exponent ``shift`` is an ``int`` or a ``Fraction``; fractional exponents
appear when pairing weights, e.g. ``(w, w) = 1/2`` for sl2.  Two scalars whose
shifts differ by a non-integer live in different ``Q(q)``-lines and cannot be
added.

The representation is canonical, so equality is structural.
"""
from __future__ import annotations

import random
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from flint import fmpz_poly

__all__ = [
    "Scalar", "PoleError", "IncommensurableShift", "ZERO", "ONE", "Q",
    "qpow", "q_int", "q_fact", "q_binom", "eval_at", "probably_equal",
    "as_scalar",
]

_P0 = fmpz_poly([])
_P1 = fmpz_poly([1])


class PoleError(ZeroDivisionError):
    """Raised when evaluating a scalar at one of its poles."""


class IncommensurableShift(ValueError):
    """Raised when adding scalars whose q-exponents differ by a non-integer."""


def _norm_shift(s):
    if isinstance(s, Fraction):
        return s.numerator if s.denominator == 1 else s
    return int(s)


def _valuation(p):
    """Largest k with q^k dividing the (nonzero) polynomial p."""
    k = 0
    while p[k] == 0:
        k += 1
    return k


class Scalar:
    __slots__ = ("num", "den", "shift", "_hash")

    def __init__(self, num=0, den=None, shift=0):
        if isinstance(num, Scalar):
            self.num, self.den, self.shift = num.num, num.den, num.shift
            self._hash = None
            return
        if isinstance(num, Rational) and not isinstance(num, int):
            num = Fraction(num)
            n, d = fmpz_poly([num.numerator]), fmpz_poly([num.denominator])
            if den is not None:
                d = d * fmpz_poly(den)
        else:
            n = fmpz_poly(num) if not isinstance(num, int) else fmpz_poly([num])
            d = _P1 if den is None else (fmpz_poly(den) if not isinstance(den, int) else fmpz_poly([den]))
        self._set(n, d, _norm_shift(shift))

    @classmethod
    def _raw(cls, num, den, shift):
        """Build from already canonical data (no checks)."""
        obj = object.__new__(cls)
        obj.num, obj.den, obj.shift, obj._hash = num, den, shift, None
        return obj

    def _set(self, n, d, shift):
        self._hash = None
        if d.is_zero():
            raise ZeroDivisionError("zero denominator")
        if n.is_zero():
            self.num, self.den, self.shift = _P0, _P1, 0
            return
        a = _valuation(n)
        b = _valuation(d)
        if a:
            n = n.right_shift(a)
        if b:
            d = d.right_shift(b)
        shift = _norm_shift(shift + a - b)
        if not d.is_one():
            g = n.gcd(d)
            if not g.is_one():
                n = n // g
                d = d // g
            if d.leading_coefficient() < 0:
                n, d = -n, -d
        self.num, self.den, self.shift = n, d, shift

    @classmethod
    def _make(cls, n, d, shift):
        obj = object.__new__(cls)
        obj._set(n, d, shift)
        return obj

    # -- predicates -------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self):
        """True when the scalar is a Laurent polynomial in q (or q^(1/k))."""
        return self.den.is_one()

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return (self.shift == other.shift and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(int(c) for c in self.num.coeffs()),
                               tuple(int(c) for c in self.den.coeffs()), self.shift))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return Scalar._raw(-self.num, self.den, self.shift)

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        ds = self.shift - other.shift
        if isinstance(ds, Fraction) and ds.denominator != 1:
            raise IncommensurableShift(f"cannot add q^{self.shift}-line and q^{other.shift}-line")
        ds = int(ds)
        a, b, c, d = self.num, self.den, other.num, other.den
        if ds >= 0:
            a = a.left_shift(ds) if ds else a
            base = other.shift
        else:
            c = c.left_shift(-ds)
            base = self.shift
        if b == d:
            return Scalar._make(a + c, b, base)
        return Scalar._make(a * d + c * b, b * d, base)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return as_scalar(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        a, b, c, d = self.num, self.den, other.num, other.den
        shift = _norm_shift(self.shift + other.shift)
        if b.is_one() and d.is_one():
            return Scalar._raw(a * c, _P1, shift)
        # cross cancellation keeps the intermediate sizes small
        if not d.is_one():
            g = a.gcd(d)
            if not g.is_one():
                a, d = a // g, d // g
        if not b.is_one():
            g = c.gcd(b)
            if not g.is_one():
                c, b = c // g, b // g
        n, den = a * c, b * d
        if den.leading_coefficient() < 0:
            n, den = -n, -den
        return Scalar._raw(n, den, shift)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        n, d = self.den, self.num
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return Scalar._raw(n, d, _norm_shift(-self.shift))

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        n, d = self.num ** k, self.den ** k
        return Scalar._raw(n, d, _norm_shift(self.shift * k))

    # -- substitutions ----------------------------------------------------
    def bar(self):
        """The field involution q -> q^-1."""
        if self.num.is_zero():
            return self
        dn, dd = self.num.degree(), self.den.degree()
        n = fmpz_poly(list(reversed(self.num.coeffs())))
        d = fmpz_poly(list(reversed(self.den.coeffs())))
        return Scalar._make(n, d, -self.shift - dn + dd)

    def dilate(self, k):
        """The substitution q -> q^k for a positive integer k."""
        if k == 1 or self.num.is_zero():
            return self
        def spread(p):
            out = [0] * (k * p.degree() + 1)
            for j, c in enumerate(p.coeffs()):
                out[k * j] = c
            return fmpz_poly(out)
        return Scalar._make(spread(self.num), spread(self.den), self.shift * k)

    def eval_at(self, r):
        return eval_at(self, r)

    # -- printing ---------------------------------------------------------
    def terms(self):
        """Numerator and denominator as lists of ``(coeff, exponent)`` pairs.

        The shift is folded into the numerator exponents.
        """
        num = [(int(c), _norm_shift(self.shift + i)) for i, c in enumerate(self.num.coeffs()) if c != 0]
        den = [(int(c), i) for i, c in enumerate(self.den.coeffs()) if c != 0]
        return num, den

    def canonical_str(self):
        """Canonical text form ``( c0*q^e0 + ... ) / ( ... )``."""
        num, den = self.terms()
        if not num:
            num = [(0, 0)]

        def fmt(ts):
            return " + ".join(f"{c}*q^{_fmt_exp(e)}" for c, e in ts)

        return f"( {fmt(num)} ) / ( {fmt(den)} )"

    def to_json(self):
        num, den = self.terms()
        return {"num": [[c, _json_exp(e)] for c, e in num],
                "den": [[c, _json_exp(e)] for c, e in den]}

    @classmethod
    def from_json(cls, obj):
        return _from_terms(obj["num"]) / _from_terms(obj["den"])

    @classmethod
    def parse(cls, text):
        """Inverse of :meth:`canonical_str`."""
        mt = _CANON_RE.fullmatch(text.strip())
        if not mt:
            raise ValueError(f"not a canonical scalar string: {text!r}")
        return _from_terms(_parse_terms(mt.group(1))) / _from_terms(_parse_terms(mt.group(2)))

    def __str__(self):
        return _pretty(self)

    def __repr__(self):
        return f"Scalar({_pretty(self)})"


def _fmt_exp(e):
    return str(e) if isinstance(e, int) else f"({e})"


def _json_exp(e):
    return e if isinstance(e, int) else str(e)


_CANON_RE = re.compile(r"\(\s*(.*?)\s*\)\s*/\s*\(\s*(.*?)\s*\)")


def _parse_terms(s):
    out = []
    for t in s.split(" + "):
        c, e = t.split("*q^")
        out.append((int(c), e.strip("()")))
    return out


def _from_terms(terms):
    total = ZERO
    for c, e in terms:
        total = total + Scalar(int(c)) * qpow(Fraction(e) if isinstance(e, str) else e)
    return total


def _poly_str(coeffs, shift):
    parts = []
    for i, c in enumerate(coeffs):
        c = int(c)
        if c == 0:
            continue
        e = _norm_shift(shift + i)
        mon = "" if e == 0 else ("q" if e == 1 else f"q^{_fmt_exp(e)}")
        if mon == "":
            parts.append(str(c))
        elif c == 1:
            parts.append(mon)
        elif c == -1:
            parts.append("-" + mon)
        else:
            parts.append(f"{c}*{mon}")
    if not parts:
        return "0"
    s = parts[0]
    for p in parts[1:]:
        s += " - " + p[1:] if p.startswith("-") else " + " + p
    return s


def _pretty(x):
    n = _poly_str(x.num.coeffs(), x.shift)
    if x.den.is_one():
        return n
    d = _poly_str(x.den.coeffs(), 0)
    return f"({n})/({d})"


@lru_cache(maxsize=None)
def qpow(e):
    """q**e for an integer or fractional exponent."""
    return Scalar._raw(_P1, _P1, _norm_shift(Fraction(e) if not isinstance(e, int) else e))


def as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return Scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")


ZERO = Scalar(0)
ONE = Scalar(1)
Q = qpow(1)


@lru_cache(maxsize=None)
def q_int(m, d=1):
    """Quantum integer [m]_{q^d} = (q^{dm} - q^{-dm}) / (q^d - q^{-d})."""
    if m == 0:
        return ZERO
    if m < 0:
        return -q_int(-m, d)
    # q^{-d(m-1)} (1 + q^{2d} + ... + q^{2d(m-1)})
    coeffs = [0] * (2 * d * (m - 1) + 1)
    for k in range(m):
        coeffs[2 * d * k] = 1
    return Scalar._raw(fmpz_poly(coeffs), _P1, -d * (m - 1))


@lru_cache(maxsize=None)
def q_fact(m, d=1):
    """Quantum factorial [m]_{q^d}!."""
    out = ONE
    for k in range(1, m + 1):
        out = out * q_int(k, d)
    return out


@lru_cache(maxsize=None)
def q_binom(m, k, d=1):
    """Quantum binomial coefficient [m choose k]_{q^d}."""
    if k < 0 or k > m:
        return ZERO
    return q_fact(m, d) / (q_fact(k, d) * q_fact(m - k, d))


def _eval_poly(p, r):
    acc = Fraction(0)
    for c in reversed(p.coeffs()):
        acc = acc * r + int(c)
    return acc


def eval_at(x, r):
    """Evaluate ``x`` at the rational point ``q = r``."""
    x = as_scalar(x)
    r = Fraction(r)
    if x.is_zero():
        return Fraction(0)
    if isinstance(x.shift, Fraction):
        raise ValueError("cannot evaluate a fractional power of q at a rational point")
    d = _eval_poly(x.den, r)
    if d == 0 or (r == 0 and x.shift < 0):
        raise PoleError(f"pole at q = {r}")
    return _eval_poly(x.num, r) / d * r ** x.shift


_SAMPLE_POINTS = (Fraction(3, 7), Fraction(-5, 11), Fraction(13, 4))


def probably_equal(a, b, points=_SAMPLE_POINTS, rng=None):
    """Cheap screen for equality by evaluation at a few rational points.

    A ``False`` answer is definitive.  A ``True`` answer is confirmed against
    the canonical forms.
    """
    a, b = as_scalar(a), as_scalar(b)
    if isinstance(a.shift, Fraction) or isinstance(b.shift, Fraction):
        return a == b
    if rng is not None:
        points = [Fraction(rng.randint(2, 97), rng.randint(2, 97)) for _ in range(2)]
    for r in points:
        try:
            if eval_at(a, r) != eval_at(b, r):
                return False
        except PoleError:
            continue
    return a == b


def random_scalar(rng=None, degree=3, coeff=5, rational=True):
    """A random scalar, used by property tests and demos."""
    rng = rng or random.Random()
    n = fmpz_poly([rng.randint(-coeff, coeff) for _ in range(degree + 1)])
    d = fmpz_poly([rng.randint(1, coeff)] + [rng.randint(-coeff, coeff) for _ in range(degree)]) if rational else _P1
    if d.is_zero():
        d = _P1
    return Scalar._make(n, d, rng.randint(-degree, degree))
