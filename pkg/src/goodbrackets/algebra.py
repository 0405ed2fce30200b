"""Degree-truncated free associative algebra on letters a0..ak.

A series is stored sparsely as a dict mapping words (tuples of letter
indices) to nonzero Fraction coefficients; the empty word is the constant
term.  Products are truncated at word length n, so exp/log/inverse are
finite sums.  Series are immutable after construction and every operation
returns a fresh object, so values can be shared freely between threads.

Canonical word order everywhere (iteration, printing, serialization) is
length first, then lexicographic.
"""

from fractions import Fraction
from itertools import product as _iproduct

from . import _kernel
from .errors import DimensionMismatch, DomainError

ZERO = Fraction(0)
ONE = Fraction(1)


def word_key(w):
    """Sort key: length then lexicographic."""
    return (len(w), w)


def format_word(w):
    if not w:
        return "1"
    return " ".join("a%d" % i for i in w)


def words_of_degree(k, d):
    """All words of length d on letters a0..ak, in lexicographic order."""
    assert k >= 1 and d >= 0
    return [tuple(w) for w in _iproduct(range(k + 1), repeat=d)]


class GradedComponent:
    """Degree slice of the truncated algebra: the span of its words."""

    __slots__ = ("degree", "span")

    def __init__(self, degree, span):
        self.degree = degree
        self.span = tuple(span)

    def __repr__(self):
        return "GradedComponent(degree=%d, dim=%d)" % (self.degree, len(self.span))


def graded_component(k, d):
    return GradedComponent(d, words_of_degree(k, d))


def _as_coeff(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise DomainError("coefficients must be exact rationals, got %r" % (c,))


class TruncSeries:
    """Element of the free algebra on a0..ak truncated at degree n."""

    __slots__ = ("k", "n", "coeffs")

    def __init__(self, k, n, coeffs=None, _trusted=False):
        assert isinstance(k, int) and k >= 1, k
        assert isinstance(n, int) and n >= 1, n
        self.k = k
        self.n = n
        if coeffs is None:
            self.coeffs = {}
        elif _trusted:
            self.coeffs = coeffs
        else:
            clean = {}
            for w, c in coeffs.items():
                w = tuple(w)
                if len(w) > n:
                    continue
                for i in w:
                    if not (0 <= i <= k):
                        raise DomainError("letter a%d outside alphabet a0..a%d" % (i, k))
                c = _as_coeff(c)
                if c:
                    clean[w] = c
            self.coeffs = clean

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(k, n):
        return TruncSeries(k, n, {}, _trusted=True)

    @staticmethod
    def one(k, n):
        return TruncSeries(k, n, {(): ONE}, _trusted=True)

    @staticmethod
    def letter(i, k, n):
        if not (0 <= i <= k):
            raise DomainError("letter a%d outside alphabet a0..a%d" % (i, k))
        return TruncSeries(k, n, {(i,): ONE}, _trusted=True)

    @staticmethod
    def word(w, k, n):
        return TruncSeries(k, n, {tuple(w): ONE})

    # -- basic queries -----------------------------------------------

    def coeff(self, w):
        return self.coeffs.get(tuple(w), ZERO)

    def is_zero(self):
        return not self.coeffs

    def min_degree(self):
        """Smallest word length with a nonzero coefficient; None if zero."""
        if not self.coeffs:
            return None
        return min(len(w) for w in self.coeffs)

    def max_degree(self):
        if not self.coeffs:
            return None
        return max(len(w) for w in self.coeffs)

    def constant_term(self):
        return self.coeffs.get((), ZERO)

    def items(self):
        """Coefficient pairs in canonical (length, lex) order."""
        return sorted(self.coeffs.items(), key=lambda it: word_key(it[0]))

    def degree_part(self, d):
        part = {w: c for w, c in self.coeffs.items() if len(w) == d}
        return TruncSeries(self.k, self.n, part, _trusted=True)

    def a0_degree_part(self, m):
        """Terms whose words contain the letter a0 exactly m times."""
        part = {w: c for w, c in self.coeffs.items() if w.count(0) == m}
        return TruncSeries(self.k, self.n, part, _trusted=True)

    def max_a0_degree(self):
        return max((w.count(0) for w in self.coeffs), default=0)

    def _check_compat(self, other):
        if self.k != other.k or self.n != other.n:
            raise DimensionMismatch(
                "mixed algebras: (k=%d, n=%d) vs (k=%d, n=%d)"
                % (self.k, self.n, other.k, other.n)
            )

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries(self.k, self.n, {(): _as_coeff(other)})
        self._check_compat(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            acc = out.get(w)
            if acc is None:
                out[w] = c
            else:
                acc = acc + c
                if acc:
                    out[w] = acc
                else:
                    del out[w]
        return TruncSeries(self.k, self.n, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(
            self.k, self.n, {w: -c for w, c in self.coeffs.items()}, _trusted=True
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries(self.k, self.n, {(): _as_coeff(other)})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _as_coeff(c)
        if not c:
            return TruncSeries.zero(self.k, self.n)
        return TruncSeries(
            self.k, self.n, {w: c * v for w, v in self.coeffs.items()}, _trusted=True
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_compat(other)
        out = _kernel.mul_dicts(self.coeffs, other.coeffs, self.n)
        return TruncSeries(self.k, self.n, out, _trusted=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.k == other.k and self.n == other.n and self.coeffs == other.coeffs

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.k, self.n, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w, c in self.items():
            if not w:
                body = str(c) if c > 0 else str(-c)
            elif abs(c) == 1:
                body = format_word(w)
            else:
                body = "%s*%s" % (abs(c), format_word(w))
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self):
        return "TruncSeries(k=%d, n=%d, %s)" % (self.k, self.n, str(self))


# -- operations ------------------------------------------------------


def project_degree(x, m):
    """Drop all words longer than m; the ambient bound n is kept."""
    assert isinstance(x, TruncSeries), x
    assert m >= 0, m
    if m >= x.n:
        return x
    part = {w: c for w, c in x.coeffs.items() if len(w) <= m}
    return TruncSeries(x.k, x.n, part, _trusted=True)


def _reembed(x, n):
    """Same coefficients, new degree bound n >= max degree of x."""
    return TruncSeries(x.k, n, dict(x.coeffs), _trusted=True)


def with_bound(x, n):
    """Re-declare the degree bound; dropping terms is not allowed here."""
    if n < x.n:
        hi = x.max_degree()
        if hi is not None and hi > n:
            raise DomainError("lowering bound below existing degree %d" % hi)
    return _reembed(x, n)


def bracket(x, y):
    """Commutator xy - yx."""
    return x * y - y * x


def ad_pow(x, p, y):
    """(ad x)^p y, iterated commutator."""
    assert p >= 0, p
    out = y
    for _ in range(p):
        out = bracket(x, out)
    return out


def exp_trunc(x):
    """exp of a series with zero constant term."""
    if x.constant_term():
        raise DomainError("exp needs zero constant term, got %s" % x.constant_term())
    acc = TruncSeries.one(x.k, x.n)
    term = TruncSeries.one(x.k, x.n)
    for j in range(1, x.n + 1):
        term = (term * x).scale(Fraction(1, j))
        if term.is_zero():
            break
        acc = acc + term
    return acc


def log_trunc(x):
    """log of a series with constant term 1."""
    if x.constant_term() != 1:
        raise DomainError("log needs constant term 1, got %s" % x.constant_term())
    y = x - 1
    acc = TruncSeries.zero(x.k, x.n)
    term = TruncSeries.one(x.k, x.n)
    for j in range(1, x.n + 1):
        term = term * y
        if term.is_zero():
            break
        acc = acc + term.scale(Fraction((-1) ** (j + 1), j))
    return acc


def inverse(g):
    """Multiplicative inverse; needs a nonzero constant term."""
    c = g.constant_term()
    if not c:
        raise DomainError("inverse needs nonzero constant term")
    u = (g - c).scale(1 / c)  # g = c (1 + u), u nilpotent
    acc = TruncSeries.one(g.k, g.n)
    term = TruncSeries.one(g.k, g.n)
    sign = 1
    for _ in range(g.n):
        term = term * u
        if term.is_zero():
            break
        sign = -sign
        acc = acc + term.scale(sign)
    return acc.scale(1 / c)


def adjoint(g, x):
    """Conjugation g x g^{-1}."""
    return g * x * inverse(g)
