"""Hall bases, Lie projections and Poincare-Birkhoff-Witt coordinates.

The Hall basis is the classical one: letters first, then for each degree all
brackets [u, v] with u < v where v is a letter or v = [v1, v2] with v1 <= u,
ordered by degree and then by construction order.  Basis elements carry their
word expansion, so everything downstream is plain exact linear algebra over
word coordinates.
"""

from fractions import Fraction
from functools import lru_cache

from .algebra import TruncSeries, bracket, word_key
from .errors import DomainError, NotLieElement, TruncationOverflow
from .linalg import LinearSolver, RowSpace

ZERO = Fraction(0)
ONE = Fraction(1)


class HallElement:
    """One Hall basis element: bracket tree plus its word expansion."""

    __slots__ = ("index", "degree", "tree", "expansion")

    def __init__(self, index, degree, tree, expansion):
        self.index = index  # 1-based position in the full ordered basis
        self.degree = degree
        self.tree = tree  # int letter, or (left_tree, right_tree)
        self.expansion = expansion

    def tree_json(self):
        def conv(t):
            return t if isinstance(t, int) else [conv(t[0]), conv(t[1])]

        return conv(self.tree)

    def __repr__(self):
        return "V%d=%s" % (self.index, format_tree(self.tree))


def format_tree(t):
    if isinstance(t, int):
        return "a%d" % t
    return "[%s,%s]" % (format_tree(t[0]), format_tree(t[1]))


class HallBasis:
    """Hall basis of the free Lie algebra on a1..ak through degree n.

    a0 never appears in basis elements; expansions live in the ambient
    truncated algebra on a0..ak so they combine directly with candidates.
    """

    def __init__(self, k, n):
        assert k >= 1 and n >= 1, (k, n)
        self.k = k
        self.n = n
        by_degree = [[] for _ in range(n + 1)]
        elements = []
        order = {}  # tree -> construction index

        def emit(degree, tree, expansion):
            el = HallElement(len(elements) + 1, degree, tree, expansion)
            elements.append(el)
            by_degree[degree].append(el)
            order[tree] = len(elements)

        for i in range(1, k + 1):
            emit(1, i, TruncSeries.letter(i, k, n))
        for d in range(2, n + 1):
            for du in range(1, d):
                dv = d - du
                for u in by_degree[du]:
                    for v in by_degree[dv]:
                        if order[u.tree] >= order[v.tree]:
                            continue
                        if not isinstance(v.tree, int):
                            v1 = v.tree[0]
                            if order[v1] > order[u.tree]:
                                continue
                        emit(d, (u.tree, v.tree), bracket(u.expansion, v.expansion))
        self.elements = tuple(elements)
        self.by_degree = tuple(tuple(lst) for lst in by_degree)
        self._lie_solvers = {}
        self._pbw_solvers = {}
        self._pbw_eval_cache = {}

    def element(self, alpha):
        assert 1 <= alpha <= len(self.elements), alpha
        return self.elements[alpha - 1]

    def degree_counts(self):
        return [len(lst) for lst in self.by_degree[1:]]

    def weights(self):
        """Map hall index -> degree of the element (the t_alpha weight)."""
        return {el.index: el.degree for el in self.elements}

    def report(self):
        return {
            "letters": self.k,
            "degree": self.n,
            "elements": [
                {
                    "index": el.index,
                    "degree": el.degree,
                    "tree": el.tree_json(),
                    "expansion": {
                        " ".join(map(str, w)): str(c) for w, c in el.expansion.items()
                    },
                }
                for el in self.elements
            ],
        }


@lru_cache(maxsize=None)
def hall_basis(k, n):
    return HallBasis(k, n)


@lru_cache(maxsize=None)
def _a0_free_words(k, d):
    if d == 0:
        return ((),)
    shorter = _a0_free_words(k, d - 1)
    return tuple(w + (i,) for w in shorter for i in range(1, k + 1))


def lie_to_hall(x, basis=None):
    """Coordinates of a Lie element in the Hall basis: {alpha: coeff}.

    Raises NotLieElement when some homogeneous part of x is outside the span
    of the Hall expansions (the membership residual is the Lie test).
    """
    assert isinstance(x, TruncSeries), x
    if basis is None:
        basis = hall_basis(x.k, x.n)
    assert basis.k == x.k and basis.n >= (x.max_degree() or 0), "basis too small"
    if x.constant_term():
        raise NotLieElement("nonzero constant term")
    if any(0 in w for w in x.coeffs):
        raise DomainError("lie_to_hall handles a0-free elements only")
    out = {}
    for d in range(1, x.n + 1):
        part = x.degree_part(d)
        if part.is_zero():
            continue
        words = _a0_free_words(x.k, d)
        solver = basis._lie_solvers.get(d)
        if solver is None:
            cols = basis.by_degree[d]
            rows = [[el.expansion.coeff(w) for el in cols] for w in words]
            solver = LinearSolver(rows)
            basis._lie_solvers[d] = solver
        sol = solver.solve([part.coeff(w) for w in words])
        if sol is None:
            raise NotLieElement("degree-%d part is not in the Lie span" % d)
        for el, c in zip(basis.by_degree[d], sol):
            if c:
                out[el.index] = c
    return out


def hall_to_series(coords, basis):
    out = TruncSeries.zero(basis.k, basis.n)
    for alpha, c in coords.items():
        out = out + basis.element(alpha).expansion.scale(c)
    return out


def dynkin_project(x):
    """Left-normed bracketing map: word w |-> (1/|w|) (ad w_1)...(ad w_{m-1}) w_m.

    Fixes Lie elements and annihilates the rest of each graded piece, so
    dynkin_project(x) == x is the exact Lie membership test.
    """
    assert isinstance(x, TruncSeries), x
    if x.constant_term():
        raise DomainError("dynkin projection needs zero constant term")
    out = TruncSeries.zero(x.k, x.n)
    for w, c in x.coeffs.items():
        acc = TruncSeries.letter(w[-1], x.k, x.n)
        for i in reversed(w[:-1]):
            acc = bracket(TruncSeries.letter(i, x.k, x.n), acc)
        out = out + acc.scale(Fraction(c, 1) / len(w))
    return out


def is_lie_element(x):
    return not x.constant_term() and dynkin_project(x) == x


# -- PBW coordinates ---------------------------------------------------


class PBWPoly:
    """Polynomial in increasing products of Hall elements.

    Monomials are tuples of (hall_index, exponent) pairs with strictly
    increasing indices; the empty tuple is the unit.
    """

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis, coeffs):
        self.basis = basis
        self.coeffs = {m: c for m, c in coeffs.items() if c}

    def items(self):
        return sorted(
            self.coeffs.items(),
            key=lambda it: (pbw_weighted_degree(it[0], self.basis), it[0]),
        )

    def weighted_degree(self):
        return max(
            (pbw_weighted_degree(m, self.basis) for m in self.coeffs), default=0
        )

    def eval(self):
        """Multiply out into the ambient truncated algebra."""
        out = TruncSeries.zero(self.basis.k, self.basis.n)
        for mono, c in self.coeffs.items():
            out = out + pbw_eval_monomial(mono, self.basis).scale(c)
        return out

    def __eq__(self, other):
        if not isinstance(other, PBWPoly):
            return NotImplemented
        return self.basis is other.basis and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "PBWPoly(0)"
        return "PBWPoly(%s)" % " + ".join(
            "%s*%s" % (c, format_pbw_monomial(m)) for m, c in self.items()
        )


def format_pbw_monomial(mono):
    if not mono:
        return "1"
    return " ".join(
        "V%d" % a if e == 1 else "V%d^%d" % (a, e) for a, e in mono
    )


def pbw_weighted_degree(mono, basis):
    return sum(e * basis.element(a).degree for a, e in mono)


def pbw_eval_monomial(mono, basis):
    cached = basis._pbw_eval_cache.get(mono)
    if cached is not None:
        return cached
    out = TruncSeries.one(basis.k, basis.n)
    for alpha, e in mono:
        ex = basis.element(alpha).expansion
        for _ in range(e):
            out = out * ex
    basis._pbw_eval_cache[mono] = out
    return out


def pbw_monomials_of_weight(basis, d):
    """All PBW monomials of weighted degree exactly d, canonical order."""
    out = []

    def rec(min_alpha, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for alpha in range(min_alpha, len(basis.elements) + 1):
            w = basis.element(alpha).degree
            if w > remaining:
                continue
            e = 1
            while e * w <= remaining:
                acc.append((alpha, e))
                rec(alpha + 1, remaining - e * w, acc)
                acc.pop()
                e += 1

    rec(1, d, [])
    out.sort()
    return out


def pbw_decompose(x, basis=None):
    """Exact PBW coordinates of an a0-free series.

    Solves degree by degree against the word expansions of the PBW
    monomials; the factorization is cached on the basis.
    """
    assert isinstance(x, TruncSeries), x
    if basis is None:
        basis = hall_basis(x.k, x.n)
    if any(0 in w for w in x.coeffs):
        raise DomainError("pbw_decompose handles a0-free elements only")
    coeffs = {}
    if x.constant_term():
        coeffs[()] = x.constant_term()
    for d in range(1, x.n + 1):
        part = x.degree_part(d)
        if part.is_zero():
            continue
        monos = pbw_monomials_of_weight(basis, d)
        words = _a0_free_words(x.k, d)
        solver = basis._pbw_solvers.get(d)
        if solver is None:
            rows = [
                [pbw_eval_monomial(m, basis).coeff(w) for m in monos] for w in words
            ]
            solver = LinearSolver(rows)
            basis._pbw_solvers[d] = solver
        sol = solver.solve([part.coeff(w) for w in words])
        assert sol is not None, "PBW system must be solvable"
        for m, c in zip(monos, sol):
            if c:
                coeffs[m] = c
    return PBWPoly(basis, coeffs)


# -- a0-linear normal form --------------------------------------------


def rewrite_a0_linear(x):
    """Write an a0-linear Lie element as sum c_J (ad a_j1)...(ad a_jm) a0.

    Returns [(coeff, (j1..jm)), ...] in canonical word order.  Works by the
    left-normed reduction: project onto left-normed monomials, then commute
    the bracket containing a0 rightward until every term ends in a0.
    """
    assert isinstance(x, TruncSeries), x
    if x.is_zero():
        return []
    for w in x.coeffs:
        if w.count(0) != 1:
            raise DomainError(
                "rewrite_a0_linear needs a0-degree exactly 1 in every word"
            )
    if dynkin_project(x) != x:
        raise NotLieElement("input fails the projection fixed-point test")
    out = {}
    work = []
    for w, c in x.coeffs.items():
        m = len(w)
        ops = tuple(("B", ()) if i == 0 else i for i in w[:-1])
        y = w[-1]
        work.append((c * Fraction(1, m), ops, y))
    while work:
        coeff, ops, y = work.pop()
        bpos = None
        for idx, op in enumerate(ops):
            if not isinstance(op, int):
                bpos = idx
                break
        if bpos is None:
            # a0 must be the tail letter now
            assert y == 0, (ops, y)
            key = tuple(ops)
            acc = out.get(key, ZERO) + coeff
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
            continue
        assert y != 0, "two a0 occurrences cannot happen here"
        bs = ops[bpos][1]
        if bpos < len(ops) - 1:
            nxt = ops[bpos + 1]
            # (ad B)(ad c) = (ad c)(ad B) + (ad [B,c])
            work.append((coeff, ops[:bpos] + (nxt, ops[bpos]) + ops[bpos + 2:], y))
            work.append(
                (coeff, ops[:bpos] + (("B", bs + (nxt,)),) + ops[bpos + 2:], y)
            )
        else:
            # (ad [..[a0,b1],..,bs]) y = (-1)^{s+1} (ad y)(ad bs)..(ad b1) a0
            sign = ONE if len(bs) % 2 else -ONE
            work.append((coeff * sign, ops[:bpos] + (y,) + tuple(reversed(bs)), 0))
    return sorted(((c, w) for w, c in out.items()), key=lambda it: word_key(it[1]))


def ad0_apply(xi, basis):
    """(ad V_a1)^i1 ... (ad V_am)^im a0, extended linearly.

    xi is a PBWPoly or a single word (tuple of letters 1..k).  The result
    degree is 1 + weighted degree, which must stay within the bound.
    """
    a0 = TruncSeries.letter(0, basis.k, basis.n)
    if isinstance(xi, tuple):
        if 1 + len(xi) > basis.n:
            raise TruncationOverflow(
                "ad0 image degree %d exceeds bound %d" % (1 + len(xi), basis.n)
            )
        acc = a0
        for j in reversed(xi):
            acc = bracket(TruncSeries.letter(j, basis.k, basis.n), acc)
        return acc
    assert isinstance(xi, PBWPoly), xi
    out = TruncSeries.zero(basis.k, basis.n)
    for mono, c in xi.coeffs.items():
        wd = pbw_weighted_degree(mono, basis)
        if 1 + wd > basis.n:
            raise TruncationOverflow(
                "ad0 image degree %d exceeds bound %d" % (1 + wd, basis.n)
            )
        acc = a0
        for alpha, e in reversed(mono):
            ex = basis.element(alpha).expansion
            for _ in range(e):
                acc = bracket(ex, acc)
        out = out + acc.scale(c)
    return out


def a0_linear_span_matrix(basis, max_wdeg):
    """Columns: ad0 images of all PBW monomials of weighted degree <= max_wdeg.

    Used to exercise injectivity of the a0 pairing; rows are word
    coordinates of the images.
    """
    monos = []
    for d in range(0, max_wdeg + 1):
        monos.extend(pbw_monomials_of_weight(basis, d))
    images = [ad0_apply(PBWPoly(basis, {m: ONE}), basis) for m in monos]
    words = sorted({w for im in images for w in im.coeffs}, key=word_key)
    rows = [[im.coeff(w) for im in images] for w in words]
    return monos, rows
