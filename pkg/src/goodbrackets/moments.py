"""Coordinate polynomials, moment matrices and exact positivity checks.

A coordinate polynomial lives in commuting variables t_alpha indexed by Hall
basis indices; its i-th moment is i! times the t^i coefficient.  Index sets
describe which coefficients a truncation knows: total-degree simplex, box, or
the weighted simplex whose weights are Hall degrees.  The moment matrix over
the half set {i : 2i in C} is checked for positive semidefiniteness by exact
symmetric elimination with diagonal pivoting: a negative pivot or a zero
pivot with a nonzero row refutes PSD and yields a rational witness xi with
xi^T M xi < 0.
"""

from fractions import Fraction
from math import factorial

from .errors import CoverageError, DomainError
from .linalg import rank as _rank

ZERO = Fraction(0)
ONE = Fraction(1)


class MultiIndex:
    """Finitely supported multi-exponent over Hall indices.

    Stored as a tuple of (alpha, exp) pairs, alpha strictly increasing,
    exp >= 1; the empty tuple is the zero index.
    """

    __slots__ = ("pairs",)

    def __init__(self, pairs=()):
        if isinstance(pairs, dict):
            items = sorted(pairs.items())
        else:
            items = sorted(pairs)
        clean = []
        last = None
        for a, e in items:
            assert isinstance(a, int) and a >= 1, a
            assert isinstance(e, int) and e >= 0, e
            assert a != last, "duplicate variable %d" % a
            last = a
            if e:
                clean.append((a, e))
        self.pairs = tuple(clean)

    @staticmethod
    def unit(alpha, exp=1):
        return MultiIndex(((alpha, exp),))

    def total(self):
        """|i|, the sum of exponents."""
        return sum(e for _, e in self.pairs)

    def weighted(self, weights):
        return sum(e * weights[a] for a, e in self.pairs)

    def exp(self, alpha):
        for a, e in self.pairs:
            if a == alpha:
                return e
        return 0

    def support(self):
        return tuple(a for a, _ in self.pairs)

    def factorial(self):
        """i! = prod of exponent factorials."""
        out = 1
        for _, e in self.pairs:
            out *= factorial(e)
        return out

    def __add__(self, other):
        d = dict(self.pairs)
        for a, e in other.pairs:
            d[a] = d.get(a, 0) + e
        return MultiIndex(d)

    def double(self):
        return MultiIndex(tuple((a, 2 * e) for a, e in self.pairs))

    def is_zero(self):
        return not self.pairs

    def sort_key(self):
        return (self.total(), self.pairs)

    def __eq__(self, other):
        return isinstance(other, MultiIndex) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        if not self.pairs:
            return "1"
        return "".join(
            "t%d" % a if e == 1 else "t%d^%d" % (a, e) for a, e in self.pairs
        )

    def json(self):
        return [[a, e] for a, e in self.pairs]


class CoordPoly:
    """Sparse polynomial in the t variables with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for i, c in (coeffs or {}).items():
            assert isinstance(i, MultiIndex), i
            if not isinstance(c, Fraction):
                c = Fraction(c)
            if c:
                clean[i] = c
        self.coeffs = clean

    def coeff(self, i):
        return self.coeffs.get(i, ZERO)

    def moment(self, i):
        """phi^(i)(0) = i! * coeff(i)."""
        return self.coeffs.get(i, ZERO) * i.factorial()

    def items(self):
        return sorted(self.coeffs.items(), key=lambda it: it[0].sort_key())

    def variables(self):
        out = set()
        for i in self.coeffs:
            out.update(i.support())
        return sorted(out)

    def __add__(self, other):
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, ZERO) + c
        return CoordPoly(out)

    def scale(self, c):
        return CoordPoly({i: v * c for i, v in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, CoordPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "CoordPoly(0)"
        return "CoordPoly(%s)" % " + ".join(
            "%s*%s" % (c, i) for i, c in self.items()
        )


# -- index sets --------------------------------------------------------


def _enum_bounded(variables, bound_of, total_bound):
    """Multi-indices with sum(exp * bound_of[alpha]) <= total_bound."""
    out = []

    def rec(pos, remaining, acc):
        if pos == len(variables):
            out.append(MultiIndex(tuple(acc)))
            return
        a = variables[pos]
        w = bound_of[a]
        e = 0
        while e * w <= remaining:
            if e:
                acc.append((a, e))
            rec(pos + 1, remaining - e * w, acc)
            if e:
                acc.pop()
            e += 1

    rec(0, total_bound, [])
    return out


class IndexSet:
    """A convex family of known coefficients plus its half set.

    kind is one of "simplex" (|i| <= bound), "box" (each exponent <= bound)
    or "weighted" (sum of exp * weight <= bound).  `extra` counts extension
    shells added on top of the base half set; members grow with every pair
    sum of half elements so moment matrices stay fully covered.
    """

    __slots__ = ("kind", "variables", "weights", "bound", "extra", "members", "half")

    def __init__(self, kind, variables, weights, bound, extra=0):
        assert kind in ("simplex", "box", "weighted"), kind
        self.kind = kind
        self.variables = tuple(variables)
        self.weights = dict(weights)
        self.bound = bound
        self.extra = extra
        if kind == "box":
            base_members = self._enum_box(bound)
            half = self._enum_box(bound // 2 + extra)
        else:
            base_members = _enum_bounded(self.variables, self.weights, bound)
            half = _enum_bounded(self.variables, self.weights, bound // 2 + extra)
        members = set(base_members)
        for i in half:
            for j in half:
                members.add(i + j)
        self.members = frozenset(members)
        self.half = tuple(sorted(half, key=MultiIndex.sort_key))

    def _enum_box(self, per_var_bound):
        out = [MultiIndex()]
        for a in self.variables:
            out = [
                i + MultiIndex.unit(a, e) if e else i
                for i in out
                for e in range(per_var_bound + 1)
            ]
        return out

    def _hd(self, i):
        """Layer functional: half set is {hd <= bound//2 + extra}."""
        if self.kind == "box":
            return max((e for _, e in i.pairs), default=0)
        return i.weighted(self.weights)

    @staticmethod
    def simplex(m, n):
        """Total degree < n on m variables (all coefficients |i| <= n-1)."""
        assert m >= 1 and n >= 1, (m, n)
        return IndexSet("simplex", range(1, m + 1), {a: 1 for a in range(1, m + 1)}, n - 1)

    @staticmethod
    def box(m, n):
        assert m >= 1 and n >= 1, (m, n)
        return IndexSet("box", range(1, m + 1), {a: 1 for a in range(1, m + 1)}, n - 1)

    @staticmethod
    def weighted_simplex(weights, bound):
        """Hall-weighted simplex: sum of exp * weight <= bound."""
        variables = sorted(weights)
        return IndexSet("weighted", variables, weights, bound)

    def extend(self, shells):
        assert shells >= 0, shells
        return IndexSet(self.kind, self.variables, self.weights, self.bound,
                        self.extra + shells)

    def __contains__(self, i):
        return i in self.members

    def sorted_members(self):
        return sorted(self.members, key=MultiIndex.sort_key)

    def __repr__(self):
        return "IndexSet(%s, vars=%s, bound=%d, extra=%d, |members|=%d, |half|=%d)" % (
            self.kind, list(self.variables), self.bound, self.extra,
            len(self.members), len(self.half),
        )


def project_poly(phi, index_set):
    """Restrict phi to the coefficients the index set knows."""
    return CoordPoly({i: c for i, c in phi.coeffs.items() if i in index_set.members})


def exp_coord(v, index_set):
    """Projection of exp(<v, t>): coefficient of t^i is v^i / i!."""
    out = {}
    for i in index_set.members:
        num = ONE
        for a, e in i.pairs:
            va = v.get(a, ZERO)
            if not va:
                num = ZERO
                break
            num *= Fraction(va) ** e
        if num:
            out[i] = num / i.factorial()
    return CoordPoly(out)


# -- moment matrices ----------------------------------------------------


class MomentMatrix:
    """Symmetric matrix of moments phi^(i+j) over a half set."""

    __slots__ = ("index", "entries")

    def __init__(self, index, entries):
        self.index = tuple(index)
        self.entries = tuple(tuple(row) for row in entries)

    def json(self):
        return {
            "index": [i.json() for i in self.index],
            "entries": [[str(v) for v in row] for row in self.entries],
        }

    def __repr__(self):
        return "MomentMatrix(%s)" % (
            [[str(v) for v in row] for row in self.entries],
        )


def moment_matrix(phi, index_set):
    """M[i][j] = (i+j)! * coeff_{i+j}(phi) over the half set."""
    idx = index_set.half
    entries = []
    for i in idx:
        row = []
        for j in idx:
            s = i + j
            if s not in index_set.members:
                raise CoverageError("moment index %r outside the index set" % (s,))
            row.append(phi.moment(s))
        entries.append(row)
    return MomentMatrix(idx, entries)


def quadratic_value(matrix, xi):
    """xi^T M xi, exact."""
    rows = matrix.entries if isinstance(matrix, MomentMatrix) else matrix
    n = len(rows)
    assert len(xi) == n, (len(xi), n)
    total = ZERO
    for i in range(n):
        if not xi[i]:
            continue
        for j in range(n):
            if xi[j]:
                total += xi[i] * rows[i][j] * xi[j]
    return total


def _eliminate(rows, strict):
    """Symmetric Gaussian elimination with diagonal pivoting.

    Returns (ok, witness).  For strict=False the witness satisfies
    xi^T M xi < 0; strict mode asserts positive definiteness and reports no
    witness.
    """
    n = len(rows)
    m = [list(r) for r in rows]
    for i in range(n):
        assert len(m[i]) == n, "matrix must be square"
        for j in range(i):
            assert m[i][j] == m[j][i], "matrix must be symmetric"
    active = list(range(n))
    steps = []  # (pivot, {idx: row value}, diag)

    def back_transform(local):
        xi = dict(local)
        for p, row, d in reversed(steps):
            s = sum(row[i] * v for i, v in xi.items() if i in row)
            xi[p] = -s / d
        return [xi.get(i, ZERO) for i in range(n)]

    while active:
        neg = None
        pos = None
        for idx in active:
            d = m[idx][idx]
            if d < 0:
                neg = idx
                break
            if d > 0 and pos is None:
                pos = idx
        if neg is not None:
            return False, back_transform({neg: ONE})
        if pos is None:
            # all diagonal entries vanish; any off-diagonal kills PSD
            for i in active:
                for j in active:
                    if i < j and m[i][j]:
                        c = m[i][j]
                        return False, back_transform({i: -(ONE / c), j: ONE})
            if strict and active:
                return False, None
            return True, None
        p = pos
        d = m[p][p]
        active.remove(p)
        row = {i: m[p][i] for i in active if m[p][i]}
        steps.append((p, row, d))
        for i in active:
            if m[p][i]:
                fi = m[p][i] / d
                for j in active:
                    if m[p][j]:
                        m[i][j] -= fi * m[p][j]
    return True, None


def psd_check(matrix):
    """Exact PSD decision.  Returns (ok, witness); witness has xi^T M xi < 0."""
    rows = matrix.entries if isinstance(matrix, MomentMatrix) else matrix
    ok, wit = _eliminate(rows, strict=False)
    if not ok and wit is not None:
        assert quadratic_value(rows, wit) < 0, "witness must recheck"
    return ok, wit


def pd_check(matrix):
    """Exact strict positive definiteness."""
    rows = matrix.entries if isinstance(matrix, MomentMatrix) else matrix
    ok, _ = _eliminate(rows, strict=True)
    return ok


# -- dual symbols -------------------------------------------------------


class DualVector:
    """Finite combination of differential symbols tau^i.

    Pairs with coordinate polynomials via <tau^i, t^i> = i!.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for i, c in (coeffs or {}).items():
            assert isinstance(i, MultiIndex), i
            if not isinstance(c, Fraction):
                c = Fraction(c)
            if c:
                clean[i] = c
        self.coeffs = clean

    def square(self):
        out = {}
        items = list(self.coeffs.items())
        for a, ca in items:
            for b, cb in items:
                s = a + b
                out[s] = out.get(s, ZERO) + ca * cb
        return DualVector(out)

    def pair(self, phi):
        """<eta, phi> = sum eta_i * i! * coeff_i(phi)."""
        total = ZERO
        for i, c in self.coeffs.items():
            total += c * phi.moment(i)
        return total

    def items(self):
        return sorted(self.coeffs.items(), key=lambda it: it[0].sort_key())

    def json(self):
        return [[i.json(), str(c)] for i, c in self.items()]

    def __repr__(self):
        if not self.coeffs:
            return "DualVector(0)"
        return "DualVector(%s)" % " + ".join(
            "%s*tau^%s" % (c, i) for i, c in self.items()
        )


def dual_from_witness(index, xi):
    """Witness vector over half-set indices -> symbol eta = sum xi_i tau^i."""
    assert len(index) == len(xi), (len(index), len(xi))
    return DualVector({i: c for i, c in zip(index, xi) if c})


def vandermonde_dual(nodes, target, alpha=1):
    """Univariate separating symbol for exponential frequencies.

    Solves sum_j xi_j v_i^j = delta(i, target) over j < len(nodes); pairing
    the square of the result against a signed exponential combination
    isolates the target weight.  Nodes must be distinct.
    """
    nodes = [Fraction(v) for v in nodes]
    assert len(set(nodes)) == len(nodes), "nodes must be distinct"
    r = len(nodes)
    assert 0 <= target < r, (target, r)
    from .linalg import LinearSolver

    rows = [[v ** j for j in range(r)] for v in nodes]
    rhs = [ONE if i == target else ZERO for i in range(r)]
    sol = LinearSolver(rows).solve(rhs)
    assert sol is not None, "Vandermonde system is always solvable"
    return DualVector(
        {MultiIndex.unit(alpha, j) if j else MultiIndex(): c
         for j, c in enumerate(sol)}
    )


# -- extension of strictly positive truncations --------------------------


class ExtendedMoments:
    """Result of extend_moments: polynomial, enlarged set, found etas."""

    __slots__ = ("poly", "index_set", "etas")

    def __init__(self, poly, index_set, etas):
        self.poly = poly
        self.index_set = index_set
        self.etas = tuple(etas)


def extend_moments(phi, index_set, shells=1):
    """Extend a strictly positive truncation outward by half-set layers.

    Requires the moment matrix of phi over index_set to be strictly positive
    definite.  Each new half index p gets a diagonal moment eta at 2p, found
    by exact doubling from 1 until the bordered matrix is again definite;
    all other new coefficients are zero, so the projection back to
    index_set reproduces phi exactly.
    """
    base = moment_matrix(phi, index_set)
    if not pd_check(base):
        raise DomainError("extend_moments needs a strictly definite start")
    coeffs = dict(phi.coeffs)
    members = set(index_set.members)
    half = list(index_set.half)
    etas = []
    current = index_set
    for _ in range(shells):
        larger = current.extend(1)
        fresh = sorted(set(larger.half) - set(current.half), key=MultiIndex.sort_key)
        for p in fresh:
            for h in half:
                members.add(p + h)
            dbl = p.double()
            members.add(dbl)
            idx = half + [p]
            eta = ONE
            while True:
                coeffs[dbl] = eta / Fraction(dbl.factorial())
                poly = CoordPoly(coeffs)
                entries = [[poly.moment(i + j) for j in idx] for i in idx]
                if pd_check(entries):
                    break
                eta *= 2
            etas.append((p, eta))
            half.append(p)
        current = larger
    return ExtendedMoments(CoordPoly(coeffs), current, etas)


# -- exponential rank ----------------------------------------------------


def erank1(phi, n):
    """Minimal exponential count of a univariate truncation, by Hankel rank.

    phi must be univariate with coefficients known up to degree 2n-1.  The
    rank of the n x (n+1) Hankel matrix of moments is returned; confluent
    limits (polynomial-times-exponential tails) report the same rank as
    their exponential count collapses in the truncation.
    """
    assert n >= 1, n
    vs = phi.variables()
    if len(vs) > 1:
        raise DomainError("erank1 needs a univariate polynomial")
    alpha = vs[0] if vs else 1
    s = []
    for q in range(2 * n):
        i = MultiIndex.unit(alpha, q) if q else MultiIndex()
        s.append(phi.moment(i))
    rows = [[s[i + j] for j in range(n + 1)] for i in range(n)]
    return _rank(rows)


def erank_lower_bound(phi, index_set):
    """Moment-matrix rank: a lower bound for the multivariable case.

    Returns (bound, "lower_bound") to keep the label attached to the number.
    """
    m = moment_matrix(phi, index_set)
    return _rank([list(r) for r in m.entries]), "lower_bound"
