"""Application generators: polynomial drift tests and extension templates.

Three constructions for control-affine systems on R^n: the generalized
Kalman chain driven by the top-degree homogenization map Phi, the step-3
nilpotent extension with its PSD control constraint, and the scalar-control
extension whose constraint is a Hankel matrix in the added controls.
"""

from fractions import Fraction
from math import factorial

from .errors import DimensionMismatch, DomainError
from .linalg import RowSpace

ZERO = Fraction(0)
ONE = Fraction(1)


class PolyMap:
    """Vector polynomial f: R^dim -> R^dim of declared odd degree 2m-1.

    Each component is a dict mapping an exponent tuple (length dim) to a
    rational coefficient.
    """

    __slots__ = ("dim", "m", "components")

    def __init__(self, dim, m, components):
        assert dim >= 1 and m >= 1, (dim, m)
        assert len(components) == dim, "need one polynomial per coordinate"
        self.dim = dim
        self.m = m
        bound = 2 * m - 1
        comps = []
        for poly in components:
            clean = {}
            for expo, c in poly.items():
                expo = tuple(int(e) for e in expo)
                assert len(expo) == dim and all(e >= 0 for e in expo), expo
                if sum(expo) > bound:
                    raise DomainError(
                        "monomial degree %d exceeds declared bound %d"
                        % (sum(expo), bound))
                c = Fraction(c)
                if c:
                    clean[expo] = c
            comps.append(clean)
        self.components = tuple(comps)

    @staticmethod
    def linear(matrix):
        """f(x) = Ax as a PolyMap with m=1."""
        dim = len(matrix)
        comps = []
        for row in matrix:
            assert len(row) == dim, "matrix must be square"
            poly = {}
            for j, a in enumerate(row):
                if a:
                    e = [0] * dim
                    e[j] = 1
                    poly[tuple(e)] = Fraction(a)
            comps.append(poly)
        return PolyMap(dim, 1, comps)

    @staticmethod
    def from_json(doc):
        comps = []
        for comp in doc["components"]:
            comps.append({
                tuple(rec["exponents"]): Fraction(rec["coefficient"])
                for rec in comp
            })
        return PolyMap(int(doc["dim"]), int(doc["m"]), comps)

    def json(self):
        return {
            "dim": self.dim,
            "m": self.m,
            "components": [
                [
                    {"exponents": list(e), "coefficient": str(c)}
                    for e, c in sorted(poly.items())
                ]
                for poly in self.components
            ],
        }

    def top_part(self):
        """Homogeneous degree-(2m-1) component of each coordinate."""
        d = 2 * self.m - 1
        return tuple(
            {e: c for e, c in poly.items() if sum(e) == d}
            for poly in self.components
        )


def phi_map(f, v):
    """(2m-1)! times the top homogeneous part of f evaluated at v."""
    assert isinstance(f, PolyMap), f
    if len(v) != f.dim:
        raise DimensionMismatch("vector length %d, map dimension %d"
                                % (len(v), f.dim))
    v = [Fraction(x) for x in v]
    scale = factorial(2 * f.m - 1)
    out = []
    for poly in f.top_part():
        total = ZERO
        for e, c in poly.items():
            term = c
            for x, p in zip(v, e):
                if p:
                    term *= x ** p
            total += term
        out.append(scale * total)
    return out


class Subspace:
    """Rational subspace of R^dim in reduced echelon form."""

    __slots__ = ("ambient", "_space")

    def __init__(self, ambient, vectors=()):
        assert ambient >= 1, ambient
        self.ambient = ambient
        self._space = RowSpace(ambient)
        for v in vectors:
            assert len(v) == ambient, (len(v), ambient)
            self._space.add([Fraction(x) for x in v])

    @property
    def dim(self):
        return self._space.dim

    def basis(self):
        return self._space.basis()

    def contains(self, vec):
        return self._space.contains([Fraction(x) for x in vec])

    def with_vectors(self, vectors):
        out = Subspace(self.ambient)
        for row in self.basis():
            out._space.add(row)
        for v in vectors:
            out._space.add([Fraction(x) for x in v])
        return out

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.basis() == other.basis())

    def json(self):
        return {
            "ambient": self.ambient,
            "dimension": self.dim,
            "basis": [[str(x) for x in row] for row in self.basis()],
        }

    def __repr__(self):
        return "Subspace(dim %d of R^%d)" % (self.dim, self.ambient)


def _lambda_image_vectors(f, basis_vectors):
    """Coefficient vectors of Phi(sum lambda_i b_i) as a lambda-polynomial.

    Expanding symbolically and collecting every lambda-monomial's vector of
    coefficients spans exactly the image span of Phi over the subspace.
    """
    r = len(basis_vectors)
    d = 2 * f.m - 1
    scale = factorial(d)
    # per component: dict lambda-exponent -> coefficient
    collected = {}
    for comp_idx, poly in enumerate(f.top_part()):
        for e, c in poly.items():
            # expand prod_j (sum_i lambda_i b_i[j])^{e_j}
            terms = {(0,) * r: c}
            for j, p in enumerate(e):
                for _ in range(p):
                    nxt = {}
                    for lam, cc in terms.items():
                        for i in range(r):
                            bij = basis_vectors[i][j]
                            if not bij:
                                continue
                            lam2 = lam[:i] + (lam[i] + 1,) + lam[i + 1:]
                            nxt[lam2] = nxt.get(lam2, ZERO) + cc * bij
                    terms = nxt
            for lam, cc in terms.items():
                if cc:
                    key = lam
                    vec = collected.setdefault(key, [ZERO] * f.dim)
                    vec[comp_idx] += scale * cc
    return [vec for _, vec in sorted(collected.items())]


def kalman_subspaces(f, u):
    """Increasing chain V_1 = U, V_{j+1} = span Phi(V_j) + V_j.

    The chain stabilizes after at most dim steps; the returned list ends
    with the stabilized subspace.
    """
    assert isinstance(f, PolyMap), f
    assert isinstance(u, Subspace), u
    assert u.ambient == f.dim, (u.ambient, f.dim)
    chain = [u]
    for _ in range(f.dim):
        cur = chain[-1]
        vecs = _lambda_image_vectors(f, cur.basis())
        nxt = cur.with_vectors(vecs)
        if nxt.dim == cur.dim:
            break
        chain.append(nxt)
    else:
        # dim increased every step and the ambient bound forces a stop
        assert chain[-1].dim <= f.dim
    return chain


class ExtendedSystemSpec:
    """Symbolic extended-system template: fields, constraint, free controls."""

    __slots__ = ("kind", "parameter", "fields", "constraint", "free")

    def __init__(self, kind, parameter, fields, constraint, free):
        self.kind = kind
        self.parameter = parameter
        self.fields = tuple(fields)
        self.constraint = constraint
        self.free = tuple(free)

    @property
    def control_count(self):
        return len(self.fields)

    def json(self):
        return {
            "kind": self.kind,
            "parameter": self.parameter,
            "control_count": self.control_count,
            "fields": [dict(f) for f in self.fields],
            "constraint": self.constraint,
            "free_controls": list(self.free),
        }


def step3_extension(k):
    """Step-3 nilpotent extension template on k controlled fields.

    Emits the full field list with its controls and the (k+1) x (k+1) PSD
    constraint on the u symbols with u00 pinned to 1; the v and w controls
    are unconstrained.  The control count is k(k+1)(2k+7)/6.
    """
    assert k >= 1, k
    fields = []
    free = []
    for i in range(1, k + 1):
        fields.append({"control": "u%d" % i, "field": "f%d" % i})
    for i in range(1, k + 1):
        fields.append({"control": "u%d0" % i, "field": "[f%d,f0]" % i})
    for i in range(1, k + 1):
        fields.append({
            "control": "u%d%d" % (i, i),
            "coefficient": "1/2",
            "field": "[f%d,[f%d,f0]]" % (i, i),
        })
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            fields.append({
                "control": "u%d%d" % (i, j),
                "field": "[f%d,[f%d,f0]]" % (i, j),
            })
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            name = "v%d%d" % (i, j)
            fields.append({"control": name, "field": "[[f%d,f%d],f0]" % (i, j)})
            free.append(name)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            name = "w%d%d" % (i, j)
            fields.append({"control": name, "field": "[f%d,f%d]" % (i, j)})
            free.append(name)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            for l in range(i, k + 1):
                name = "w%d%d%d" % (i, j, l)
                fields.append({
                    "control": name,
                    "field": "[[f%d,f%d],f%d]" % (i, j, l),
                })
                free.append(name)
    matrix = []
    for i in range(k + 1):
        row = []
        for j in range(k + 1):
            lo, hi = min(i, j), max(i, j)
            if lo == 0 and hi == 0:
                row.append("1")
            elif lo == 0:
                row.append("u%d0" % hi)
            else:
                row.append("u%d%d" % (lo, hi))
        matrix.append(row)
    constraint = {
        "relation": "positive_semidefinite",
        "matrix": matrix,
        "fixed": {"u00": "1"},
        "symmetry": "uij=uji",
    }
    spec = ExtendedSystemSpec("step3", k, fields, constraint, free)
    assert spec.control_count == k * (k + 1) * (2 * k + 7) // 6, \
        "field enumeration out of step with the closed form"
    return spec


def scalar_extension(m):
    """Scalar-control extension template of polynomial degree m.

    Fields are the scaled derivative fields (1/i!) d^i psi / dx^i for
    i = 0..m with u0 = 1; the constraint is the Hankel matrix [u_{i+j}]
    over 0 <= i, j <= floor(m/2).  For odd m the top control never enters
    the matrix and is reported free.
    """
    assert m >= 1, m
    fields = []
    for i in range(m + 1):
        fields.append({
            "control": "u%d" % i,
            "coefficient": str(Fraction(1, factorial(i))),
            "field": "d^%d psi/dx^%d" % (i, i) if i else "psi",
        })
    h = m // 2
    matrix = [["u%d" % (i + j) if i + j else "1" for j in range(h + 1)]
              for i in range(h + 1)]
    free = ["u%d" % j for j in range(2 * h + 1, m + 1)]
    constraint = {
        "relation": "positive_semidefinite",
        "matrix": matrix,
        "fixed": {"u0": "1"},
    }
    return ExtendedSystemSpec("scalar", m, fields, constraint, free)
