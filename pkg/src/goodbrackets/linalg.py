"""Exact rational linear algebra over Fraction.

Small and self-contained: reduced row echelon form, rank, repeated solves
against one factorization, and an incremental row-space for span/reduction
queries.  Rows are lists of Fractions; nothing here mutates its inputs.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rref(rows):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = ONE / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


class LinearSolver:
    """Factor a matrix once, solve A x = b many times, exactly.

    Stores the rref of A together with the row transform T (T A = R), so a
    solve is one matvec plus back-reads.  Free variables are set to zero.
    """

    def __init__(self, a_rows):
        self.nrows = len(a_rows)
        self.ncols = len(a_rows[0]) if a_rows else 0
        # augment with identity to record the transform
        aug = [list(r) + [ONE if i == j else ZERO for j in range(self.nrows)]
               for i, r in enumerate(a_rows)]
        red, pivots = rref(aug)
        # pivots beyond ncols belong to the identity block and mean rank
        # deficiency of A; keep only true pivots
        self.pivots = [c for c in pivots if c < self.ncols]
        self.r = [row[: self.ncols] for row in red]
        self.t = [row[self.ncols:] for row in red]

    def solve(self, b):
        """One exact solution of A x = b (free vars zero), or None."""
        assert len(b) == self.nrows, (len(b), self.nrows)
        c = [sum(tv * bv for tv, bv in zip(trow, b) if tv) for trow in self.t]
        x = [ZERO] * self.ncols
        nr = len(self.pivots)
        for i, pc in enumerate(self.pivots):
            x[pc] = c[i]
        # consistency: rows of R with no pivot must have zero rhs
        for i in range(nr, self.nrows):
            if c[i]:
                return None
        # with free vars at zero, x restricted to pivot cols already solves
        # R x = c; but only if non-pivot columns of pivot rows multiply zeros,
        # which they do by construction.
        return x


class RowSpace:
    """Incrementally built row space with exact reduction.

    Vectors are dense lists of Fractions of a fixed width.  Internally keeps
    rows scaled to a unit leading pivot, fully reduced against each other.
    """

    def __init__(self, width):
        self.width = width
        self.rows = []  # list of (pivot_col, row)

    def reduce(self, vec):
        """Residual of vec modulo the current space."""
        assert len(vec) == self.width, (len(vec), self.width)
        v = list(vec)
        for pc, row in self.rows:
            if v[pc]:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, vec):
        """Insert vec; returns True if the space grew."""
        v = self.reduce(vec)
        pc = None
        for i, val in enumerate(v):
            if val:
                pc = i
                break
        if pc is None:
            return False
        inv = ONE / v[pc]
        v = [a * inv for a in v]
        # back-substitute into existing rows to stay fully reduced
        self.rows = [
            (p, [a - r[pc] * b for a, b in zip(r, v)] if r[pc] else r)
            for p, r in self.rows
        ]
        self.rows.append((pc, v))
        self.rows.sort(key=lambda pr: pr[0])
        return True

    def contains(self, vec):
        return not any(self.reduce(vec))

    @property
    def dim(self):
        return len(self.rows)

    def basis(self):
        """Canonical (reduced echelon) basis rows."""
        return [list(r) for _, r in self.rows]
