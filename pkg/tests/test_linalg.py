import random
from fractions import Fraction

from goodbrackets.linalg import LinearSolver, RowSpace, rank, rref

from oracles import naive_rank, naive_rref, rand_frac

F = Fraction


def rand_matrix(rng, rows, cols, sparse=0.3):
    return [
        [rand_frac(rng) if rng.random() > sparse else F(0) for _ in range(cols)]
        for _ in range(rows)
    ]


def test_rref_matches_textbook_oracle():
    rng = random.Random(11)
    for _ in range(30):
        m = rand_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        got, pivots = rref([list(r) for r in m])
        want_rank, want_rows = naive_rref(m)
        got_rows = [r for r in got if any(r)]
        # reduced echelon form is unique, so the nonzero rows agree exactly
        assert got_rows == want_rows
        assert rank(m) == want_rank == len(pivots)


def test_rank_known_values():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[0, 0], [0, 0]]) == 0


def test_solver_recovers_solutions():
    rng = random.Random(19)
    for _ in range(20):
        n = rng.randint(1, 5)
        a = rand_matrix(rng, n + rng.randint(0, 2), n, sparse=0.2)
        x0 = [rand_frac(rng) for _ in range(n)]
        b = [sum(row[j] * x0[j] for j in range(n)) for row in a]
        sol = LinearSolver(a).solve(b)
        assert sol is not None
        got = [sum(row[j] * sol[j] for j in range(n)) for row in a]
        assert got == b


def test_solver_detects_inconsistency():
    a = [[1, 0], [1, 0]]
    assert LinearSolver(a).solve([1, 2]) is None


def test_rowspace_membership_and_dim():
    rs = RowSpace(3)
    assert rs.add([1, 0, 0])
    assert rs.add([0, 1, 0])
    assert not rs.add([1, 1, 0])
    assert rs.dim == 2
    assert rs.contains([F(5), F(-3), F(0)])
    assert not rs.contains([0, 0, 1])


def test_rowspace_reduce_is_canonical():
    rng = random.Random(23)
    rs = RowSpace(5)
    vecs = [[rand_frac(rng) for _ in range(5)] for _ in range(3)]
    for v in vecs:
        rs.add(list(v))
    for _ in range(10):
        x = [rand_frac(rng) for _ in range(5)]
        r = rs.reduce(list(x))
        # residual is fixed by a second reduction and the difference is in the span
        assert rs.reduce(list(r)) == r
        diff = [a - b for a, b in zip(x, r)]
        assert rs.contains(diff)


def test_rowspace_basis_is_rref():
    rng = random.Random(27)
    rs = RowSpace(4)
    m = rand_matrix(rng, 6, 4)
    for row in m:
        rs.add(list(row))
    _, want = naive_rref(m)
    assert rs.basis() == want
