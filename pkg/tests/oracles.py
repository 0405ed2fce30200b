"""Independent oracles for the test suite.

Everything here is computed from first principles on plain dicts and lists,
so library results can be checked against a second, unrelated path: naive
dense convolution for products, textbook Gauss-Jordan for ranks, numpy
eigenvalues for PSD, closed-form moments for exponential combinations.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


# -- number theory -------------------------------------------------------


def mobius(n):
    assert n >= 1
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def witt_dim(q, d):
    """Dimension of the degree-d part of the free Lie algebra on q letters."""
    total = sum(mobius(e) * q ** (d // e) for e in divisors(d))
    assert total % d == 0
    return total // d


# -- dense truncated-series arithmetic ------------------------------------


def dense_mul(a, b, n):
    out = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            if len(w1) + len(w2) > n:
                continue
            w = w1 + w2
            out[w] = out.get(w, ZERO) + c1 * c2
    return {w: c for w, c in out.items() if c}


def dense_add(a, b):
    out = dict(a)
    for w, c in b.items():
        out[w] = out.get(w, ZERO) + c
    return {w: c for w, c in out.items() if c}


def dense_scale(a, s):
    return {w: c * s for w, c in a.items() if c * s}


def dense_exp(a, n):
    assert a.get((), ZERO) == 0
    out = {(): ONE}
    term = {(): ONE}
    for j in range(1, n + 1):
        term = dense_scale(dense_mul(term, a, n), Fraction(1, j))
        out = dense_add(out, term)
    return out


def dense_log(g, n):
    assert g.get((), ZERO) == 1
    h = dict(g)
    h[()] = ZERO
    h = {w: c for w, c in h.items() if c}
    out = {}
    term = {(): ONE}
    for j in range(1, n + 1):
        term = dense_mul(term, h, n)
        out = dense_add(out, dense_scale(term, Fraction((-1) ** (j + 1), j)))
    return out


def dense_inverse(g, n):
    """Geometric series for (c0(1+h))^{-1} with h the normalized tail."""
    c0 = g.get((), ZERO)
    assert c0 != 0
    h = dense_scale(dict(g), ONE / c0)
    h[()] = ZERO
    h = {w: c for w, c in h.items() if c}
    out = {(): ONE}
    term = {(): ONE}
    for j in range(1, n + 1):
        term = dense_mul(term, h, n)
        out = dense_add(out, dense_scale(term, Fraction((-1) ** j)))
    return dense_scale(out, ONE / c0)


# -- textbook linear algebra ----------------------------------------------


def naive_rref(rows):
    """Reduced row echelon form by scan-and-normalize; returns (rank, rows)."""
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat:
        return 0, []
    cols = len(mat[0])
    pivot_row = 0
    for col in range(cols):
        chosen = None
        for r in range(pivot_row, len(mat)):
            if mat[r][col]:
                chosen = r
                break
        if chosen is None:
            continue
        mat[pivot_row], mat[chosen] = mat[chosen], mat[pivot_row]
        pv = mat[pivot_row][col]
        mat[pivot_row] = [v / pv for v in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [v - f * p for v, p in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    clean = [r for r in mat if any(r)]
    return len(clean), clean


def naive_rank(rows):
    return naive_rref(rows)[0]


def controllability_rank(a_rows, u_cols):
    """Rank of [U, AU, ..., A^{n-1}U] for square A and columns U."""
    n = len(a_rows)
    cols = [list(map(Fraction, c)) for c in u_cols]
    stack = list(cols)
    cur = cols
    for _ in range(n - 1):
        cur = [
            [sum(Fraction(a_rows[i][j]) * c[j] for j in range(n)) for i in range(n)]
            for c in cur
        ]
        stack.extend(cur)
    return naive_rank(stack)


def eigmin(rows):
    import numpy as np

    arr = np.array([[float(v) for v in r] for r in rows], dtype=float)
    return float(np.linalg.eigvalsh(arr)[0])


# -- exponential moments --------------------------------------------------


def combo_coeffs(pairs, upto):
    """Taylor coefficients of sum w*e^{c t} through degree `upto`."""
    fact = [1] * (upto + 1)
    for j in range(1, upto + 1):
        fact[j] = fact[j - 1] * j
    return [
        sum(Fraction(w) * Fraction(c) ** j for w, c in pairs) / fact[j]
        for j in range(upto + 1)
    ]


# -- random generators ----------------------------------------------------


def rand_frac(rng, num=9, den=6):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_word(rng, k, maxlen, minlen=1, letters=None):
    length = rng.randint(minlen, maxlen)
    pool = letters if letters is not None else range(k + 1)
    return tuple(rng.choice(list(pool)) for _ in range(length))


def rand_dict(rng, k, n, terms, minlen=0, letters=None):
    out = {}
    for _ in range(terms):
        w = rand_word(rng, k, n, minlen=max(minlen, 0), letters=letters)
        if minlen == 0 and rng.random() < 0.2:
            w = ()
        c = rand_frac(rng)
        if c:
            out[w] = out.get(w, ZERO) + c
    return {w: c for w, c in out.items() if c}


def rand_bracket_tree(rng, letters, depth):
    """Random binary bracket tree over the given letters, as nested tuples."""
    if depth <= 1 or rng.random() < 0.3:
        return rng.choice(list(letters))
    return (
        rand_bracket_tree(rng, letters, depth - 1),
        rand_bracket_tree(rng, letters, depth - 1),
    )


def tree_letters(t):
    if isinstance(t, int):
        return [t]
    return tree_letters(t[0]) + tree_letters(t[1])
