"""Tests for coordinate polynomials, index sets and moment positivity."""

import random
from fractions import Fraction
from types import SimpleNamespace

import pytest

from goodbrackets import (
    CoordPoly,
    CoverageError,
    DomainError,
    DualVector,
    IndexSet,
    MomentMatrix,
    MultiIndex,
    TruncSeries,
    dual_from_witness,
    erank1,
    erank_lower_bound,
    exp_coord,
    exp_trunc,
    extend_moments,
    moment_matrix,
    pbw_decompose,
    pd_check,
    project_poly,
    psd_check,
    quadratic_value,
    vandermonde_dual,
)
from goodbrackets.linalg import rank

from oracles import combo_coeffs, eigmin, rand_frac

F = Fraction
E = MultiIndex()
T1 = MultiIndex.unit(1)
T2 = MultiIndex.unit(2)


def upoly(*coeffs):
    """Univariate CoordPoly with the given coefficients from degree 0 up."""
    return CoordPoly({
        MultiIndex.unit(1, q) if q else E: c
        for q, c in enumerate(coeffs)
    })


# -- multi-indices --------------------------------------------------------


def test_multiindex_basics():
    i = MultiIndex(((2, 3), (1, 1)))
    assert i.pairs == ((1, 1), (2, 3))
    assert i.total() == 4
    assert i.weighted({1: 1, 2: 2}) == 7
    assert i.exp(2) == 3 and i.exp(5) == 0
    assert i.support() == (1, 2)
    assert i.factorial() == 6
    assert MultiIndex.unit(3, 2).pairs == ((3, 2),)
    assert E.is_zero() and E.factorial() == 1 and E.total() == 0


def test_multiindex_add_double_json():
    i = MultiIndex.unit(1, 2) + MultiIndex(((1, 1), (3, 1)))
    assert i.pairs == ((1, 3), (3, 1))
    assert i.double().pairs == ((1, 6), (3, 2))
    assert i.json() == [[1, 3], [3, 1]]
    assert MultiIndex({1: 0, 2: 1}).pairs == ((2, 1),)  # zero exponents drop


def test_multiindex_ordering():
    # graded, then lexicographic on the pair tuples
    xs = [MultiIndex.unit(1, 2), T2, T1, E, T1 + T2]
    assert sorted(xs) == [E, T1, T2, T1 + T2, MultiIndex.unit(1, 2)]


def test_multiindex_duplicate_rejected():
    with pytest.raises(AssertionError):
        MultiIndex(((1, 1), (1, 2)))


def test_multiindex_repr():
    assert repr(E) == "1"
    assert repr(MultiIndex(((1, 1), (2, 3)))) == "t1t2^3"


# -- coordinate polynomials ------------------------------------------------


def test_coordpoly_moment_is_factorial_times_coeff():
    phi = upoly(1, F(1, 2), F(1, 6))
    assert phi.coeff(MultiIndex.unit(1, 2)) == F(1, 6)
    assert phi.moment(MultiIndex.unit(1, 2)) == F(1, 3)
    assert phi.moment(E) == 1
    assert phi.moment(MultiIndex.unit(1, 9)) == 0
    assert phi.variables() == [1]


def test_coordpoly_add_scale_drop_zero():
    phi = CoordPoly({T1: F(2), T2: F(-1)})
    psi = phi + CoordPoly({T2: F(1), E: F(3)})
    assert psi.coeff(T2) == 0 and T2 not in psi.coeffs
    assert psi.coeff(E) == 3
    assert phi.scale(F(1, 2)).coeff(T1) == 1
    assert CoordPoly({T1: 0.0 and 0}).coeffs == {}


def test_coordpoly_items_sorted():
    phi = CoordPoly({T1 + T2: 1, E: 2, T2: 3})
    assert [i for i, _ in phi.items()] == [E, T2, T1 + T2]


# -- index sets ------------------------------------------------------------


def test_simplex_members_and_half():
    s = IndexSet.simplex(1, 3)
    assert set(s.members) == {E, T1, MultiIndex.unit(1, 2)}
    assert s.half == (E, T1)
    assert s.sorted_members() == [E, T1, MultiIndex.unit(1, 2)]
    assert MultiIndex.unit(1, 3) not in s


def test_simplex_two_vars():
    s = IndexSet.simplex(2, 3)
    # total degree <= 2 on two variables: 6 monomials
    assert len(s.members) == 6
    assert T1 + T2 in s
    assert s.half == (E, T1, T2)


def test_box_members():
    b = IndexSet.box(2, 2)
    assert set(b.members) == {E, T1, T2, T1 + T2}
    assert b.half == (E,)
    b3 = IndexSet.box(2, 3)
    assert len(b3.members) == 9
    assert b3.half == (E, T1, T2, T1 + T2)


def test_weighted_simplex():
    s = IndexSet.weighted_simplex({1: 1, 2: 1, 3: 2}, 3)
    t3 = MultiIndex.unit(3)
    assert t3 in s
    assert t3.double() not in s
    assert MultiIndex.unit(1, 3) in s
    assert s.half == (E, T1, T2)


def test_extend_grows_half():
    s = IndexSet.simplex(1, 3)
    big = s.extend(1)
    assert big.half == (E, T1, MultiIndex.unit(1, 2))
    assert MultiIndex.unit(1, 4) in big
    same = s.extend(0)
    assert same.half == s.half and same.members == s.members


def test_project_poly():
    phi = upoly(1, 1, 1)
    cut = project_poly(phi, IndexSet.simplex(1, 2))
    assert cut == upoly(1, 1)
    assert project_poly(cut, IndexSet.simplex(1, 2)) == cut
    s = IndexSet.weighted_simplex({1: 1, 2: 1, 3: 2}, 3)
    t3 = MultiIndex.unit(3)
    phi2 = CoordPoly({t3: 1, t3.double(): 1})
    assert project_poly(phi2, s) == CoordPoly({t3: 1})


def test_exp_coord_univariate():
    phi = exp_coord({1: 2}, IndexSet.simplex(1, 3))
    assert phi == upoly(1, 2, 2)
    assert exp_coord({}, IndexSet.simplex(1, 3)) == upoly(1)
    assert exp_coord({1: 0}, IndexSet.simplex(1, 3)) == upoly(1)


def test_exp_coord_box():
    phi = exp_coord({1: 1, 2: 1}, IndexSet.box(2, 2))
    assert phi == CoordPoly({E: 1, T1: 1, T2: 1, T1 + T2: 1})


def test_exp_coord_matches_group_like_decomposition():
    # ordered-product coordinates of exp(3 a1) are exactly exp(3 t1)
    x = exp_trunc(TruncSeries.letter(1, 1, 3).scale(F(3)))
    pbw = pbw_decompose(x)
    phi = CoordPoly({MultiIndex(mono): c for mono, c in pbw.coeffs.items()})
    assert phi == exp_coord({1: 3}, IndexSet.simplex(1, 4))


# -- moment matrices --------------------------------------------------------


def test_moment_matrix_exponential_is_all_ones():
    phi = upoly(1, 1, F(1, 2))
    m = moment_matrix(phi, IndexSet.simplex(1, 3))
    assert m.index == (E, T1)
    assert m.entries == ((1, 1), (1, 1))


def test_moment_matrix_negative_square():
    phi = upoly(1, 0, -1)
    m = moment_matrix(phi, IndexSet.simplex(1, 3))
    assert m.entries == ((1, 0), (0, -2))


def test_moment_matrix_landmark_pd():
    phi = upoly(1, F(1, 2), F(1, 6))
    m = moment_matrix(phi, IndexSet.simplex(1, 3))
    assert m.entries == ((1, F(1, 2)), (F(1, 2), F(1, 3)))
    assert pd_check(m)


def test_moment_matrix_coverage_guard():
    bad = SimpleNamespace(half=(T1,), members=frozenset({T1}))
    with pytest.raises(CoverageError):
        moment_matrix(upoly(0, 1), bad)


def test_moment_matrix_json():
    m = moment_matrix(upoly(1, 1, F(1, 2)), IndexSet.simplex(1, 3))
    assert m.json() == {"index": [[], [[1, 1]]],
                        "entries": [["1", "1"], ["1", "1"]]}


def test_quadratic_value():
    rows = [[F(1), F(2)], [F(2), F(1)]]
    assert quadratic_value(rows, [F(1), F(1)]) == 6
    assert quadratic_value(rows, [F(-2), F(1)]) == -3
    m = MomentMatrix((E, T1), rows)
    assert quadratic_value(m, [F(1), F(-1)]) == -2


# -- positivity checks -------------------------------------------------------


def test_psd_check_identity():
    ok, wit = psd_check([[F(1), F(0)], [F(0), F(1)]])
    assert ok and wit is None


def test_psd_check_indefinite_witness():
    ok, wit = psd_check([[F(1), F(2)], [F(2), F(1)]])
    assert not ok
    assert wit == [F(-2), F(1)]
    assert quadratic_value([[F(1), F(2)], [F(2), F(1)]], wit) == -3


def test_psd_check_singular_ok():
    ok, wit = psd_check([[F(1), F(1)], [F(1), F(1)]])
    assert ok and wit is None


def test_psd_check_zero_diagonal():
    rows = [[F(0), F(1)], [F(1), F(0)]]
    ok, wit = psd_check(rows)
    assert not ok
    assert quadratic_value(rows, wit) == -2


def test_psd_check_zero_matrix():
    ok, wit = psd_check([[F(0), F(0)], [F(0), F(0)]])
    assert ok and wit is None


def test_psd_check_negative_diagonal():
    phi = upoly(1, 0, -1)
    m = moment_matrix(phi, IndexSet.simplex(1, 3))
    ok, wit = psd_check(m)
    assert not ok
    assert quadratic_value(m, wit) < 0


def test_pd_check():
    assert pd_check([[F(2)]])
    assert not pd_check([[F(0)]])
    assert not pd_check([[F(1), F(1)], [F(1), F(1)]])
    assert pd_check([[F(1), F(1, 2)], [F(1, 2), F(1, 3)]])


def test_psd_check_against_float_eigenvalues():
    rng = random.Random(7121)
    for _ in range(60):
        n = rng.randint(1, 6)
        rows = [[F(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = F(rng.randint(-9, 9))
                rows[i][j] = v
                rows[j][i] = v
        ok, wit = psd_check(rows)
        lo = eigmin(rows)
        if abs(lo) > 1e-9:
            assert ok == (lo > 0), (rows, lo)
        if not ok:
            assert quadratic_value(rows, wit) < 0


# -- dual symbols -------------------------------------------------------------


def test_dual_square():
    eta = DualVector({E: F(1), T1: F(1)})
    sq = eta.square()
    assert sq.coeffs == {E: 1, T1: 2, MultiIndex.unit(1, 2): 1}


def test_dual_pair_uses_moments():
    eta = DualVector({T1: F(1)})
    assert eta.pair(upoly(0, 1)) == 1
    assert eta.pair(upoly(0, 0, 5)) == 0
    eta2 = DualVector({E: F(2), MultiIndex.unit(1, 2): F(1)})
    assert eta2.pair(upoly(3, 0, F(1, 2))) == 2 * 3 + 2 * F(1, 2)


def test_dual_from_witness_rechecks_indefinite_matrix():
    phi = upoly(1, 1, 0)
    m = moment_matrix(phi, IndexSet.simplex(1, 3))
    ok, wit = psd_check(m)
    assert not ok and wit == [F(-1), F(1)]
    eta = dual_from_witness(m.index, wit)
    assert eta.square().pair(phi) == -1


def test_dual_pairing_equals_quadratic_form():
    rng = random.Random(3344)
    s = IndexSet.simplex(1, 5)
    for _ in range(20):
        phi = CoordPoly({i: rand_frac(rng) for i in s.members})
        m = moment_matrix(phi, s)
        xi = [rand_frac(rng) for _ in m.index]
        eta = dual_from_witness(m.index, xi)
        assert eta.square().pair(phi) == quadratic_value(m, xi)


def test_dual_json():
    eta = DualVector({E: F(-1), T1: F(1, 2)})
    assert eta.json() == [[[], "-1"], [[[1, 1]], "1/2"]]


def test_vandermonde_dual_lagrange_property():
    eta = vandermonde_dual([0, 1, 2], 1)
    xs = {i.total(): c for i, c in eta.items()}
    coeffs = [xs.get(j, F(0)) for j in range(3)]
    for i, v in enumerate([0, 1, 2]):
        val = sum(c * F(v) ** j for j, c in enumerate(coeffs))
        assert val == (1 if i == 1 else 0)


def test_vandermonde_dual_isolates_weight():
    nodes = [1, -1]
    weights = [F(3), F(-5)]
    coeffs = combo_coeffs(list(zip(weights, nodes)), 2)
    phi = upoly(*coeffs)
    assert vandermonde_dual(nodes, 0).square().pair(phi) == 3
    assert vandermonde_dual(nodes, 1).square().pair(phi) == -5


def test_vandermonde_dual_random_combos():
    rng = random.Random(9090)
    for _ in range(15):
        r = rng.randint(2, 4)
        nodes = rng.sample(range(-6, 7), r)
        weights = [rand_frac(rng) for _ in range(r)]
        coeffs = combo_coeffs(list(zip(weights, nodes)), 2 * (r - 1))
        phi = upoly(*coeffs)
        t = rng.randrange(r)
        assert vandermonde_dual(nodes, t).square().pair(phi) == weights[t]


def test_vandermonde_dual_rejects_repeats():
    with pytest.raises(AssertionError):
        vandermonde_dual([1, 1], 0)


# -- extension ---------------------------------------------------------------


def test_extend_moments_zero_shells():
    phi = upoly(1, F(1, 2), F(1, 6))
    ext = extend_moments(phi, IndexSet.simplex(1, 3), shells=0)
    assert ext.poly == phi
    assert ext.etas == ()


def test_extend_moments_one_shell():
    s = IndexSet.simplex(1, 3)
    phi = upoly(1, F(1, 2), F(1, 6))
    ext = extend_moments(phi, s)
    assert project_poly(ext.poly, s) == phi
    assert ext.etas == ((MultiIndex.unit(1, 2), F(1)),)
    m = moment_matrix(ext.poly, ext.index_set)
    assert len(m.index) == 3
    assert pd_check(m)


def test_extend_moments_two_shells():
    s = IndexSet.simplex(1, 3)
    phi = upoly(1, F(1, 2), F(1, 2))  # half of 1 + e^t, truncated
    ext = extend_moments(phi, s, shells=2)
    assert project_poly(ext.poly, s) == phi
    assert len(ext.etas) == 2
    for _, eta in ext.etas:
        assert eta >= 1 and (eta & (eta - 1) == 0 if isinstance(eta, int) else True)
    assert pd_check(moment_matrix(ext.poly, ext.index_set))


def test_extend_moments_needs_definite_start():
    phi = upoly(1, 1, F(1, 2))  # e^t truncation: PSD but singular
    with pytest.raises(DomainError):
        extend_moments(phi, IndexSet.simplex(1, 3))


# -- exponential rank ---------------------------------------------------------


def test_erank_single_exponential():
    phi = upoly(*combo_coeffs([(1, 2)], 3))
    assert erank1(phi, 2) == 1


def test_erank_cosh():
    phi = upoly(*combo_coeffs([(F(1, 2), 1), (F(1, 2), -1)], 5))
    assert erank1(phi, 2) == 2
    assert erank1(phi, 3) == 2


def test_erank_constant_and_zero():
    assert erank1(upoly(1, 0, 0, 0), 2) == 1
    assert erank1(CoordPoly(), 2) == 0


def test_erank_rejects_multivariate():
    phi = CoordPoly({T1: 1, T2: 1})
    with pytest.raises(DomainError):
        erank1(phi, 1)


def test_erank_lower_bound_label():
    s = IndexSet.box(2, 3)
    phi = exp_coord({1: 1, 2: 2}, s)
    assert erank_lower_bound(phi, s) == (1, "lower_bound")
    two = exp_coord({1: 1, 2: 1}, s) + exp_coord({1: 2, 2: 3}, s)
    assert erank_lower_bound(two, s) == (2, "lower_bound")


def test_exponential_projections_span_box():
    # coefficient vectors of exp(<v,t>) for 4 distinct nodes fill the box
    b = IndexSet.box(2, 2)
    cols = b.sorted_members()
    rows = []
    for v in [(0, 0), (1, 0), (0, 1), (1, 1)]:
        phi = exp_coord({1: v[0], 2: v[1]}, b)
        rows.append([phi.coeff(i) for i in cols])
    assert rank(rows) == 4
