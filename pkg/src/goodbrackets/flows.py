"""Flows of the universal control-affine system and the oscillation experiment.

Piecewise-constant controls drive dx = x (a0 + sum u_i a_i) dt inside the
degree-truncated free algebra, where everything is exact: endpoints are
ordered products of exponentials, word coefficients are iterated integrals
with closed-form piecewise-polynomial evaluation, and the fast-oscillation
experiment measures how quickly the reflected two-phase control approximates
the averaged direction integral Ad(p_s) a0.
"""

from fractions import Fraction
from math import log as _ln

from .algebra import (
    TruncSeries,
    ad_pow,
    adjoint,
    exp_trunc,
    inverse,
    log_trunc,
)
from .errors import DomainError

ZERO = Fraction(0)
ONE = Fraction(1)


class PiecewiseControl:
    """Piecewise-constant control: (duration, value vector) pieces."""

    __slots__ = ("pieces", "k")

    def __init__(self, pieces, k=None):
        clean = []
        width = k
        for dur, vals in pieces:
            dur = Fraction(dur)
            assert dur > 0, "piece durations must be positive"
            vals = tuple(Fraction(v) for v in vals)
            if width is None:
                width = len(vals)
            assert len(vals) == width, "all pieces need the same width"
            clean.append((dur, vals))
        assert clean or k is not None, "empty control needs an explicit width"
        self.pieces = tuple(clean)
        self.k = width

    def total_duration(self):
        return sum((d for d, _ in self.pieces), ZERO)

    @staticmethod
    def constant(duration, vals):
        return PiecewiseControl([(duration, vals)])

    def then(self, other):
        assert self.k == other.k, "control widths differ"
        return PiecewiseControl(self.pieces + other.pieces, self.k)

    def repeat(self, count):
        assert count >= 1, count
        return PiecewiseControl(self.pieces * count, self.k)

    def __repr__(self):
        return "PiecewiseControl(%s)" % ", ".join(
            "%s:%s" % (d, ",".join(map(str, v))) for d, v in self.pieces)


class FlowResult:
    """Endpoint of a flow together with its logarithmic chart."""

    __slots__ = ("endpoint", "logchart")

    def __init__(self, endpoint, logchart):
        self.endpoint = endpoint
        self.logchart = logchart


def _field(vals, k, n):
    """a0 + sum u_i a_i for one constant piece."""
    coeffs = {(0,): ONE}
    for i, u in enumerate(vals, start=1):
        if u:
            coeffs[(i,)] = u
    return TruncSeries(k, n, coeffs)


def flow_endpoint(u, k, n):
    """Ordered product of piece exponentials, from the identity."""
    assert isinstance(u, PiecewiseControl), u
    assert u.k <= k, "control width %d exceeds alphabet %d" % (u.k, k)
    g = TruncSeries.one(k, n)
    for dur, vals in u.pieces:
        g = g * exp_trunc(_field(vals, k, n).scale(dur))
    return FlowResult(g, log_trunc(g))


def chrono_coefficient(w, u):
    """Iterated integral of the controls along the word, in closed form.

    The chain S_emptyword = 1, d/dt S_{w.i} = u_i(t) S_w is integrated
    piecewise: within each piece every prefix value is a polynomial in the
    elapsed time, so the integral is exact.  u_0 is the constant 1.
    """
    assert isinstance(u, PiecewiseControl), u
    w = tuple(w)
    for letter in w:
        assert 0 <= letter <= u.k, "letter a%d outside control width" % letter
    # polys[j] = coefficients of S over prefix w[:j] in elapsed piece time
    polys = [[ONE]] + [[ZERO] for _ in w]
    for dur, vals in u.pieces:
        ext = (ONE,) + vals
        # ascending prefixes: each integrates the fresh one below it,
        # starting from its value at the piece boundary
        for j in range(1, len(w) + 1):
            uj = ext[w[j - 1]]
            integ = [polys[j][0]]
            integ += [uj * c / (p + 1) for p, c in enumerate(polys[j - 1])]
            polys[j] = integ
        # evaluate at the piece end to reseed the constants
        polys = [_eval_keep(q, dur) for q in polys]
    return polys[len(w)][0]


def _eval_keep(poly, s):
    """Evaluate a coefficient list at s, returned as a fresh constant poly."""
    val = ZERO
    for c in reversed(poly):
        val = val * s + c
    return [val]


def target_direction(v, k, n):
    """Averaged adjoint direction of the oscillation profile.

    V = integral over [0,1] of Ad(p_s) a0 ds where p_s solves the drift-free
    system along v.  Each constant piece contributes the terminating series
    sum_r d^{r+1}/(r+1)! (ad a_w)^r a0 conjugated by the flow so far.
    """
    assert isinstance(v, PiecewiseControl), v
    assert v.total_duration() == 1, "profile must live on [0,1]"
    a0 = TruncSeries.letter(0, k, n)
    prefix = TruncSeries.one(k, n)
    total = TruncSeries.zero(k, n)
    for dur, vals in v.pieces:
        aw = TruncSeries.zero(k, n)
        for i, c in enumerate(vals, start=1):
            if c:
                aw = aw + TruncSeries.letter(i, k, n).scale(c)
        piece = TruncSeries.zero(k, n)
        term = a0
        r = 0
        while not term.is_zero():
            piece = piece + term.scale(Fraction(dur) ** (r + 1) / _fact(r + 1))
            term = aw * term - term * aw
            r += 1
        total = total + adjoint(prefix, piece)
        prefix = prefix * exp_trunc(aw.scale(dur))
    return total


def _fact(r):
    out = 1
    for i in range(2, r + 1):
        out *= i
    return out


def reflected_period(v, eps):
    """The two-phase control of one oscillation period, total length eps.

    Phase one rescales v to [0, eps/2] with amplitude 2/eps; phase two runs
    the reversed profile with negated values, so the drift-free parts of the
    two phases cancel exactly.
    """
    assert isinstance(v, PiecewiseControl), v
    assert v.total_duration() == 1, "profile must live on [0,1]"
    eps = Fraction(eps)
    assert eps > 0, eps
    half = eps / 2
    amp = 2 / eps
    fwd = [(d * half, tuple(amp * x for x in vals)) for d, vals in v.pieces]
    bwd = [(d * half, tuple(-amp * x for x in vals))
           for d, vals in reversed(v.pieces)]
    return PiecewiseControl(fwd + bwd, v.k)


def _max_abs_by_degree(x, n):
    """Largest |coefficient| per word degree 1..n."""
    out = {d: ZERO for d in range(1, n + 1)}
    for w, c in x.coeffs.items():
        d = len(w)
        if d >= 1 and abs(c) > out[d]:
            out[d] = abs(c)
    return out


def _fit_slope(pairs):
    """Least-squares slope of ln(err) against ln(eps); None if any err is 0."""
    pts = []
    for eps, err in pairs:
        if err == 0:
            return None
        pts.append((_ln(float(eps)), _ln(float(err))))
    mx = sum(x for x, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    sxx = sum((x - mx) ** 2 for x, _ in pts)
    if sxx == 0:
        return None
    sxy = sum((x - mx) * (y - my) for x, y in pts)
    return sxy / sxx


class ExperimentReport:
    """Error table of the fast-oscillation experiment."""

    __slots__ = ("k", "n", "time", "target", "rows", "slope_single", "slope_global")

    def __init__(self, k, n, time, target, rows, slope_single, slope_global):
        self.k = k
        self.n = n
        self.time = time
        self.target = target
        self.rows = tuple(rows)
        self.slope_single = slope_single
        self.slope_global = slope_global

    def json(self):
        return {
            "letters": self.k,
            "truncation": self.n,
            "time": str(self.time),
            "target": str(self.target),
            "rows": [
                {
                    "eps": str(eps),
                    "step_error": str(step),
                    "global_error": str(glob),
                    "per_degree": {str(d): str(e) for d, e in sorted(bydeg.items())},
                }
                for eps, step, glob, bydeg in self.rows
            ],
            "slope_single": self.slope_single,
            "slope_global": self.slope_global,
        }

    def csv(self):
        header = ["eps"] + ["err_deg%d" % d for d in range(1, self.n + 1)]
        header += ["slope_single", "slope_global"]
        lines = [",".join(header)]
        fmt = lambda s: "nan" if s is None else repr(s)
        for eps, _step, _glob, bydeg in self.rows:
            cells = [str(eps)] + [str(bydeg[d]) for d in range(1, self.n + 1)]
            cells += [fmt(self.slope_single), fmt(self.slope_global)]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def fast_osc_experiment(v, t, eps_list, k, n):
    """Reflected fast-oscillation approximation of t times the direction.

    For each eps the period control is concatenated t/eps times (which must
    be a whole number), the flow endpoint is computed exactly, and its log
    is compared against t * target_direction(v).  The single-step error
    compares one period's log against eps times the target.  Fitted log-log
    slopes are floats; errors themselves stay exact.
    """
    assert isinstance(v, PiecewiseControl), v
    t = Fraction(t)
    assert t > 0, t
    target = target_direction(v, k, n)
    rows = []
    step_pairs = []
    global_pairs = []
    for eps in eps_list:
        eps = Fraction(eps)
        reps = t / eps
        if reps.denominator != 1:
            raise DomainError("eps %s does not divide the horizon %s" % (eps, t))
        period = reflected_period(v, eps)
        step_flow = flow_endpoint(period, k, n)
        step_diff = step_flow.logchart - target.scale(eps)
        step_err = max((abs(c) for c in step_diff.coeffs.values()), default=ZERO)
        total_flow = flow_endpoint(period.repeat(int(reps)), k, n)
        glob_diff = total_flow.logchart - target.scale(t)
        glob_err = max((abs(c) for c in glob_diff.coeffs.values()), default=ZERO)
        rows.append((eps, step_err, glob_err, _max_abs_by_degree(glob_diff, n)))
        step_pairs.append((eps, step_err))
        global_pairs.append((eps, glob_err))
    return ExperimentReport(
        k, n, t, target, rows,
        _fit_slope(step_pairs), _fit_slope(global_pairs))
