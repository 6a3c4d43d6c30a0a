"""The positivity class route: y'' + q y = 0 on [0, 1).

A continuous q >= 0 belongs to the class of order alpha when the base
solution (y(0) = 0, y'(0) = 1) stays positive on (0, 1) and its
logarithmic slope y'/y keeps a boundary limit >= alpha.  The limit is
never read off at a single point: it is Richardson-extrapolated along
x_k = 1 - 2^-k, which converges because y'/y has an expansion in powers
of (1 - x) there.

Everything downstream (Schwarzian sufficiency, sharpness probes) reduces
to this one ODE, so the integrator settings here are deliberately tight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad, solve_ivp

from .errors import (
    ExtrapolationDiverged,
    NonnegativityViolated,
    QuadratureFailed,
    StepSizeUnderflow,
    TargetOutOfRange,
)
from .expressions import FunctionExpr, parse
from .numerics import bisect, richardson

_NEG_TOL = -1e-12  # roundoff allowance before declaring q negative


@dataclass(frozen=True)
class QFunction:
    """Continuous coefficient q >= 0 on [0, 1); constant, expression, or samples.

    Calls validate nonnegativity on every evaluated batch: a value below
    -1e-12 raises NonnegativityViolated, values inside the roundoff band
    clamp to zero.
    """

    kind: str
    label: str
    _fn: object = field(repr=False, compare=False)

    @classmethod
    def constant(cls, c: float) -> "QFunction":
        c = float(c)
        if c < 0.0:
            raise NonnegativityViolated(f"constant q = {c} < 0")
        return cls("constant", repr(c), lambda x: np.full_like(np.asarray(x, float), c))

    @classmethod
    def from_expression(cls, expr) -> "QFunction":
        e = expr if isinstance(expr, FunctionExpr) else parse(str(expr), variable="x")
        if e.variable != "x":
            raise ValueError("coefficient expressions use the variable x")

        def fn(x):
            return np.real(e.value(np.asarray(x, float).astype(complex)))

        return cls("expression", str(e), fn)

    @classmethod
    def from_samples(cls, xs, values) -> "QFunction":
        xs = np.asarray(xs, dtype=float)
        vs = np.asarray(values, dtype=float)
        if xs.ndim != 1 or xs.shape != vs.shape or xs.size < 2:
            raise ValueError("need matching 1-d sample arrays with >= 2 points")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("sample abscissae must be strictly increasing")
        if vs.min() < _NEG_TOL:
            raise NonnegativityViolated(f"sampled q dips to {vs.min()}")
        label = f"samples[{xs.size}] on [{xs[0]:g}, {xs[-1]:g}]"
        return cls("samples", label, lambda x: np.interp(np.asarray(x, float), xs, vs))

    def __call__(self, x):
        v = self._fn(x)
        vmin = float(np.min(v))
        if vmin < _NEG_TOL:
            raise NonnegativityViolated(f"q({x if np.ndim(x) == 0 else '...'}) = {vmin} < 0")
        v = np.maximum(v, 0.0)
        return float(v) if np.ndim(x) == 0 else v


@dataclass(frozen=True)
class OdeSolution:
    """Dense base solution of y'' + q y = 0, y(0) = 0, y'(0) = 1."""

    nodes: np.ndarray
    y: np.ndarray
    yp: np.ndarray
    eps_end: float
    rel_tol: float
    n_rhs: int
    dense: object = field(repr=False, compare=False)

    def at(self, x):
        """(y, y') anywhere in [0, 1 - eps_end], from the dense interpolant."""
        out = self.dense(np.asarray(x, dtype=float))
        if np.ndim(x) == 0:
            return float(out[0]), float(out[1])
        return out[0], out[1]

    def log_slope(self, x):
        y, yp = self.at(x)
        return yp / y


def integrate_ivp(
    q: QFunction,
    eps_end: float = 1e-6,
    rel_tol: float = 1e-10,
    max_step: float = np.inf,
) -> OdeSolution:
    """Integrate the base solution out to x = 1 - eps_end.

    Fixed reporting nodes (>= 512, geometrically clustered at the right
    end) make downstream scans reproducible; the dense interpolant covers
    everything in between.  Cap ``max_step`` when downstream math
    differentiates the dense output (the free interpolant loses accuracy
    on very long steps).
    """
    if not (1e-8 <= eps_end <= 1e-2):
        raise ValueError(f"eps_end must lie in [1e-8, 1e-2], got {eps_end}")
    if rel_tol > 1e-8:
        raise ValueError(f"rel_tol must be <= 1e-8, got {rel_tol}")
    x_end = 1.0 - eps_end
    base = np.linspace(0.0, x_end, 385)
    tail = 1.0 - np.geomspace(0.5, eps_end, 161)
    nodes = np.unique(np.concatenate([base, tail]))

    def rhs(x, s):
        return (s[1], -q(x) * s[0])

    sol = solve_ivp(
        rhs,
        (0.0, x_end),
        [0.0, 1.0],
        method="DOP853",
        rtol=rel_tol,
        atol=1e-14,
        dense_output=True,
        t_eval=nodes,
        max_step=max_step,
    )
    if not sol.success:
        raise StepSizeUnderflow(f"integrator stopped: {sol.message}")
    return OdeSolution(
        nodes=sol.t,
        y=sol.y[0],
        yp=sol.y[1],
        eps_end=eps_end,
        rel_tol=rel_tol,
        n_rhs=int(sol.nfev),
        dense=sol.sol,
    )


@dataclass(frozen=True)
class PalphaVerdict:
    alpha: float
    member: bool
    positive_on_01: bool
    first_zero: object  # float or None
    limit_estimate: float
    extrapolants: tuple
    raw_tail: tuple
    eps_end: float
    tol: float

    def member_at(self, alpha: float) -> bool:
        return self.positive_on_01 and self.limit_estimate >= alpha - self.tol


_LADDER_SETTLE = 1e-5


def check_palpha(
    q: QFunction,
    alpha: float,
    eps_end: float = 2.0**-21,
    rel_tol: float = 1e-10,
    tol: float = 1e-6,
) -> PalphaVerdict:
    """Membership verdict for the positivity class of order alpha.

    Positivity is scanned on the reporting nodes and the first zero (if
    any) is bisected out of the dense solution.  The boundary limit of
    y'/y is extrapolated from the ladder x_k = 1 - 2^-k, k = 7..20 (or as
    far as eps_end allows); ExtrapolationDiverged carries the raw tail if
    the last three extrapolants disagree beyond 1e-5.
    """
    if not (0.0 <= alpha < 1.0):
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    sol = integrate_ivp(q, eps_end=eps_end, rel_tol=rel_tol)

    first_zero = None
    inner = sol.nodes[1:]
    ys = sol.y[1:]
    bad = np.nonzero(ys <= 0.0)[0]
    if bad.size:
        i = int(bad[0])
        lo = sol.nodes[i]  # ys index i corresponds to nodes index i+1
        hi = inner[i]
        first_zero = bisect(lambda x: sol.at(x)[0], lo, hi, xtol=1e-12)

    positive = first_zero is None
    limit = math.nan
    extrapolants = ()
    raw = ()
    if positive:
        k_max = min(20, int(math.floor(-math.log2(eps_end))) - 1)
        ks = np.arange(7, k_max + 1)
        xs = 1.0 - np.power(2.0, -ks.astype(float))
        raw = tuple(float(sol.log_slope(x)) for x in xs)
        diag = richardson(raw, ratio=2.0)
        extrapolants = tuple(float(d) for d in diag)
        if len(diag) < 3 or not (
            abs(diag[-1] - diag[-2]) <= _LADDER_SETTLE
            and abs(diag[-2] - diag[-3]) <= _LADDER_SETTLE
        ):
            raise ExtrapolationDiverged(
                "boundary limit of y'/y did not settle to 1e-5", tail=raw[-5:]
            )
        limit = float(diag[-1])

    member = positive and limit >= alpha - tol
    return PalphaVerdict(
        alpha=alpha,
        member=member,
        positive_on_01=positive,
        first_zero=first_zero,
        limit_estimate=limit,
        extrapolants=extrapolants,
        raw_tail=raw,
        eps_end=eps_end,
        tol=tol,
    )


def integrate_q(q: QFunction, abs_tol: float = 1e-10) -> float:
    """Integral of q over [0, 1), adaptive with geometric end segments.

    [0, 1/2] in one adaptive pass, then segments [1-2^-k, 1-2^-(k-1)]
    marching toward 1 until two consecutive segments have decayed below
    the cutoff; a single small segment is not enough, because weights
    like (n+1) x^n hide their mass many halvings past 1/2.  Raises
    QuadratureFailed if the segments have not decayed by k = 60.
    """
    total, _ = quad(q, 0.0, 0.5, epsabs=abs_tol / 10.0, epsrel=1e-12, limit=200)
    cutoff = max(abs_tol / 10.0, 1e-16)
    prev = math.inf
    for k in range(2, 61):
        a, b = 1.0 - 2.0 ** -(k - 1), 1.0 - 2.0**-k
        seg, _ = quad(q, a, b, epsabs=cutoff / 4.0, epsrel=1e-12, limit=200)
        total += seg
        if abs(seg) < cutoff and prev < cutoff and abs(seg) <= prev:
            return float(total)
        prev = abs(seg)
    raise QuadratureFailed("end segments of the q integral did not decay by k = 60")


@dataclass(frozen=True)
class IntegralCheck:
    integral: float
    bound: float
    satisfied: bool
    implied_order: float


def integral_criterion(q: QFunction, c: float, abs_tol: float = 1e-10) -> IntegralCheck:
    """Sufficient condition: integral of q <= c (c <= 1) puts q in every
    positivity class of order alpha <= 1 - c."""
    c = float(c)
    if not (0.0 <= c <= 1.0):
        raise ValueError(f"the bound c must lie in [0, 1], got {c}")
    total = integrate_q(q, abs_tol=abs_tol)
    return IntegralCheck(
        integral=total,
        bound=c,
        satisfied=bool(total <= c + 1e-10),
        implied_order=1.0 - c,
    )


def constant_solver(target_limit: float) -> float:
    """The constant c whose base solution sin(sqrt(c) x)/sqrt(c) has
    boundary log-slope exactly target_limit: solves sqrt(c) cot(sqrt(c)) =
    target_limit on (0, pi/2)."""
    L = float(target_limit)
    if not (0.0 < L < 1.0):
        raise TargetOutOfRange(f"target limit must lie in (0, 1), got {L}")
    t = bisect(
        lambda t: t / math.tan(t) - L, 1e-9, math.pi / 2.0 - 1e-12, xtol=1e-15
    )
    return t * t


@dataclass(frozen=True)
class SharpnessResult:
    """Search for a convexity breakdown point of the monomial coefficient
    q(x) = (1-beta)(n+1) x^n.

    ``found`` reports whether some x0 in the integration span had
    x0 y'(x0)/y(x0) <= beta (equivalently, reconstructed convexity value
    1 - 2 x y'/y >= 1 - 2 beta); the infimum diagnostics are always
    recorded.  The integral of q equals 1 - beta exactly, so the
    boundary limit of y'/y sits slightly *above* beta for any finite n
    and tightens like 1/n — callers should expect found=False for
    moderate n and use min_ratio to see how close the construction gets.
    """

    n: int
    beta: float
    q: QFunction
    found: bool
    x0: object  # float or None
    ratio_at_x0: object
    convexity_value: object
    min_ratio: float
    argmin_x: float
    limit_estimate: float
    eps_end: float


def sharpness_construct(
    n: int, beta: float, eps_end: float = 1e-6, rel_tol: float = 1e-10
) -> SharpnessResult:
    if n < 1 or int(n) != n:
        raise ValueError(f"n must be a positive integer, got {n}")
    if not (0.0 <= beta < 1.0):
        raise ValueError(f"beta must lie in [0, 1), got {beta}")
    coeff = (1.0 - beta) * (n + 1)
    q = QFunction.from_expression(f"{coeff!r}*x^{int(n)}")
    sol = integrate_ivp(q, eps_end=eps_end, rel_tol=rel_tol)

    xs = sol.nodes[1:]
    ys, yps = sol.y[1:], sol.yp[1:]
    stop = np.nonzero(ys <= 0.0)[0]
    if stop.size:  # ratio plunges to -inf before the zero; keep the prefix
        xs, ys, yps = xs[: stop[0]], ys[: stop[0]], yps[: stop[0]]
    ratios = xs * yps / ys
    i_min = int(np.argmin(ratios))
    hits = np.nonzero(ratios <= beta)[0]

    found = hits.size > 0 or stop.size > 0
    if hits.size:
        j = int(hits[0])
        x0, rat = float(xs[j]), float(ratios[j])
    elif stop.size:
        # y hit zero: the ratio crosses every level on the way down
        lo = xs[-1] if xs.size else sol.nodes[0]
        hi = sol.nodes[int(stop[0]) + 1]
        x0 = float(
            bisect(lambda x: x * sol.log_slope(x) - beta, lo, hi, xtol=1e-12)
        )
        rat = float(x0 * sol.log_slope(x0))
    else:
        x0, rat = None, None

    # boundary limit for the diagnostics; tolerate a non-settling ladder
    try:
        limit = check_palpha(q, 0.0, rel_tol=rel_tol).limit_estimate
    except ExtrapolationDiverged:
        limit = math.nan

    return SharpnessResult(
        n=int(n),
        beta=float(beta),
        q=q,
        found=bool(found),
        x0=x0,
        ratio_at_x0=rat,
        convexity_value=None if rat is None else 1.0 - 2.0 * rat,
        min_ratio=float(ratios[i_min]) if ratios.size else math.nan,
        argmin_x=float(xs[i_min]) if ratios.size else math.nan,
        limit_estimate=limit,
        eps_end=eps_end,
    )
