"""Order-3 Taylor jets over the complex numbers.

A Jet3 carries (f, f', f'', f''') at a point and propagates all four
components exactly through arithmetic and elementary functions, so
Schwarzian derivatives and convexity functionals come out at full
double precision with no finite-difference noise.

Components may be python complex scalars or numpy complex arrays.
Scalar evaluation raises typed errors at singular inputs; array
evaluation NaN-masks the offending entries instead, so grid sweeps can
skip isolated bad points and count them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BranchPointOrPole, DivisionAtZero

# Magnitudes below this are treated as exact singular hits.  Chosen a
# few decades above double eps so that 1/(z-z0) style factors computed
# *near* a pole stay legal (they are merely large), while evaluation
# *at* the pole is refused.
SINGULAR_TOL = 1e-13

_CNAN = complex("nan+nanj")


def _is_scalar(x) -> bool:
    return np.ndim(x) == 0


def _guard(values, tol, exc, msg):
    """Return a bad-point mask for array input; raise for scalar input.

    ``None`` means nothing to patch.
    """
    bad = np.abs(values) < tol
    if _is_scalar(bad):
        if bad:
            raise exc(msg)
        return None
    return bad if bad.any() else None


@dataclass(frozen=True)
class Jet3:
    """Value and first three derivatives of a map at one or many points."""

    v0: object
    v1: object
    v2: object
    v3: object

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        o = _as_jet(other)
        return Jet3(self.v0 + o.v0, self.v1 + o.v1, self.v2 + o.v2, self.v3 + o.v3)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_jet(other)
        return Jet3(self.v0 - o.v0, self.v1 - o.v1, self.v2 - o.v2, self.v3 - o.v3)

    def __rsub__(self, other):
        return _as_jet(other).__sub__(self)

    def __neg__(self):
        return Jet3(-self.v0, -self.v1, -self.v2, -self.v3)

    def __mul__(self, other):
        a, b = self, _as_jet(other)
        # Leibniz up to order 3.
        return Jet3(
            a.v0 * b.v0,
            a.v1 * b.v0 + a.v0 * b.v1,
            a.v2 * b.v0 + 2.0 * a.v1 * b.v1 + a.v0 * b.v2,
            a.v3 * b.v0 + 3.0 * a.v2 * b.v1 + 3.0 * a.v1 * b.v2 + a.v0 * b.v3,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * _as_jet(other).reciprocal()

    def __rtruediv__(self, other):
        return _as_jet(other) * self.reciprocal()

    def reciprocal(self) -> "Jet3":
        """Jet of 1/f; refuses f(z) = 0."""
        mask = _guard(self.v0, SINGULAR_TOL, DivisionAtZero, "division by zero value")
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            w = 1.0 / np.where(mask, 1.0, self.v0) if mask is not None else 1.0 / self.v0
            g1 = -w * w
            g2 = 2.0 * w * w * w
            g3 = -6.0 * w * w * w * w
            out = _compose(self, w, g1, g2, g3)
        return _apply_mask(out, mask)


def _as_jet(x) -> Jet3:
    if isinstance(x, Jet3):
        return x
    # Plain numbers come in from expression constants and scalar algebra.
    return Jet3(complex(x), 0.0, 0.0, 0.0)


def variable(z) -> Jet3:
    """Seed jet for the identity map at z (scalar or complex array)."""
    if _is_scalar(z):
        return Jet3(complex(z), 1.0, 0.0, 0.0)
    z = np.asarray(z, dtype=complex)
    return Jet3(z, np.ones_like(z), np.zeros_like(z), np.zeros_like(z))


def _compose(a: Jet3, g0, g1, g2, g3) -> Jet3:
    """Chain rule: outer derivatives g_k at a.v0, inner jet a."""
    a1, a2, a3 = a.v1, a.v2, a.v3
    return Jet3(
        g0,
        g1 * a1,
        g1 * a2 + g2 * a1 * a1,
        g1 * a3 + 3.0 * g2 * a1 * a2 + g3 * a1 * a1 * a1,
    )


def _apply_mask(jet: Jet3, mask) -> Jet3:
    if mask is None:
        return jet
    return Jet3(
        np.where(mask, _CNAN, jet.v0),
        np.where(mask, _CNAN, jet.v1),
        np.where(mask, _CNAN, jet.v2),
        np.where(mask, _CNAN, jet.v3),
    )


# -- elementary functions ------------------------------------------------


def jet_exp(a: Jet3) -> Jet3:
    e = np.exp(a.v0)
    return _compose(a, e, e, e, e)


def jet_log(a: Jet3) -> Jet3:
    """Principal branch; refuses the branch point f(z) = 0."""
    mask = _guard(a.v0, SINGULAR_TOL, BranchPointOrPole, "log at zero")
    with np.errstate(divide="ignore", invalid="ignore"):
        x = np.where(mask, 1.0, a.v0) if mask is not None else a.v0
        w = 1.0 / x
        out = _compose(a, np.log(x), w, -w * w, 2.0 * w * w * w)
    return _apply_mask(out, mask)


def jet_sqrt(a: Jet3) -> Jet3:
    """Principal branch; refuses the branch point f(z) = 0."""
    mask = _guard(a.v0, SINGULAR_TOL, BranchPointOrPole, "sqrt at zero")
    with np.errstate(divide="ignore", invalid="ignore"):
        x = np.where(mask, 1.0, a.v0) if mask is not None else a.v0
        s = np.sqrt(x)
        s3 = s * s * s
        out = _compose(a, s, 0.5 / s, -0.25 / s3, 0.375 / (s3 * s * s))
    return _apply_mask(out, mask)


def jet_sin(a: Jet3) -> Jet3:
    s, c = np.sin(a.v0), np.cos(a.v0)
    return _compose(a, s, c, -s, -c)


def jet_cos(a: Jet3) -> Jet3:
    s, c = np.sin(a.v0), np.cos(a.v0)
    return _compose(a, c, -s, -c, s)


def jet_tan(a: Jet3) -> Jet3:
    mask = _guard(np.cos(a.v0), SINGULAR_TOL, BranchPointOrPole, "tan at a pole")
    with np.errstate(invalid="ignore", over="ignore"):
        t = np.tan(a.v0)
        d1 = 1.0 + t * t
        out = _compose(a, t, d1, 2.0 * t * d1, d1 * (2.0 + 6.0 * t * t))
    return _apply_mask(out, mask)


def jet_cot(a: Jet3) -> Jet3:
    mask = _guard(np.sin(a.v0), SINGULAR_TOL, BranchPointOrPole, "cot at a pole")
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        s = np.where(mask, 1.0, np.sin(a.v0)) if mask is not None else np.sin(a.v0)
        c = np.cos(a.v0) / s
        d1 = -(1.0 + c * c)
        out = _compose(a, c, d1, 2.0 * c * (1.0 + c * c), d1 * (2.0 + 6.0 * c * c))
    return _apply_mask(out, mask)


def jet_pow(a: Jet3, exponent: float) -> Jet3:
    """f^c for a real constant c.

    Integer exponents use repeated multiplication (no branch cut and legal
    at f = 0 when c >= 0); anything else is the principal power, which
    refuses f(z) = 0.
    """
    c = float(exponent)
    if c.is_integer():
        return _int_pow(a, int(c))
    mask = _guard(a.v0, SINGULAR_TOL, BranchPointOrPole, "non-integer power at zero")
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        x = np.where(mask, 1.0, a.v0) if mask is not None else a.v0
        g0 = np.power(x, c)
        g1 = c * g0 / x
        g2 = (c - 1.0) * g1 / x
        g3 = (c - 2.0) * g2 / x
        out = _compose(a, g0, g1, g2, g3)
    return _apply_mask(out, mask)


def _int_pow(a: Jet3, n: int) -> Jet3:
    if n < 0:
        return _int_pow(a, -n).reciprocal()
    result = _as_jet(1.0)
    base = a
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


ELEMENTARY = {
    "exp": jet_exp,
    "log": jet_log,
    "sqrt": jet_sqrt,
    "sin": jet_sin,
    "cos": jet_cos,
    "tan": jet_tan,
    "cot": jet_cot,
}
