"""Schwarzian derivative, hyperbolically weighted norm, and invariance checks.

S_f = f'''/f' - (3/2)(f''/f')^2, computed from exact jets, never finite
differences.  The norm sup (1-|z|^2)^2 |S_f(z)| is estimated from below
by a boundary-aware grid plus golden-section polish; Mobius invariance
S_{T o f} = S_f and the reciprocal identity S_{1/f} = S_f are exposed as
residual checks since they are the sharpest cheap validation of any
Schwarzian implementation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EvaluationFailed, GftError, LocallyNonUnivalent
from .expressions import FunctionExpr, compose_mobius
from .numerics import golden_max

_TINY = 1e-13


def schwarzian(f: FunctionExpr, z):
    """S_f at z (scalar complex or complex array).

    Scalar input raises LocallyNonUnivalent where f'(z) = 0; array input
    NaN-masks those points.
    """
    jet = f.jet(z)
    scalar = np.ndim(z) == 0
    if scalar and abs(jet.v1) < _TINY:
        raise LocallyNonUnivalent(f"f'({z}) = 0 to tolerance")
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        w = jet.v2 / jet.v1
        s = jet.v3 / jet.v1 - 1.5 * w * w
    return complex(s) if scalar else s


def pre_schwarzian(f: FunctionExpr, z):
    """f''/f' at z; same scalar/array semantics as ``schwarzian``."""
    jet = f.jet(z)
    scalar = np.ndim(z) == 0
    if scalar and abs(jet.v1) < _TINY:
        raise LocallyNonUnivalent(f"f'({z}) = 0 to tolerance")
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        w = jet.v2 / jet.v1
    return complex(w) if scalar else w


def weighted_modulus(f: FunctionExpr, z):
    """(1 - |z|^2)^2 |S_f(z)|, the integrand of the Schwarzian norm."""
    s = schwarzian(f, z)
    weight = (1.0 - np.abs(z) ** 2) ** 2
    out = weight * np.abs(s)
    return float(out) if np.ndim(z) == 0 else out


@dataclass(frozen=True)
class NormEstimate:
    lower_bound: float
    argmax: complex
    evaluated: int
    skipped: int


def schwarzian_norm(
    f: FunctionExpr,
    rings: int = 64,
    points_per_ring: int = 512,
    refine_iters: int = 3,
) -> NormEstimate:
    """Grid + polish lower bound for sup (1-|z|^2)^2 |S_f|.

    The weight kills the boundary, so unlike the membership grids the
    radii here are uniform on (0, 1); the polish alternates golden-section
    sweeps in radius and angle around the best grid point.
    """
    if rings < 8 or points_per_ring < 64:
        raise ValueError("need rings >= 8 and points_per_ring >= 64")
    r_lo, r_hi = 1e-4, 1.0 - 1e-4
    radii = np.linspace(r_lo, r_hi, rings)
    angles = 2.0 * np.pi * np.arange(points_per_ring) / points_per_ring
    z = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    for s in f.singular_points:
        z = z[np.abs(z - complex(s)) >= f.exclusion_radius]
    vals = weighted_modulus(f, z)
    finite = np.isfinite(vals)
    skipped = int(vals.size - np.count_nonzero(finite))
    if skipped > 0.01 * vals.size:
        raise EvaluationFailed(
            f"{skipped} of {vals.size} norm grid points failed to evaluate (> 1%)"
        )
    i = int(np.argmax(np.where(finite, vals, -np.inf)))
    best, r_w, th_w = float(vals[i]), float(np.abs(z[i])), float(np.angle(z[i]))

    def probe_r(r):
        return _safe_weighted(f, r * np.exp(1j * th_w))

    def probe_th(t):
        return _safe_weighted(f, r_w * np.exp(1j * t))

    dr = (r_hi - r_lo) / max(rings - 1, 1)
    dth = 2.0 * np.pi / points_per_ring
    for _ in range(refine_iters):
        r, v = golden_max(probe_r, max(r_lo, r_w - dr), min(r_hi, r_w + dr))
        if v > best:
            best, r_w = v, r
        t, v = golden_max(probe_th, th_w - dth, th_w + dth)
        if v > best:
            best, th_w = v, t
        dr *= 0.25
        dth *= 0.25
    return NormEstimate(
        lower_bound=best,
        argmax=complex(r_w * np.exp(1j * th_w)),
        evaluated=int(vals.size - skipped),
        skipped=skipped,
    )


def _safe_weighted(f, z) -> float:
    try:
        v = weighted_modulus(f, complex(z))
    except GftError:
        return -np.inf
    return v if np.isfinite(v) else -np.inf


@dataclass(frozen=True)
class InvarianceCheck:
    mobius_residual: float
    reciprocal_residual: float
    n_samples: int

    @property
    def max_residual(self) -> float:
        return max(self.mobius_residual, self.reciprocal_residual)


def invariance_residuals(f: FunctionExpr, mobius, samples) -> InvarianceCheck:
    """Residuals of S_{T o f} = S_f and S_{1/f} = S_f on given samples.

    ``mobius`` is the coefficient tuple (a, b, c, d) of T(w) = (aw+b)/(cw+d).
    Samples must avoid singularities of f, T o f and 1/f; a non-finite
    Schwarzian at any sample raises EvaluationFailed.
    """
    a, b, c, d = mobius
    zs = np.asarray(samples, dtype=complex)
    s0 = schwarzian(f, zs)
    s1 = schwarzian(compose_mobius(f, a, b, c, d), zs)
    s2 = schwarzian(1.0 / f, zs)
    if not (np.all(np.isfinite(s0)) and np.all(np.isfinite(s1)) and np.all(np.isfinite(s2))):
        raise EvaluationFailed("invariance samples hit a singularity")
    return InvarianceCheck(
        mobius_residual=float(np.max(np.abs(s1 - s0))),
        reciprocal_residual=float(np.max(np.abs(s2 - s0))),
        n_samples=int(zs.size),
    )
