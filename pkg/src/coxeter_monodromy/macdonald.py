"""Gaussian moments of the discriminant and its maximum on the unit quadric.

Coordinates: ``q(x) = x^T gram x`` and ``gram = L L^T``.  Substituting
``x = L^-T u`` turns ``q`` into ``|u|^2`` and each form ``l`` into
``u -> (L^-1 l) . u``, which is where both the quadrature and the optimizer
work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial.hermite import hermgauss
from scipy.special import gammaln

from .coxeter import RootSystemData, parse_type, root_system

__all__ = [
    "MacdonaldConstants",
    "GammaPoleError",
    "IntegralReport",
    "MaxDeltaResult",
    "macdonald_constants",
    "macdonald_rhs",
    "macdonald_lhs_quadrature",
    "integral_report",
    "max_delta_closed_form",
    "max_delta_optimize",
    "sphere_norm",
]


class GammaPoleError(ValueError):
    """``s`` hits (or passes) a pole of one of the Gamma factors."""


def _root_data(t) -> RootSystemData:
    if isinstance(t, RootSystemData):
        return t
    return root_system(parse_type(t) if isinstance(t, str) else t)


@dataclass(frozen=True)
class MacdonaldConstants:
    kappa: Fraction | float
    discr_q: Fraction | float
    degrees: tuple[int, ...]
    N: int
    n: int


def macdonald_constants(t) -> MacdonaldConstants:
    r = _root_data(t)
    return MacdonaldConstants(r.kappa(), r.discr_q(), tuple(r.type.degrees()), r.num_hyperplanes, r.rank)


def _log_rhs(c: MacdonaldConstants, s: float) -> float:
    if s <= -1 / max(c.degrees):
        raise GammaPoleError(f"s = {s} must exceed -1/{max(c.degrees)}")
    log = 0.5 * c.n * math.log(math.pi) + s * math.log(c.kappa) - 0.5 * math.log(c.discr_q)
    for d in c.degrees:
        log += gammaln(d * s + 1) - gammaln(s + 1)
    return float(log)


def macdonald_rhs(t, s: float) -> float:
    """``pi^(n/2) kappa^s prod_i Gamma(d_i s + 1)/Gamma(s + 1) / sqrt(discr q)``."""
    return math.exp(_log_rhs(macdonald_constants(t), s))


def _whitened_forms(r: RootSystemData) -> np.ndarray:
    """Rows ``L^-1 l_i``: the forms in coordinates where ``q = |u|^2``."""
    chol = np.linalg.cholesky(r.gram_float())
    return np.linalg.solve(chol, r.forms_float().T).T


def macdonald_lhs_quadrature(t, s: int, *, margin: int = 4) -> float:
    """``int Delta^s exp(-q)`` by tensor Gauss-Hermite quadrature, exact up
    to roundoff since the integrand is a polynomial times the weight."""
    if isinstance(s, bool) or not isinstance(s, (int, np.integer)) or s < 0:
        raise ValueError("quadrature needs a nonnegative integer s")
    r = _root_data(t)
    if r.rank > 2:
        raise ValueError("quadrature is limited to rank <= 2")
    m = _whitened_forms(r)
    nodes, weights = hermgauss(r.num_hyperplanes * s + 1 + margin)
    grids = np.meshgrid(*([nodes] * r.rank), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    w = np.ones(len(pts))
    for g in np.meshgrid(*([weights] * r.rank), indexing="ij"):
        w = w * g.ravel()
    delta = np.prod((pts @ m.T) ** 2, axis=1)
    return float(np.sum(w * delta**s)) / math.sqrt(float(r.discr_q()))


@dataclass(frozen=True)
class IntegralReport:
    type: str
    s: int
    lhs: float
    rhs: float

    @property
    def rel_err(self) -> float:
        return abs(self.lhs - self.rhs) / abs(self.rhs)

    def to_dict(self) -> dict:
        return {"type": self.type, "s": self.s, "lhs": self.lhs, "rhs": self.rhs, "rel_err": self.rel_err}


def integral_report(t, s: int) -> IntegralReport:
    r = _root_data(t)
    return IntegralReport(r.type.name, s, macdonald_lhs_quadrature(r, s), macdonald_rhs(r, s))


def max_delta_closed_form(t):
    """``kappa prod d_i^d_i / N^N``; a Fraction for rational realizations."""
    c = macdonald_constants(t)
    num = 1
    for d in c.degrees:
        num *= d**d
    if isinstance(c.kappa, Fraction):
        return c.kappa * Fraction(num, c.N**c.N)
    return c.kappa * num / c.N**c.N


@dataclass(frozen=True)
class MaxDeltaResult:
    type: str
    restarts: int
    seed: int
    value: float
    closed_form: float
    argmax: tuple[float, ...]

    @property
    def rel_err(self) -> float:
        return abs(self.value - self.closed_form) / self.closed_form

    def to_dict(self) -> dict:
        return {
            "type": self.type,
            "restarts": self.restarts,
            "seed": self.seed,
            "value": self.value,
            "closed_form": self.closed_form,
            "rel_err": self.rel_err,
            "argmax": list(self.argmax),
        }


def _log_delta(m: np.ndarray, u: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return 2 * np.sum(np.log(np.abs(u @ m.T)), axis=-1)


def max_delta_optimize(t, restarts: int = 100, *, seed: int = 0, max_iter: int = 5000) -> MaxDeltaResult:
    """Projected gradient ascent of ``log Delta`` on ``{q = 1}`` from
    ``restarts`` seeded uniform starting points, with backtracking."""
    r = _root_data(t)
    m = _whitened_forms(r)
    rng = np.random.default_rng(seed)
    u = rng.standard_normal((restarts, r.rank))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    f = _log_delta(m, u)
    eta = np.full(restarts, 0.1)
    active = np.isfinite(f)
    for _ in range(max_iter):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        ua = u[idx]
        grad = 2 * np.sum(m[None, :, :] / (ua @ m.T)[:, :, None], axis=1)
        grad -= np.sum(grad * ua, axis=1, keepdims=True) * ua
        trial = ua + eta[idx, None] * grad
        trial /= np.linalg.norm(trial, axis=1, keepdims=True)
        ft = _log_delta(m, trial)
        better = ft > f[idx]
        step = np.linalg.norm(trial - ua, axis=1)
        acc, rej = idx[better], idx[~better]
        u[acc], f[acc] = trial[better], ft[better]
        eta[acc] *= 2
        eta[rej] /= 2
        done = step < 1e-12 * np.maximum(1, np.linalg.norm(ua, axis=1))
        active[idx[done]] = False
    best = int(np.argmax(f))
    # x = L^-T u
    chol = np.linalg.cholesky(r.gram_float())
    x = np.linalg.solve(chol.T, u[best])
    return MaxDeltaResult(
        r.type.name, restarts, seed, float(math.exp(f[best])), float(max_delta_closed_form(r)), tuple(x.tolist())
    )


def sphere_norm(t, s: float) -> float:
    """``(mean of Delta^s over {q = 1})^(1/s)`` from the closed-form
    integral; nondecreasing in ``s`` with limit the maximum of ``Delta``."""
    c = macdonald_constants(t)
    if s <= 0:
        raise ValueError("s must be positive")
    # I(s) = Gamma(Ns + n/2)/2 * sphere integral; divide by the s = 0 case
    log_i = _log_rhs(c, s) - 0.5 * c.n * math.log(math.pi) + 0.5 * math.log(c.discr_q)
    log_mean = log_i - gammaln(c.N * s + c.n / 2) + gammaln(c.n / 2)
    return math.exp(log_mean / s)
