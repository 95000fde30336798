"""Closed-form and fixed-point thermodynamics for the two benchmark models.

Everything here integrates against the standard Gaussian measure

    Dx = dx exp(-x^2/2) / sqrt(2*pi).

Chain (infinite-size quenched averages, per spin):

    f(T)  =  int Dx log 2 cosh beta*(J0 + J*x)            (log Z per spin)
    U(T)  = -J0 int Dx tanh beta*(J0 + J*x)
            - beta*J^2 int Dx sech^2 beta*(J0 + J*x)      (= -df/dbeta)
    U_min/N = -E|J_i|  with the exact Gaussian mean absolute value.

Sherrington-Kirkpatrick, replica-symmetric order parameters:

    m = int Dz tanh beta*(J*z*sqrt(q) + J0*m)
    q = int Dz tanh^2 beta*(J*z*sqrt(q) + J0*m)
    U/N = -(J0/2) m^2 - (beta*J^2/2)(1 - q^2)

Quadrature strategy: a fixed Gauss-Hermite rule handles every integrand
whose features are wider than the node spacing.  At low temperature the
tanh/sech^2 factors develop a feature of width 1/(beta*a) around the sign
change, which no fixed rule in z can resolve, so for beta*a > 1 the
integrals are rewritten with u = beta*(a*z + b): the sgn part is exact in
terms of the Gaussian tail and the localized remainder is integrated on a
fixed Gauss-Legendre panel in u.  Both branches agree to ~1e-12 where they
meet, and the low-T limits (q -> 1, U -> -sqrt(2/pi) at (J0,J)=(0,1)) come
out exact by construction.

All functions are pure; `QuadratureRule` instances are read-only and safe
to share across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.hermite import hermgauss
from numpy.polynomial.legendre import leggauss
from scipy.special import erfc

from .errors import (
    ConvergenceError,
    DegenerateDisorderError,
    DomainError,
    TemperatureMismatchError,
)
from .spin_systems import DisorderParams

_BETA_A_SPLIT = 1.0      # Gauss-Hermite below, u-substitution above
_U_PANEL_HALF = 20.0     # tanh(u)-sgn(u) and sech^2(u) are ~1e-17 by u=20
_U_PANEL_NODES = 400


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights integrating f against the Gaussian measure Dx."""

    nodes: np.ndarray
    weights: np.ndarray
    degree: int

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=np.float64)
        weights = np.array(self.weights, dtype=np.float64)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1-D arrays of equal length")
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1 (the measure is normalized)")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def expect(self, f) -> float:
        """E[f(Z)] for Z standard normal."""
        return float(self.weights @ f(self.nodes))


def gauss_hermite_rule(n: int = 101) -> QuadratureRule:
    """Gauss-Hermite rule rescaled to the standard normal measure.

    Exact for polynomials up to degree 2n-1.
    """
    if n < 2:
        raise ValueError("need at least 2 nodes")
    x, w = hermgauss(n)
    return QuadratureRule(nodes=np.sqrt(2.0) * x, weights=w / np.sqrt(np.pi), degree=2 * n - 1)


DEFAULT_RULE = gauss_hermite_rule(101)

_u_panel_cache: tuple[np.ndarray, np.ndarray] | None = None


def _u_panel():
    """Gauss-Legendre nodes/weights on (0, 20] for the localized u-integrals."""
    global _u_panel_cache
    if _u_panel_cache is None:
        x, w = leggauss(_U_PANEL_NODES)
        nodes = 0.5 * _U_PANEL_HALF * (x + 1.0)
        weights = 0.5 * _U_PANEL_HALF * w
        nodes.setflags(write=False)
        weights.setflags(write=False)
        _u_panel_cache = (nodes, weights)
    return _u_panel_cache


def erfcc(x):
    """Upper tail of the standard normal: int_x^inf dz exp(-z^2/2)/sqrt(2 pi)."""
    return 0.5 * erfc(np.asarray(x, dtype=np.float64) / np.sqrt(2.0))


def _phi(x):
    return np.exp(-0.5 * np.square(x)) / np.sqrt(2.0 * np.pi)


def _sech2(x):
    e = np.exp(-np.abs(x))
    s = 2.0 * e / (1.0 + e * e)
    return s * s


def _log2cosh(x):
    """log(2 cosh x) without overflow: |x| + log(1 + e^{-2|x|})."""
    a = np.abs(x)
    return a + np.log1p(np.exp(-2.0 * a))


def gaussian_mean_abs(mean: float, std: float) -> float:
    """E|X| for X ~ N(mean, std^2); reduces to |mean| at std = 0."""
    if std == 0.0:
        return abs(mean)
    r = mean / std
    return float(std * math.sqrt(2.0 / math.pi) * math.exp(-0.5 * r * r) + mean * (1.0 - 2.0 * erfcc(r)))


def _expect_tanh(beta: float, a: float, b: float, rule: QuadratureRule) -> float:
    """int Dz tanh(beta*(a z + b)) for a >= 0, robust for all beta."""
    if beta * a <= _BETA_A_SPLIT:
        return rule.expect(lambda z: np.tanh(beta * (a * z + b)))
    un, uw = _u_panel()
    zp = (un / beta - b) / a
    zm = (-un / beta - b) / a
    dev = np.tanh(un) - 1.0                     # tanh(u)-sgn(u) on u > 0
    base = 1.0 - 2.0 * float(erfcc(b / a))      # int Dz sgn(a z + b)
    corr = float(np.sum(uw * (_phi(zp) * dev - _phi(zm) * dev))) / (beta * a)
    return base + corr


def _expect_sech2(beta: float, a: float, b: float, rule: QuadratureRule) -> float:
    """int Dz sech^2(beta*(a z + b)) for a >= 0, robust for all beta."""
    if beta * a <= _BETA_A_SPLIT:
        return rule.expect(lambda z: _sech2(beta * (a * z + b)))
    un, uw = _u_panel()
    zp = (un / beta - b) / a
    zm = (-un / beta - b) / a
    sc = _sech2(un)
    return float(np.sum(uw * (_phi(zp) + _phi(zm)) * sc)) / (beta * a)


def _expect_tanh2(beta: float, a: float, b: float, rule: QuadratureRule) -> float:
    return 1.0 - _expect_sech2(beta, a, b, rule)


def _expect_log2cosh(beta: float, a: float, b: float, rule: QuadratureRule) -> float:
    """int Dz log 2 cosh(beta*(a z + b)), robust for all beta."""
    if beta * a <= _BETA_A_SPLIT:
        return rule.expect(lambda z: _log2cosh(beta * (a * z + b)))
    # |v| part has the exact Gaussian mean-absolute form; the soft remainder
    # log(1+e^{-2|v|}) is localized and handled on the u-panel.
    un, uw = _u_panel()
    zp = (un / beta - b) / a
    zm = (-un / beta - b) / a
    soft = np.log1p(np.exp(-2.0 * un))
    corr = float(np.sum(uw * (_phi(zp) + _phi(zm)) * soft)) / (beta * a)
    return beta * a * gaussian_mean_abs(b / a, 1.0) + corr


def chain_free_energy_density(T: float, params: DisorderParams, rule: QuadratureRule = DEFAULT_RULE) -> float:
    """log Z per spin of the chain: int Dx log 2 cosh beta*(J0 + J x)."""
    if T <= 0:
        raise DomainError("temperature must be positive")
    return _expect_log2cosh(1.0 / T, params.std, params.mean, rule)


def chain_internal_energy(T: float, params: DisorderParams, rule: QuadratureRule = DEFAULT_RULE) -> float:
    """Chain internal energy per spin at temperature T (equals -df/dbeta)."""
    if T <= 0:
        raise DomainError("temperature must be positive")
    beta = 1.0 / T
    j0, j = params.mean, params.std
    term1 = -j0 * _expect_tanh(beta, j, j0, rule) if j0 != 0.0 else 0.0
    term2 = -beta * j * j * _expect_sech2(beta, j, j0, rule) if j != 0.0 else 0.0
    return term1 + term2


def chain_ground_state_density(params: DisorderParams) -> float:
    """Ground-state energy per spin: -E|J_i| for Gaussian bonds."""
    if params.std == 0.0 and params.mean == 0.0:
        raise DegenerateDisorderError("J0 = J = 0 has no meaningful ground state")
    return -gaussian_mean_abs(params.mean, params.std)


@dataclass(frozen=True)
class FixedPointOptions:
    damping: float = 0.5
    tolerance: float = 1e-12
    max_iterations: int = 100_000

    def __post_init__(self):
        if not 0 < self.damping <= 1:
            raise ValueError("damping must lie in (0, 1]")
        if self.tolerance <= 0 or self.max_iterations < 1:
            raise ValueError("tolerance and max_iterations must be positive")


@dataclass(frozen=True)
class RSOrderParams:
    """Replica-symmetric (m, q) with the temperature they were solved at."""

    m: float
    q: float
    temperature: float
    residual: float
    iterations: int

    def __post_init__(self):
        if abs(self.m) > 1 + 1e-12 or not -1e-12 <= self.q <= 1 + 1e-12:
            raise ValueError("order parameters out of range: |m| <= 1, 0 <= q <= 1")
        if self.residual < 0:
            raise ValueError("residual must be nonnegative")


def sk_rs_fixed_point(
    T: float,
    params: DisorderParams,
    rule: QuadratureRule = DEFAULT_RULE,
    options: FixedPointOptions = FixedPointOptions(),
    initial: tuple[float, float] | None = None,
) -> RSOrderParams:
    """Solve the RS equations of state by damped fixed-point iteration.

    `initial` overrides the default starting point (0.5*sgn(J0), 0.5); the
    q component is floored away from the trivial root q = 0 so a warm start
    cannot get stuck on it when a nontrivial solution exists.
    """
    if T <= 0:
        raise DomainError("temperature must be positive")
    beta = 1.0 / T
    j0, j = params.mean, params.std
    if initial is None:
        m, q = 0.5 * np.sign(j0), 0.5
    else:
        m, q = initial[0], max(initial[1], 0.25)
    lam = options.damping
    defect = np.inf
    for it in range(1, options.max_iterations + 1):
        a = j * math.sqrt(max(q, 0.0))
        b = j0 * m
        fm = _expect_tanh(beta, a, b, rule)
        fq = _expect_tanh2(beta, a, b, rule)
        defect = max(abs(m - fm), abs(q - fq))
        if defect <= options.tolerance:
            return RSOrderParams(m=m, q=min(max(q, 0.0), 1.0), temperature=T,
                                 residual=defect, iterations=it)
        m = (1.0 - lam) * m + lam * fm
        q = (1.0 - lam) * q + lam * fq
    raise ConvergenceError(
        f"RS fixed point did not converge within {options.max_iterations} iterations "
        f"(last defect {defect:.3e})",
        m=m, q=q, residual=defect, iterations=options.max_iterations,
    )


def sk_internal_energy_density(T: float, params: DisorderParams, rs: RSOrderParams) -> float:
    """U/N = -(J0/2) m^2 - (beta J^2 / 2)(1 - q^2) at beta = 1/T."""
    if T <= 0:
        raise DomainError("temperature must be positive")
    if abs(rs.temperature - T) > 1e-12 * max(1.0, abs(T)):
        raise TemperatureMismatchError(
            f"order parameters solved at T = {rs.temperature}, requested T = {T}")
    beta = 1.0 / T
    j0, j = params.mean, params.std
    return -0.5 * j0 * rs.m**2 - 0.5 * beta * j * j * (1.0 - rs.q**2)


def sk_zero_temperature_magnetization(a: float) -> float:
    """Largest nonnegative root of m = 1 - 2 erfcc((J0/J) m) with a = sqrt(2/pi) J0/J.

    The trivial root m = 0 is the only one for a <= 1; above the critical
    point a = 1 the nontrivial root is found by bisection on (0, 1].
    """
    if a < 0:
        raise DomainError("a must be nonnegative")
    if a <= 1.0:
        return 0.0
    c = a * math.sqrt(math.pi / 2.0)    # = J0/J

    def g(m):
        return m - (1.0 - 2.0 * float(erfcc(c * m)))

    lo, hi = 1e-12, 1.0
    if g(lo) >= 0.0:
        return 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
