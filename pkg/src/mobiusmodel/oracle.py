"""Brute-force invariance checker over the explicit basis of the model space.

Nothing here uses the classification theorems: the basis of Q_theta is
written down, composed exactly with the symbol, and span membership is
decided by sampled least squares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from .blaschke import FiniteBlaschkeProduct
from .errors import ConditioningError, DegeneracyError, DomainError
from .numerics import DEFAULT, ToleranceConfig, least_squares_residual
from .symbols import Constant, SelfMap, matrix

INNER_RADIUS = 0.25
OUTER_RADIUS = 0.5
RING_OFFSET = 0.1
POLE_CLEARANCE = 1e-6
MAX_RETRIES = 3


def _trim(coeffs, cfg: ToleranceConfig) -> np.ndarray:
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0:
        return np.zeros(1, dtype=complex)
    keep = len(c)
    while keep > 1 and abs(c[keep - 1]) <= cfg.eq_tol * scale:
        keep -= 1
    return c[:keep].copy()


@dataclass(eq=False)
class RationalFunction:
    """numerator / denominator with ascending complex coefficients."""

    numerator: np.ndarray
    denominator: np.ndarray
    cfg: ToleranceConfig = field(default=DEFAULT, repr=False)

    def __post_init__(self):
        self.numerator = _trim(self.numerator, self.cfg)
        self.denominator = _trim(self.denominator, self.cfg)
        if not np.any(self.denominator):
            raise DegeneracyError("denominator is identically zero")

    @property
    def degree(self) -> int:
        return max(len(self.numerator), len(self.denominator)) - 1

    def poles(self) -> np.ndarray:
        if len(self.denominator) < 2:
            return np.zeros(0, dtype=complex)
        return P.polyroots(self.denominator)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return P.polyval(z, self.numerator) / P.polyval(z, self.denominator)

    def reduced(self) -> "RationalFunction":
        """Cancel roots shared by numerator and denominator (within eq_tol)."""
        if len(self.numerator) < 2 or len(self.denominator) < 2:
            return self
        num_roots = list(P.polyroots(self.numerator))
        den_roots = list(P.polyroots(self.denominator))
        cancelled = False
        for r in list(num_roots):
            match = next((s for s in den_roots if abs(s - r) < self.cfg.eq_tol), None)
            if match is not None:
                num_roots.remove(r)
                den_roots.remove(match)
                cancelled = True
        if not cancelled:
            return self
        num = P.polyfromroots(num_roots) * self.numerator[-1] if num_roots else self.numerator[-1:]
        den = P.polyfromroots(den_roots) * self.denominator[-1] if den_roots else self.denominator[-1:]
        return RationalFunction(num, den, self.cfg)


def _kernel_power(lam: complex, j: int, cfg: ToleranceConfig) -> RationalFunction:
    den = P.polypow(np.array([1, -lam.conjugate()], dtype=complex), j)
    return RationalFunction(np.array([1], dtype=complex), den, cfg)


def _monomial(j: int, cfg: ToleranceConfig) -> RationalFunction:
    num = np.zeros(j + 1, dtype=complex)
    num[j] = 1
    return RationalFunction(num, np.array([1], dtype=complex), cfg)


def basis(theta: FiniteBlaschkeProduct, cfg: ToleranceConfig = DEFAULT) -> list[RationalFunction]:
    """Cauchy-kernel basis of Q_theta.

    A zero lambda != 0 of multiplicity m contributes 1/(1 - conj(lambda) z)^j,
    j = 1..m; a zero at the origin of multiplicity m contributes 1, z, ..., z^(m-1).
    """
    functions = []
    for zero in theta.zeros:
        if zero.location == 0:
            functions.extend(_monomial(j, cfg) for j in range(zero.multiplicity))
        else:
            functions.extend(_kernel_power(zero.location, j, cfg) for j in range(1, zero.multiplicity + 1))
    return functions


def compose_rational(f: RationalFunction, phi: SelfMap, cfg: ToleranceConfig = DEFAULT) -> RationalFunction:
    """Exact composite f o phi for a nonconstant symbol phi = r/s."""
    if isinstance(phi, Constant):
        raise DomainError("constant symbols are handled by is_invariant directly")
    a, b, c, d = matrix(phi)
    r = np.array([b, a], dtype=complex)
    s = np.array([d, c], dtype=complex)

    def homogenized(coeffs):
        # sum_k p_k r^k s^(deg - k)
        deg = len(coeffs) - 1
        out = np.zeros(1, dtype=complex)
        for k, pk in enumerate(coeffs):
            if pk != 0:
                out = P.polyadd(out, pk * P.polymul(P.polypow(r, k), P.polypow(s, deg - k)))
        return out

    p, q = f.numerator, f.denominator
    num, den = homogenized(p), homogenized(q)
    shift = (len(p) - 1) - (len(q) - 1)
    if shift > 0:
        den = P.polymul(den, P.polypow(s, shift))
    elif shift < 0:
        num = P.polymul(num, P.polypow(s, -shift))
    return RationalFunction(num, den, cfg).reduced()


def sample_points(count: int, attempt: int = 0) -> np.ndarray:
    """``count`` points split over the circles |z| = 0.5 and |z| = 0.25."""
    outer = (count + 1) // 2
    inner = count - outer
    jitter = 0.0 if attempt == 0 else 0.0731 * attempt
    t_out = 2 * np.pi * np.arange(outer) / outer + jitter
    t_in = 2 * np.pi * np.arange(inner) / inner + RING_OFFSET + jitter
    return np.concatenate([OUTER_RADIUS * np.exp(1j * t_out), INNER_RADIUS * np.exp(1j * t_in)])


def _sample_count(theta: FiniteBlaschkeProduct, f_degree: int) -> int:
    return 4 * (theta.degree + f_degree + 2)


def _usable_points(points: np.ndarray, poles) -> np.ndarray:
    mask = np.ones(points.shape, dtype=bool)
    for pole in poles:
        mask &= np.abs(points - pole) > POLE_CLEARANCE
    return points[mask]


def _evaluation_matrix(functions, points) -> np.ndarray:
    return np.array([fn(points) for fn in functions])


def span_columns(theta: FiniteBlaschkeProduct, points: np.ndarray) -> np.ndarray:
    """Samples of z^k / prod (1 - conj(lam) z)^m, k < degree(theta).

    These span the same space as ``basis(theta)`` (every element of Q_theta is
    a polynomial of degree < n over that denominator) but stay well conditioned
    on the sample circles, where the kernels 1/(1 - conj(lam) z)^j of nearby or
    repeated zeros are nearly collinear.
    """
    points = np.asarray(points, dtype=complex)
    den = np.ones_like(points)
    for zero in theta.nonzero_zeros:
        den = den * (1 - zero.location.conjugate() * points) ** zero.multiplicity
    return np.array([points**k / den for k in range(theta.degree)])


def in_span(
    f: RationalFunction, theta: FiniteBlaschkeProduct, cfg: ToleranceConfig = DEFAULT
) -> tuple[bool, float]:
    """Decide f in Q_theta by sampled least squares; returns (verdict, residual)."""
    count = _sample_count(theta, f.degree)
    poles = f.poles()
    last_error = None
    for attempt in range(MAX_RETRIES + 1):
        points = _usable_points(sample_points(count, attempt), poles)
        try:
            residual = least_squares_residual(span_columns(theta, points), f(points), cfg)
        except ConditioningError as exc:
            last_error = exc
            continue
        return residual < cfg.residual_tol, residual
    raise ConditioningError(f"least squares ill-conditioned after {MAX_RETRIES} retries: {last_error}")


def _constant_ok(theta: FiniteBlaschkeProduct, value: complex, cfg: ToleranceConfig) -> bool:
    if not theta.vanishes_at_origin:
        return False
    for zero in theta.nonzero_zeros:
        if abs(1 - zero.location.conjugate() * value) < cfg.eq_tol:
            return False
    return True


def invariance_residual(
    theta: FiniteBlaschkeProduct, phi: SelfMap, cfg: ToleranceConfig = DEFAULT
) -> tuple[bool, float]:
    """(C_phi Q_theta within Q_theta, largest residual over the basis)."""
    if isinstance(phi, Constant):
        ok = _constant_ok(theta, phi.value, cfg)
        return ok, 0.0 if ok else math.inf
    verdict, worst = True, 0.0
    for element in basis(theta, cfg):
        ok, residual = in_span(compose_rational(element, phi, cfg), theta, cfg)
        verdict &= ok
        worst = max(worst, residual)
    return verdict, worst


def is_invariant(theta: FiniteBlaschkeProduct, phi: SelfMap, cfg: ToleranceConfig = DEFAULT) -> bool:
    """Whether C_phi maps Q_theta into itself.

    Constant symbols are invariant exactly when theta(0) = 0 and every basis
    function is finite at the constant; the |c| < 1 requirement of the
    self-map setting is left to the caller.
    """
    return invariance_residual(theta, phi, cfg)[0]


def image_rank(theta: FiniteBlaschkeProduct, phi: SelfMap, cfg: ToleranceConfig = DEFAULT) -> int:
    """Numerical rank of C_phi restricted to Q_theta.

    The rank is taken of the operator's coordinate matrix (least-squares
    coordinates of each composite in the spanning set of ``span_columns``),
    with singular values below ``residual_tol`` times the largest discarded.
    """
    if not is_invariant(theta, phi, cfg):
        raise DomainError("image_rank requires C_phi Q_theta within Q_theta")
    functions = basis(theta, cfg)
    if isinstance(phi, Constant):
        composites = [RationalFunction(np.array([fn(phi.value)]), np.array([1]), cfg) for fn in functions]
    else:
        composites = [compose_rational(fn, phi, cfg) for fn in functions]
    count = _sample_count(theta, max(g.degree for g in composites))
    poles = [p for g in composites for p in g.poles()]
    points = _usable_points(sample_points(count), poles)
    B = span_columns(theta, points).T
    F = _evaluation_matrix(composites, points).T
    norms = np.linalg.norm(B, axis=0)
    coords, *_ = np.linalg.lstsq(B / norms, F, rcond=None)
    coords = coords / norms[:, None]
    sv = np.linalg.svd(coords, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > cfg.residual_tol * sv[0]))
