"""Numeric kernel: tolerances, roots of unity, factorization, least squares."""

from __future__ import annotations

import cmath
import os
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import ConditioningError, DomainError

PROFILE_ENV_VAR = "MOBIUSMODEL_TOLERANCE_PROFILE"


@dataclass(frozen=True)
class ToleranceConfig:
    """Numeric contract used throughout the package.

    eq_tol
        absolute distance under which two complex numbers are equal
    residual_tol
        relative least-squares residual under which a vector is in a span
    cond_max
        largest acceptable condition number of a least-squares system
    max_order
        bound for every root-of-unity / iteration-order search
    """

    eq_tol: float = 1e-9
    residual_tol: float = 1e-8
    cond_max: float = 1e10
    max_order: int = 512

    def __post_init__(self):
        for name in ("eq_tol", "residual_tol", "cond_max"):
            value = getattr(self, name)
            if not (value > 0 and np.isfinite(value)):
                raise DomainError(f"{name} must be a positive finite number, got {value!r}")
        if int(self.max_order) != self.max_order or self.max_order < 1:
            raise DomainError(f"max_order must be a positive integer, got {self.max_order!r}")

    def with_overrides(self, **overrides) -> "ToleranceConfig":
        """Copy with the non-None entries of ``overrides`` applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


DEFAULT = ToleranceConfig()

PROFILES = {
    "default": DEFAULT,
    "strict": ToleranceConfig(eq_tol=1e-11, residual_tol=1e-10, cond_max=1e12, max_order=1024),
    "loose": ToleranceConfig(eq_tol=1e-7, residual_tol=1e-6, cond_max=1e8, max_order=256),
}


def profile_from_env(environ=None) -> ToleranceConfig:
    """The ToleranceConfig named by MOBIUSMODEL_TOLERANCE_PROFILE (default if unset)."""
    environ = os.environ if environ is None else environ
    name = environ.get(PROFILE_ENV_VAR, "default").strip().lower() or "default"
    try:
        return PROFILES[name]
    except KeyError:
        raise DomainError(
            f"unknown tolerance profile {name!r}; expected one of {sorted(PROFILES)}"
        ) from None


# components below this are rounded to exact zeros
TIDY = 1e-15


def tidy(z: complex) -> complex:
    """Round negligible real/imaginary parts (and signed zeros) to 0.0."""
    z = complex(z)
    re, im = z.real, z.imag
    return complex(0.0 if abs(re) < TIDY else re, 0.0 if abs(im) < TIDY else im)


def close(z: complex, w: complex, cfg: ToleranceConfig = DEFAULT) -> bool:
    return abs(z - w) < cfg.eq_tol


def root_of_unity(k: int, n: int = 1) -> complex:
    """exp(2 pi i k / n), with the axis values returned exactly."""
    k %= n
    if 4 * k % n == 0:
        return (1, 1j, -1, -1j)[4 * k // n]
    return cmath.exp(2j * cmath.pi * k / n)


def root_of_unity_order(w: complex, cfg: ToleranceConfig = DEFAULT) -> int | None:
    """Smallest m <= max_order with |w**m - 1| < eq_tol, or None."""
    w = complex(w)
    if abs(abs(w) - 1.0) >= cfg.eq_tol:
        raise DomainError(f"{w!r} is not unimodular")
    w = w / abs(w)
    power = 1 + 0j
    for m in range(1, cfg.max_order + 1):
        power *= w
        if abs(power - 1) < cfg.eq_tol:
            return m
    return None


def prime_factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n as ascending (prime, exponent) pairs."""
    if int(n) != n or n < 1:
        raise DomainError(f"expected a positive integer, got {n!r}")
    n = int(n)
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            factors.append((p, k))
        p += 1 if p == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return factors


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, k in prime_factorize(n):
        divs = [d * p**e for d in divs for e in range(k + 1)]
    return sorted(divs)


def least_squares_residual(
    columns: Sequence[Sequence[complex]] | np.ndarray,
    target: Sequence[complex] | np.ndarray,
    cfg: ToleranceConfig = DEFAULT,
) -> float:
    """Relative residual of the best approximation of ``target`` from span(columns).

    Returns ``min_c ||A c - target|| / max(||target||, 1)`` where the columns of A
    are ``columns``.  Columns are normalized and orthogonalized (Householder QR);
    a ConditioningError is raised when the normalized system has condition number
    above ``cfg.cond_max``.
    """
    t = np.asarray(target, dtype=complex).ravel()
    A = np.atleast_2d(np.asarray(columns, dtype=complex)).T
    if A.size == 0:
        A = np.zeros((t.size, 0), dtype=complex)
    if A.shape[0] != t.size:
        raise DomainError("columns and target have different lengths")
    if A.shape[1] > A.shape[0]:
        raise DomainError("more columns than sample points")
    scale = np.linalg.norm(t)
    denom = max(scale, 1.0)
    if A.shape[1] == 0:
        return float(scale / denom)
    norms = np.linalg.norm(A, axis=0)
    if np.any(norms == 0):
        raise ConditioningError("zero column in least-squares system")
    A = A / norms
    Q, R = np.linalg.qr(A, mode="reduced")
    cond = np.linalg.cond(R)
    if not cond <= cfg.cond_max:
        raise ConditioningError(f"condition number {cond:.3g} exceeds {cfg.cond_max:.3g}")
    residual = t - Q @ (Q.conj().T @ t)
    return float(np.linalg.norm(residual) / denom)
