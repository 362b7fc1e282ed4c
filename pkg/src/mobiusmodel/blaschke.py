"""Finite Blaschke products stored as canonical zero multisets.

The unimodular prefactor is not represented: theta and c*theta (|c| = 1)
generate the same model space.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError
from .numerics import DEFAULT, ToleranceConfig, tidy

# zeros closer than this to the unit circle are rejected
DISC_MARGIN = 1e-12


@dataclass(frozen=True)
class Zero:
    location: complex
    multiplicity: int

    def __post_init__(self):
        if not abs(self.location) < 1 - DISC_MARGIN:
            raise DomainError(f"zero {self.location!r} is not strictly inside the unit disc")
        if int(self.multiplicity) != self.multiplicity or self.multiplicity < 1:
            raise DomainError(f"multiplicity must be a positive integer, got {self.multiplicity!r}")


@dataclass(frozen=True)
class FiniteBlaschkeProduct:
    """theta = prod b_lambda^m over ``zeros`` (canonically ordered, distinct)."""

    zeros: tuple[Zero, ...]

    @property
    def degree(self) -> int:
        return sum(z.multiplicity for z in self.zeros)

    @property
    def distinct_count(self) -> int:
        return len(self.zeros)

    @property
    def pairs(self) -> list[tuple[complex, int]]:
        return [(z.location, z.multiplicity) for z in self.zeros]

    @property
    def vanishes_at_origin(self) -> bool:
        return any(z.location == 0 for z in self.zeros)

    @property
    def origin_multiplicity(self) -> int:
        return next((z.multiplicity for z in self.zeros if z.location == 0), 0)

    @property
    def nonzero_zeros(self) -> tuple[Zero, ...]:
        return tuple(z for z in self.zeros if z.location != 0)

    @property
    def is_rotation(self) -> bool:
        """True when theta is z times a unimodular constant."""
        return self.degree == 1 and self.vanishes_at_origin

    def __str__(self):
        parts = []
        for z in self.zeros:
            factor = "z" if z.location == 0 else f"b({z.location:.6g})"
            parts.append(factor if z.multiplicity == 1 else f"{factor}^{z.multiplicity}")
        return "*".join(parts)


def make(pairs: Iterable[tuple[complex, int]], cfg: ToleranceConfig = DEFAULT) -> FiniteBlaschkeProduct:
    """Build theta from (location, multiplicity) pairs.

    Locations within ``eq_tol`` of each other are merged (multiplicities
    summed, the first location kept); locations within ``eq_tol`` of the
    origin become exactly 0.
    """
    merged: list[list] = []
    for location, mult in pairs:
        Zero(complex(location), mult)  # validates
        loc = tidy(complex(location))
        if abs(loc) < cfg.eq_tol:
            loc = 0j
        for entry in merged:
            if abs(entry[0] - loc) < cfg.eq_tol:
                entry[1] += int(mult)
                break
        else:
            merged.append([loc, int(mult)])
    if not merged:
        raise DomainError("a Blaschke product needs at least one zero")
    merged.sort(key=lambda e: (e[0].real, e[0].imag))
    return FiniteBlaschkeProduct(tuple(Zero(loc, m) for loc, m in merged))


def mult_at(theta: FiniteBlaschkeProduct, point: complex, cfg: ToleranceConfig = DEFAULT) -> int:
    """Multiplicity of ``point`` as a zero of theta (0 when theta(point) != 0)."""
    point = complex(point)
    if cmath.isinf(point) or cmath.isnan(point):
        return 0
    for z in theta.zeros:
        if abs(z.location - point) < cfg.eq_tol:
            return z.multiplicity
    return 0


def blaschke_factor(lam: complex, z: complex) -> complex:
    return (z - lam) / (1 - lam.conjugate() * z)


def evaluate(theta: FiniteBlaschkeProduct, z: complex, cfg: ToleranceConfig = DEFAULT) -> complex:
    z = complex(z)
    value = 1 + 0j
    for zero in theta.zeros:
        lam = zero.location
        if lam != 0 and abs(z - 1 / lam.conjugate()) < cfg.eq_tol:
            raise DomainError(f"{z!r} is a pole of theta")
        value *= blaschke_factor(lam, z) ** zero.multiplicity
    return value
