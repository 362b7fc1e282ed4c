"""Structure of D(Q_theta) and L(Q_theta): dispatch, enumeration, membership.

D(Q_theta) collects the analytic self-maps of the disc whose composition
operator leaves Q_theta invariant, L(Q_theta) the rational maps of the
sphere with the same property.  Both are returned as ``InvarianceFamily``
values; uncountable families are predicate-backed and never materialized.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from typing import Iterable, Union

from .blaschke import FiniteBlaschkeProduct, make, mult_at
from .errors import DomainError
from .numerics import DEFAULT, ToleranceConfig, divisors, prime_factorize, root_of_unity, tidy
from .symbols import (
    IDENTITY,
    Constant,
    Rotation,
    SelfMap,
    apply,
    compose,
    disc_automorphism,
    equal,
    from_coefficients,
    inverse,
    is_disc_self_map,
    matrix,
    order,
    rotation,
    through_points,
    tilde,
)


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class ConstantsPart:
    """Which constant symbols belong to a family.

    kind is one of ``none``, ``open_disc``, ``whole_plane`` or
    ``plane_minus_points`` (the plane without ``excluded``).
    """

    kind: str
    excluded: tuple[complex, ...] = ()

    def contains(self, value: complex, cfg: ToleranceConfig = DEFAULT) -> bool:
        if self.kind == "none":
            return False
        if self.kind == "open_disc":
            return abs(value) < 1
        if self.kind == "whole_plane":
            return True
        return all(abs(value - p) >= cfg.eq_tol * max(1.0, abs(p)) for p in self.excluded)


NO_CONSTANTS = ConstantsPart("none")
OPEN_DISC = ConstantsPart("open_disc")
WHOLE_PLANE = ConstantsPart("whole_plane")


def plane_minus(points: Iterable[complex]) -> ConstantsPart:
    return ConstantsPart("plane_minus_points", tuple(tidy(p) for p in points))


@dataclass(frozen=True)
class AllSelfMaps:
    """Every analytic self-map of the disc (theta = z)."""


@dataclass(frozen=True)
class AllRational:
    """Every rational map (theta = z)."""


@dataclass(frozen=True)
class FiniteSet:
    elements: tuple[SelfMap, ...]
    cyclic_generator: SelfMap | None = None
    constants: ConstantsPart = NO_CONSTANTS


@dataclass(frozen=True)
class AffineLine:
    """{(1 - conj(lam) a) z + a : a != 1/conj(lam)} plus constants."""

    lam: complex
    constants: ConstantsPart = NO_CONSTANTS


@dataclass(frozen=True)
class MoebiusFixedPoint:
    """Moebius maps fixing ``point`` (optionally restricted to disc self-maps)."""

    point: complex
    restrict_to_disc: bool
    constants: ConstantsPart


@dataclass(frozen=True)
class MoebiusMultMatch:
    """Moebius maps whose dual map respects the zero multiplicities of theta."""

    theta: FiniteBlaschkeProduct
    restrict_to_disc: bool
    pole_floor: int | None
    constants: ConstantsPart
    enumerated: tuple[SelfMap, ...] | None = None
    enumeration_complete: bool = False


InvarianceFamily = Union[
    AllSelfMaps, AllRational, FiniteSet, AffineLine, MoebiusFixedPoint, MoebiusMultMatch
]


# ---------------------------------------------------------------------------
# theta(0) != 0: rotations and affine maps


def _require_nonvanishing(theta: FiniteBlaschkeProduct) -> None:
    if theta.vanishes_at_origin:
        raise DomainError("operation requires theta(0) != 0")


def mult_match_rotation(theta: FiniteBlaschkeProduct, alpha: complex, cfg: ToleranceConfig = DEFAULT) -> bool:
    """mult(lambda) == mult(alpha * lambda) for every zero lambda."""
    _require_nonvanishing(theta)
    alpha = complex(alpha)
    if abs(abs(alpha) - 1) >= cfg.eq_tol:
        raise DomainError(f"{alpha!r} is not unimodular")
    return all(mult_at(theta, alpha * z.location, cfg) == z.multiplicity for z in theta.zeros)


def rotation_divisor(theta: FiniteBlaschkeProduct, cfg: ToleranceConfig = DEFAULT) -> int:
    """The d with D(Q_theta) = <exp(2 pi i/d) z>; a divisor of #Z(theta)."""
    _require_nonvanishing(theta)
    for d in reversed(divisors(theta.distinct_count)):
        if mult_match_rotation(theta, root_of_unity(1, d), cfg):
            return d
    raise AssertionError("d = 1 always matches")


def is_full_cycle(theta: FiniteBlaschkeProduct, cfg: ToleranceConfig = DEFAULT) -> bool:
    """Equal multiplicities and {lambda_j / lambda_1} a multiplicative group."""
    _require_nonvanishing(theta)
    if len({z.multiplicity for z in theta.zeros}) > 1:
        return False
    first = theta.zeros[0].location
    ratios = [z.location / first for z in theta.zeros]
    if any(abs(abs(r) - 1) >= cfg.eq_tol for r in ratios):
        return False
    return all(
        any(abs(r * s - t) < cfg.eq_tol for t in ratios) for r in ratios for s in ratios
    )


def is_D_trivial(theta: FiniteBlaschkeProduct, cfg: ToleranceConfig = DEFAULT) -> bool:
    """D(Q_theta) = {z}: no prime p | #Z(theta) admits the rotation by exp(2 pi i/p)."""
    _require_nonvanishing(theta)
    return not any(
        mult_match_rotation(theta, root_of_unity(1, p), cfg)
        for p, _ in prime_factorize(theta.distinct_count)
    )


def _affine_coefficients(phi: SelfMap) -> tuple[complex, complex] | None:
    if isinstance(phi, Constant):
        return None
    a, b, c, d = matrix(phi)
    if c != 0:
        return None
    return a / d, b / d


def affine_mult_match(theta: FiniteBlaschkeProduct, phi: SelfMap, cfg: ToleranceConfig = DEFAULT) -> bool:
    """phi = az + b with mult(lambda) == mult(conj(a) lambda / (1 - conj(b) lambda))."""
    coeffs = _affine_coefficients(phi)
    if coeffs is None:
        return False
    a, b = coeffs
    for z in theta.zeros:
        lam = z.location
        den = 1 - b.conjugate() * lam
        if abs(den) < cfg.eq_tol:
            return False
        if mult_at(theta, a.conjugate() * lam / den, cfg) != z.multiplicity:
            return False
    return True


def _unique(maps: Iterable[SelfMap], cfg: ToleranceConfig) -> list[SelfMap]:
    out: list[SelfMap] = []
    for phi in maps:
        if not any(equal(phi, psi, cfg) for psi in out):
            out.append(phi)
    return out


def _generator_key(phi: SelfMap):
    # among maximal-order elements prefer the rotation with the smallest positive angle
    if isinstance(phi, Rotation):
        return cmath.phase(phi.omega) % (2 * cmath.pi)
    return 2 * cmath.pi


def _cyclic_listing(elements: list[SelfMap], cfg: ToleranceConfig) -> tuple[tuple[SelfMap, ...], SelfMap]:
    """Elements listed as powers of a maximal-order generator when they form a cyclic group."""
    orders = [order(phi, cfg) or 0 for phi in elements]
    top = max(orders)
    generator = min((phi for phi, n in zip(elements, orders) if n == top), key=_generator_key)
    powers = [IDENTITY]
    for _ in range(top - 1):
        powers.append(compose(generator, powers[-1], cfg))
    if len(powers) == len(elements) and all(any(equal(p, e, cfg) for e in elements) for p in powers):
        return tuple(powers), generator
    return tuple(elements), generator


def enumerate_L_affine(theta: FiniteBlaschkeProduct, cfg: ToleranceConfig = DEFAULT) -> FiniteSet:
    """The finite cyclic group L(Q_theta) of affine maps, for theta(0) != 0 and #Z >= 2.

    The dual map psi(lam) = conj(a) lam / (1 - conj(b) lam) fixes 0, so the images
    of the two anchor zeros determine it; every multiplicity-compatible image pair
    is solved for and the survivors of the full multiplicity check are kept.
    """
    _require_nonvanishing(theta)
    if theta.distinct_count < 2:
        raise DomainError("enumerate_L_affine needs at least two distinct zeros")
    z1, z2 = theta.zeros[0], theta.zeros[1]
    l1, l2 = z1.location, z2.location
    found: list[SelfMap] = []
    for w1 in theta.zeros:
        if w1.multiplicity != z1.multiplicity:
            continue
        for w2 in theta.zeros:
            if w2.multiplicity != z2.multiplicity:
                continue
            m1, m2 = w1.location, w2.location
            # conj(a) l + conj(b) m l = m for (l, m) in the two anchor pairs
            det = l1 * l2 * (m2 - m1)
            if abs(det) < cfg.eq_tol:
                continue
            a_bar = (m1 * m2 * l2 - m2 * m1 * l1) / det
            b_bar = (l1 * m2 - l2 * m1) / det
            if abs(a_bar) < cfg.eq_tol:
                continue
            phi = from_coefficients(a_bar.conjugate(), b_bar.conjugate(), 0, 1, cfg)
            if affine_mult_match(theta, phi, cfg):
                found.append(phi)
    elements, generator = _cyclic_listing(_unique([IDENTITY] + found, cfg), cfg)
    return FiniteSet(elements, generator, NO_CONSTANTS)


def is_L_trivial(theta: FiniteBlaschkeProduct, cfg: ToleranceConfig = DEFAULT) -> bool:
    if theta.vanishes_at_origin or theta.distinct_count < 2:
        return False
    return len(enumerate_L_affine(theta, cfg).elements) == 1


# ---------------------------------------------------------------------------
# theta(0) = 0: Moebius maps


def moebius_mult_match(theta: FiniteBlaschkeProduct, phi: SelfMap, cfg: ToleranceConfig = DEFAULT) -> bool:
    """Exact membership test of a nonconstant symbol in L(Q_theta) when theta(0) = 0.

    With mu = mult(0) and w = tilde(phi)(lam) for each nonzero zero lam:

    * w is a nonzero zero with mult(w) >= mult(lam), or w = 0 and mult(lam) <= mu - 1;
    * when mu >= 2, phi is affine or its pole sits at 1/conj(p) for a nonzero
      zero p of multiplicity >= mu - 1, i.e. p = conj(-c/d).
    """
    if isinstance(phi, Constant):
        return False
    if not theta.vanishes_at_origin:
        raise DomainError("moebius_mult_match requires theta(0) = 0")
    mu = theta.origin_multiplicity
    dual = tilde(phi, cfg)
    for z in theta.nonzero_zeros:
        w = apply(dual, z.location)
        if abs(w) < cfg.eq_tol:
            if z.multiplicity > mu - 1:
                return False
        elif mult_at(theta, w, cfg) < z.multiplicity:
            return False
    if mu >= 2:
        a, b, c, d = matrix(phi)
        if c != 0:
            if d == 0:
                return False
            p = (-c / d).conjugate()
            if abs(p) < cfg.eq_tol or mult_at(theta, p, cfg) < mu - 1:
                return False
    return True


def _pole_floor(theta: FiniteBlaschkeProduct) -> int | None:
    mu = theta.origin_multiplicity
    return mu - 1 if mu >= 2 else None


def _two_point_candidates(l1: complex, l2: complex, cfg: ToleranceConfig) -> list[SelfMap]:
    # T sends l1 -> 0, l2 -> inf; fixing maps are T^-1 (k z) T, the swap is an involution
    T = from_coefficients(1, -l1, 1, -l2, cfg)
    T_inv = inverse(T, cfg)
    out = []
    for n in range(2, cfg.max_order + 1):
        out.append(compose(T_inv, compose(rotation(root_of_unity(1, n), cfg), T, cfg), cfg))
    g = disc_automorphism(-1, l1, cfg)  # involution swapping l1 and 0
    u = apply(g, l2)
    out.append(compose(g, compose(disc_automorphism(-1, u, cfg), g, cfg), cfg))
    return out


def enumerate_moebius_group(
    theta: FiniteBlaschkeProduct, cfg: ToleranceConfig = DEFAULT, restrict_to_disc: bool = False
) -> MoebiusMultMatch:
    """Enumerate the nonconstant members of L(Q_theta) (or D(Q_theta)) when theta(0) = 0.

    With N >= 3 nonzero zeros, a member is fixed by where its dual map sends three
    anchor zeros; every admissible image triple is interpolated and checked, so the
    enumeration is complete.  With N = 2 only finite-order candidates of a root of
    unity multiplier search are listed and the enumeration is marked incomplete.
    """
    if not theta.vanishes_at_origin or len(theta.nonzero_zeros) < 2:
        raise DomainError("enumerate_moebius_group needs theta(0) = 0 and two nonzero zeros")
    mu = theta.origin_multiplicity
    nonzero = theta.nonzero_zeros
    if len(nonzero) >= 3:
        anchors = nonzero[:3]
        pool = [z.location for z in nonzero] + ([0j] if mu >= 2 else [])
        candidates = []
        for triple in itertools.permutations(pool, 3):
            if any(
                w != 0 and mult_at(theta, w, cfg) < z.multiplicity for z, w in zip(anchors, triple)
            ):
                continue
            dual = through_points([z.location for z in anchors], triple, cfg)
            candidates.append(tilde(dual, cfg))
        complete = True
    else:
        duals = _two_point_candidates(nonzero[0].location, nonzero[1].location, cfg)
        candidates = [IDENTITY] + [tilde(psi, cfg) for psi in duals]
        complete = False
    members = [
        phi
        for phi in candidates
        if moebius_mult_match(theta, phi, cfg) and (not restrict_to_disc or is_disc_self_map(phi, cfg))
    ]
    members = _unique([IDENTITY] + members, cfg)
    constants = OPEN_DISC if restrict_to_disc else _plane_minus_poles(theta)
    return MoebiusMultMatch(theta, restrict_to_disc, _pole_floor(theta), constants, tuple(members), complete)


def _plane_minus_poles(theta: FiniteBlaschkeProduct) -> ConstantsPart:
    return plane_minus(1 / z.location.conjugate() for z in theta.nonzero_zeros)


# ---------------------------------------------------------------------------
# dispatch


def _single_nonzero(theta: FiniteBlaschkeProduct):
    (zero,) = theta.nonzero_zeros
    return zero.location, zero.multiplicity


def classify_D(theta: FiniteBlaschkeProduct, cfg: ToleranceConfig = DEFAULT) -> InvarianceFamily:
    """D(Q_theta) as an InvarianceFamily."""
    if theta.is_rotation:
        return AllSelfMaps()
    if not theta.vanishes_at_origin:
        if theta.distinct_count == 1:
            return FiniteSet((IDENTITY,), IDENTITY, NO_CONSTANTS)
        d = rotation_divisor(theta, cfg)
        elements = tuple(rotation(root_of_unity(k, d), cfg) for k in range(d))
        return FiniteSet(elements, elements[1] if d > 1 else IDENTITY, NO_CONSTANTS)
    mu = theta.origin_multiplicity
    nonzero = theta.nonzero_zeros
    if not nonzero:
        return MoebiusMultMatch(theta, True, mu - 1, OPEN_DISC)
    if len(nonzero) == 1:
        lam, n = _single_nonzero(theta)
        if mu == 1:
            return MoebiusFixedPoint(1 / lam.conjugate(), True, OPEN_DISC)
        if n == mu - 1:
            # -b_lam swaps 0 and lam and maps every kernel to a polynomial of degree <= n
            swap = disc_automorphism(-1, lam, cfg)
            return FiniteSet((IDENTITY, swap), swap, OPEN_DISC)
        return FiniteSet((IDENTITY,), IDENTITY, OPEN_DISC)
    return enumerate_moebius_group(theta, cfg, restrict_to_disc=True)


def classify_L(theta: FiniteBlaschkeProduct, cfg: ToleranceConfig = DEFAULT) -> InvarianceFamily:
    """L(Q_theta) as an InvarianceFamily."""
    if theta.is_rotation:
        return AllRational()
    if not theta.vanishes_at_origin:
        if theta.distinct_count == 1:
            return AffineLine(theta.zeros[0].location, NO_CONSTANTS)
        return enumerate_L_affine(theta, cfg)
    mu = theta.origin_multiplicity
    nonzero = theta.nonzero_zeros
    if not nonzero:
        return MoebiusMultMatch(theta, False, mu - 1, WHOLE_PLANE)
    constants = _plane_minus_poles(theta)
    if len(nonzero) == 1:
        lam, n = _single_nonzero(theta)
        if mu == 1:
            return MoebiusFixedPoint(1 / lam.conjugate(), False, constants)
        if n == mu - 1:
            # the affine line plus the maps 1/conj(lam) + beta/(1 - conj(lam) z)
            return MoebiusMultMatch(theta, False, mu - 1, constants)
        return AffineLine(lam, constants)
    return enumerate_moebius_group(theta, cfg, restrict_to_disc=False)


def contains(family: InvarianceFamily, phi: SelfMap, cfg: ToleranceConfig = DEFAULT) -> bool:
    """Decide phi in family."""
    if isinstance(family, AllSelfMaps):
        return is_disc_self_map(phi, cfg)
    if isinstance(family, AllRational):
        return True
    if isinstance(phi, Constant):
        return family.constants.contains(phi.value, cfg)
    if isinstance(family, FiniteSet):
        return any(equal(phi, e, cfg) for e in family.elements)
    if isinstance(family, AffineLine):
        coeffs = _affine_coefficients(phi)
        if coeffs is None:
            return False
        a, b = coeffs
        lam_bar = family.lam.conjugate()
        return abs(a - (1 - lam_bar * b)) < cfg.eq_tol and abs(a) >= cfg.eq_tol
    if isinstance(family, MoebiusFixedPoint):
        p = family.point
        image = apply(phi, p)
        if abs(image - p) >= cfg.eq_tol * max(1.0, abs(p)):
            return False
        return not family.restrict_to_disc or is_disc_self_map(phi, cfg)
    if isinstance(family, MoebiusMultMatch):
        if not moebius_mult_match(family.theta, phi, cfg):
            return False
        return not family.restrict_to_disc or is_disc_self_map(phi, cfg)
    raise TypeError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# constructions


def construct_example(n: int, d: int, cfg: ToleranceConfig = DEFAULT) -> FiniteBlaschkeProduct:
    """A theta with n distinct zeros and D(Q_theta) = <exp(2 pi i/d) z>.

    With m = n/d the zeros are exp(2 pi i s/d) * t/(m + 1), s = 1..d, of
    multiplicity t = 1..m.
    """
    if n < 1 or d < 1 or n % d:
        raise DomainError(f"{d} does not divide {n}")
    m = n // d
    pairs = [
        (root_of_unity(s, d) * (t / (m + 1)), t) for t in range(1, m + 1) for s in range(1, d + 1)
    ]
    return make(pairs, cfg)


def orbit_product(
    base_zeros: Iterable[tuple[complex, int]], n: int, cfg: ToleranceConfig = DEFAULT
) -> FiniteBlaschkeProduct:
    """prod_j (prod_k b_{a^k lambda_j})^{m_j} with a = exp(2 pi i/n)."""
    if n < 1:
        raise DomainError("orbit size must be positive")
    pairs = []
    for lam, mult in base_zeros:
        if complex(lam) == 0:
            raise DomainError("orbit base zeros must be nonzero")
        pairs.extend((root_of_unity(k, n) * complex(lam), mult) for k in range(1, n + 1))
    return make(pairs, cfg)


__all__ = [
    "AffineLine",
    "AllRational",
    "AllSelfMaps",
    "ConstantsPart",
    "FiniteSet",
    "InvarianceFamily",
    "MoebiusFixedPoint",
    "MoebiusMultMatch",
    "NO_CONSTANTS",
    "OPEN_DISC",
    "WHOLE_PLANE",
    "affine_mult_match",
    "classify_D",
    "classify_L",
    "construct_example",
    "contains",
    "enumerate_L_affine",
    "enumerate_moebius_group",
    "is_D_trivial",
    "is_L_trivial",
    "is_full_cycle",
    "moebius_mult_match",
    "mult_match_rotation",
    "orbit_product",
    "plane_minus",
    "rotation_divisor",
]
