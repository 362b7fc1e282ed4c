"""Candidate symbols: constants, rotations, affine maps and Moebius maps.

Every nonconstant symbol is a Moebius transformation z -> (az + b)/(cz + d).
The factories (``rotation``, ``affine``, ``moebius``, ``from_coefficients``)
return the canonical variant:

* Moebius with c = 0 becomes Affine, Affine with b = 0 and |a| = 1 becomes
  Rotation, Rotation by 1 becomes Identity;
* Moebius coefficients are scaled so the largest modulus is 1 and the first
  coefficient of (numerically) maximal modulus is a positive real.

Equality of symbols is projective and lives in ``equal``; the dataclass
``==`` compares stored coefficients exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegeneracyError, DomainError
from .numerics import DEFAULT, ToleranceConfig, root_of_unity_order, tidy

INF = complex(math.inf, 0.0)

# relative slack when picking the "first maximal" coefficient for the phase
_PHASE_TIE = 1e-9
# coefficients (after unit scaling) treated as exact zeros when choosing the variant;
# roundoff-sized so canonicalization never moves values by more than ~1e-14
_SNAP = 1e-14


def is_inf(z: complex) -> bool:
    return cmath.isinf(z)


class SelfMap:
    """Base class of all symbol variants."""

    def __call__(self, z):
        return apply(self, z)


@dataclass(frozen=True)
class Constant(SelfMap):
    value: complex

    def __post_init__(self):
        if cmath.isinf(self.value) or cmath.isnan(self.value):
            raise DomainError("constant symbols must be finite")


@dataclass(frozen=True)
class Identity(SelfMap):
    pass


@dataclass(frozen=True)
class Rotation(SelfMap):
    omega: complex

    def __post_init__(self):
        if abs(abs(self.omega) - 1) >= DEFAULT.eq_tol:
            raise DomainError(f"rotation factor {self.omega!r} is not unimodular")


@dataclass(frozen=True)
class Affine(SelfMap):
    a: complex
    b: complex

    def __post_init__(self):
        if self.a == 0:
            raise DomainError("affine map with a = 0 is constant")


@dataclass(frozen=True)
class Moebius(SelfMap):
    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        if scale == 0 or abs(self.a * self.d - self.b * self.c) <= DEFAULT.eq_tol * scale**2:
            raise DomainError("Moebius map with vanishing determinant")


IDENTITY = Identity()


def matrix(phi: SelfMap) -> tuple[complex, complex, complex, complex]:
    """Coefficients (a, b, c, d) of a nonconstant symbol."""
    if isinstance(phi, Identity):
        return (1 + 0j, 0j, 0j, 1 + 0j)
    if isinstance(phi, Rotation):
        return (complex(phi.omega), 0j, 0j, 1 + 0j)
    if isinstance(phi, Affine):
        return (complex(phi.a), complex(phi.b), 0j, 1 + 0j)
    if isinstance(phi, Moebius):
        return (complex(phi.a), complex(phi.b), complex(phi.c), complex(phi.d))
    raise DomainError(f"{phi!r} has no Moebius matrix")


def constant(value: complex) -> Constant:
    return Constant(complex(value))


def rotation(omega: complex, cfg: ToleranceConfig = DEFAULT) -> SelfMap:
    omega = complex(omega)
    if abs(abs(omega) - 1) >= cfg.eq_tol:
        raise DomainError(f"rotation factor {omega!r} is not unimodular")
    omega = tidy(omega / abs(omega))
    if abs(omega - 1) < _SNAP:
        return IDENTITY
    return Rotation(omega)


def affine(a: complex, b: complex, cfg: ToleranceConfig = DEFAULT) -> SelfMap:
    a, b = complex(a), complex(b)
    if a == 0:
        raise DomainError("affine map with a = 0 is constant")
    if abs(b) < _SNAP * max(1.0, abs(a)) and abs(abs(a) - 1) < _SNAP:
        return rotation(a, cfg)
    return Affine(tidy(a), tidy(b))


def moebius(a: complex, b: complex, c: complex, d: complex, cfg: ToleranceConfig = DEFAULT) -> SelfMap:
    """Canonical symbol for z -> (az + b)/(cz + d); raises on a singular matrix."""
    phi = from_coefficients(a, b, c, d, cfg)
    if isinstance(phi, Constant):
        raise DomainError("Moebius map with vanishing determinant")
    return phi


def from_coefficients(a, b, c, d, cfg: ToleranceConfig = DEFAULT) -> SelfMap:
    """Canonical symbol for (az + b)/(cz + d); a singular matrix yields a Constant."""
    coeffs = [complex(x) for x in (a, b, c, d)]
    scale = max(abs(x) for x in coeffs)
    if scale == 0 or not math.isfinite(scale):
        raise DegeneracyError("all coefficients vanish")
    a, b, c, d = (x / scale for x in coeffs)
    det = a * d - b * c
    if abs(det) <= cfg.eq_tol:
        # rank one: the map is constant wherever it is defined
        if max(abs(c), abs(d)) < cfg.eq_tol:
            raise DegeneracyError("composite is identically infinite")
        return Constant(tidy(a / c if abs(c) >= abs(d) else b / d))
    if abs(c) < _SNAP:
        return affine(a / d, b / d, cfg)
    for x in (a, b, c, d):
        if abs(x) >= 1 - _PHASE_TIE:
            phase = x / abs(x)
            break
    a, b, c, d = (tidy(x / phase) for x in (a, b, c, d))
    return Moebius(a, b, c, d)


def disc_automorphism(omega: complex, a: complex, cfg: ToleranceConfig = DEFAULT) -> SelfMap:
    """z -> omega * (z - a)/(1 - conj(a) z) for |omega| = 1, |a| < 1."""
    if abs(a) >= 1:
        raise DomainError("automorphism parameter must lie in the disc")
    omega, a = complex(omega), complex(a)
    return moebius(omega, -omega * a, -a.conjugate(), 1, cfg)


def _cross_ratio_matrix(z1, z2, z3):
    # sends z1 -> 0, z2 -> inf, z3 -> 1
    return (z3 - z2, -z1 * (z3 - z2), z3 - z1, -z2 * (z3 - z1))


def through_points(sources, targets, cfg: ToleranceConfig = DEFAULT) -> SelfMap:
    """The Moebius map sending three distinct finite points to three distinct finite points."""
    z1, z2, z3 = (complex(x) for x in sources)
    w1, w2, w3 = (complex(x) for x in targets)
    for p, q in ((z1, z2), (z1, z3), (z2, z3), (w1, w2), (w1, w3), (w2, w3)):
        if abs(p - q) < cfg.eq_tol:
            raise DomainError("three-point interpolation needs distinct points")
    S = _cross_ratio_matrix(z1, z2, z3)
    a, b, c, d = _cross_ratio_matrix(w1, w2, w3)
    T_inv = (d, -b, -c, a)
    return from_coefficients(*_mul(T_inv, S), cfg)


def _mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def apply(phi: SelfMap, z: complex) -> complex:
    """phi(z) on the Riemann sphere; infinity is represented by ``INF``."""
    if isinstance(phi, Constant):
        return phi.value
    if isinstance(phi, Identity):
        return complex(z)
    z = complex(z)
    a, b, c, d = matrix(phi)
    if is_inf(z):
        return INF if c == 0 else a / c
    den = c * z + d
    if den == 0:
        return INF
    return (a * z + b) / den


def equal(phi: SelfMap, psi: SelfMap, cfg: ToleranceConfig = DEFAULT) -> bool:
    """Projective equality of two symbols within ``eq_tol``."""
    if isinstance(phi, Constant) or isinstance(psi, Constant):
        return (
            isinstance(phi, Constant)
            and isinstance(psi, Constant)
            and abs(phi.value - psi.value) < cfg.eq_tol
        )
    u = _unit(matrix(phi))
    v = _unit(matrix(psi))
    return all(
        abs(u[i] * v[j] - u[j] * v[i]) < cfg.eq_tol for i in range(4) for j in range(i + 1, 4)
    )


def _unit(m):
    norm = math.sqrt(sum(abs(x) ** 2 for x in m))
    return [x / norm for x in m]


def compose(phi: SelfMap, psi: SelfMap, cfg: ToleranceConfig = DEFAULT) -> SelfMap:
    """The composite phi o psi (apply psi first)."""
    if isinstance(psi, Constant):
        value = apply(phi, psi.value)
        if is_inf(value):
            raise DegeneracyError("composite is the constant infinity")
        return Constant(value)
    if isinstance(phi, Constant):
        return phi
    if isinstance(phi, Identity):
        return psi
    if isinstance(psi, Identity):
        return phi
    return from_coefficients(*_mul(matrix(phi), matrix(psi)), cfg)


def inverse(phi: SelfMap, cfg: ToleranceConfig = DEFAULT) -> SelfMap | None:
    """Compositional inverse; None for constants."""
    if isinstance(phi, Constant):
        return None
    if isinstance(phi, Identity):
        return phi
    if isinstance(phi, Rotation):
        return rotation(phi.omega.conjugate(), cfg)
    a, b, c, d = matrix(phi)
    return from_coefficients(d, -b, -c, a, cfg)


def iterate(phi: SelfMap, n: int, cfg: ToleranceConfig = DEFAULT) -> SelfMap:
    """phi composed with itself n times (n >= 0)."""
    result: SelfMap = IDENTITY
    for _ in range(n):
        result = compose(phi, result, cfg)
    return result


def _is_identity_matrix(m, tol) -> bool:
    a, b, c, d = m
    return abs(b) < tol and abs(c) < tol and abs(a - d) < tol


def order(phi: SelfMap, cfg: ToleranceConfig = DEFAULT) -> int | None:
    """Smallest n <= max_order with phi^[n] = identity, or None."""
    if isinstance(phi, Constant):
        return None
    if isinstance(phi, Identity):
        return 1
    if isinstance(phi, Rotation):
        return root_of_unity_order(phi.omega, cfg)
    m = matrix(phi)
    a, b, c, d = m
    # finite order forces (trace^2 / det) real in [0, 4)
    tau = (a + d) ** 2 / (a * d - b * c)
    if abs(tau.imag) > 1e-6 or not (-1e-6 <= tau.real < 4 - 1e-12):
        return None
    power = m
    for n in range(1, cfg.max_order + 1):
        scale = max(abs(x) for x in power)
        power = tuple(x / scale for x in power)
        if _is_identity_matrix(power, cfg.eq_tol):
            return n
        power = _mul(power, m)
    return None


def tilde(phi: SelfMap, cfg: ToleranceConfig = DEFAULT) -> SelfMap:
    """The dual map z -> (conj(a) z - conj(c)) / (-conj(b) z + conj(d))."""
    if isinstance(phi, Constant):
        raise DomainError("the dual map is defined for nonconstant symbols only")
    a, b, c, d = matrix(phi)
    return from_coefficients(a.conjugate(), -c.conjugate(), -b.conjugate(), d.conjugate(), cfg)


def circumcircle(z1: complex, z2: complex, z3: complex) -> tuple[complex, float] | None:
    """Center and radius of the circle through three points; None if collinear."""
    num = abs(z1) ** 2 * (z2 - z3) + abs(z2) ** 2 * (z3 - z1) + abs(z3) ** 2 * (z1 - z2)
    den = z1.conjugate() * (z2 - z3) + z2.conjugate() * (z3 - z1) + z3.conjugate() * (z1 - z2)
    if abs(den) < 1e-14 * max(1.0, abs(num)):
        return None
    center = num / den
    return center, abs(z1 - center)


def is_disc_self_map(phi: SelfMap, cfg: ToleranceConfig = DEFAULT) -> bool:
    """Whether phi maps the open unit disc into itself."""
    if isinstance(phi, Constant):
        return abs(phi.value) < 1
    if isinstance(phi, (Identity, Rotation)):
        return True
    if isinstance(phi, Affine):
        return abs(phi.a) + abs(phi.b) <= 1 + cfg.eq_tol
    a, b, c, d = matrix(phi)
    # the pole must lie outside the closed disc
    if abs(d) <= abs(c) * (1 + cfg.eq_tol):
        return False
    images = [apply(phi, z) for z in (1, 1j, -1)]
    circle = circumcircle(*images)
    if circle is None:
        return False
    center, radius = circle
    return abs(center) + radius <= 1 + cfg.eq_tol and abs(apply(phi, 0)) < 1
