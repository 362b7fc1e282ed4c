"""Composition-operator symbols that leave finite-Blaschke model spaces invariant."""

from .blaschke import FiniteBlaschkeProduct, Zero, evaluate, make, mult_at
from .classifier import (
    AffineLine,
    AllRational,
    AllSelfMaps,
    ConstantsPart,
    FiniteSet,
    MoebiusFixedPoint,
    MoebiusMultMatch,
    classify_D,
    classify_L,
    construct_example,
    contains,
    enumerate_L_affine,
    enumerate_moebius_group,
    is_D_trivial,
    is_full_cycle,
    is_L_trivial,
    mult_match_rotation,
    orbit_product,
    rotation_divisor,
)
from .errors import ConditioningError, DegeneracyError, DomainError, ModelSpaceError
from .numerics import DEFAULT, PROFILES, ToleranceConfig
from .oracle import image_rank, in_span, invariance_residual, is_invariant
from .symbols import (
    IDENTITY,
    Affine,
    Constant,
    Identity,
    Moebius,
    Rotation,
    SelfMap,
    apply,
    compose,
    inverse,
    is_disc_self_map,
    order,
    tilde,
)

__version__ = "0.1.0"
