import cmath

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mobiusmodel import make
from mobiusmodel.classifier import construct_example, enumerate_L_affine, mult_match_rotation
from mobiusmodel.errors import DegeneracyError, DomainError
from mobiusmodel.numerics import divisors, root_of_unity
from mobiusmodel.numerics import least_squares_residual
from mobiusmodel.oracle import (
    RationalFunction,
    basis,
    compose_rational,
    image_rank,
    in_span,
    invariance_residual,
    is_invariant,
    sample_points,
    span_columns,
)
from mobiusmodel.symbols import (
    IDENTITY,
    Affine,
    Constant,
    Rotation,
    affine,
    from_coefficients,
    moebius,
    rotation,
)

from conftest import products, random_theta


def coeffs(f):
    return np.round(f.numerator, 12).tolist(), np.round(f.denominator, 12).tolist()


def test_basis_examples():
    kernels = basis(make([(0.5, 2)]))
    assert coeffs(kernels[0]) == ([1], [1, -0.5])
    assert coeffs(kernels[1]) == ([1], [1, -1, 0.25])
    assert [coeffs(f)[0] for f in basis(make([(0, 3)]))] == [[1], [0, 1], [0, 0, 1]]
    mixed = basis(make([(0, 2), (0.5, 1)]))
    assert [coeffs(f) for f in mixed] == [([1], [1]), ([0, 1], [1]), ([1], [1, -0.5])]


@given(products(origin=True))
def test_basis_length_is_degree(theta):
    assert len(basis(theta)) == theta.degree


def test_rational_function_rejects_zero_denominator():
    with pytest.raises(DegeneracyError):
        RationalFunction(np.array([1]), np.array([0, 0]))


def test_reduction_cancels_common_roots():
    # (z - 0.3)(z + 1) / (z - 0.3)
    f = RationalFunction(np.array([-0.3, 0.7, 1]), np.array([-0.3, 1])).reduced()
    assert f.degree == 1 and coeffs(f) == ([1, 1], [1])


def test_compose_identity_map():
    z = RationalFunction(np.array([0, 1]), np.array([1]))
    phi = moebius(1, 0.2, 0.3, 1)
    composite = compose_rational(z, phi)
    pts = sample_points(10)
    assert np.allclose(composite(pts), [phi(p) for p in pts], atol=1e-14)


def test_compose_kernel_with_affine():
    lam, a, b = 0.4 - 0.2j, 0.7j, 0.1
    kernel = basis(make([(lam, 1)]))[0]
    composite = compose_rational(kernel, Affine(a, b))
    expected = RationalFunction(np.array([1]), np.array([1 - lam.conjugate() * b, -lam.conjugate() * a]))
    pts = sample_points(12)
    assert np.allclose(composite(pts), expected(pts), atol=1e-14)
    assert composite.degree == 1


def test_compose_matches_pointwise_evaluation(rng):
    f = RationalFunction(np.array([0, 1]), np.array([1, -1, 0.25]))  # z/(1 - 0.5z)^2
    phi = moebius(1, 0.2, 0.2, 1)
    composite = compose_rational(f, phi)
    assert composite.degree <= 3
    z = rng.uniform(-0.9, 0.9, 10) + 1j * rng.uniform(-0.4, 0.4, 10)
    assert np.allclose(composite(z), f(np.array([phi(w) for w in z])), rtol=1e-10, atol=0)


def test_compose_rejects_constants():
    with pytest.raises(DomainError):
        compose_rational(basis(make([(0.5, 1)]))[0], Constant(0.1))


def test_compose_pointwise_random_suite(rng):
    for _ in range(100):
        num = rng.normal(size=int(rng.integers(1, 4))) + 1j * rng.normal(size=1)
        lam = cmath.rect(rng.uniform(0.1, 0.8), rng.uniform(0, 6.3))
        den = np.polynomial.polynomial.polypow([1, -lam.conjugate()], int(rng.integers(1, 3)))
        f = RationalFunction(num, den)
        a, b, c, d = rng.normal(size=4) + 1j * rng.normal(size=4)
        phi = from_coefficients(a, b, c, d)
        composite = compose_rational(f, phi)
        z = rng.uniform(-0.9, 0.9, 20) + 1j * rng.uniform(-0.9, 0.9, 20)
        direct = np.array([f(np.array([phi(w)]))[0] for w in z])
        ok = np.isfinite(direct) & (np.abs(direct) < 1e6)
        assert np.allclose(composite(z)[ok], direct[ok], rtol=1e-10, atol=1e-12)


def test_in_span_examples(ex8):
    theta = make([(0.5, 1), (0.3, 1)])
    for f in basis(theta):
        ok, residual = in_span(f, theta)
        assert ok and residual < 1e-12
    ok, residual = in_span(RationalFunction(np.array([1]), np.array([1])), theta)
    assert not ok and residual >= 0.01
    kernel = basis(ex8)[0]
    ok, residual = in_span(compose_rational(kernel, Rotation(1j)), ex8)
    assert ok and residual < 1e-10


def test_is_invariant_examples(ex8):
    assert is_invariant(ex8, Rotation(1j))
    ok, residual = invariance_residual(ex8, rotation(root_of_unity(1, 3)))
    assert not ok and residual > 1e-3
    assert is_invariant(make([(0, 2)]), Constant(0.3))
    assert not is_invariant(make([(0.5, 1)]), Constant(0.3))
    # the kernel 1/(1 - 0.5 z) is infinite at 2
    assert not is_invariant(make([(0, 1), (0.5, 1)]), Constant(2))


def test_image_rank_examples(ex8):
    assert image_rank(ex8, Rotation(1j)) == 4
    assert image_rank(make([(0, 2)]), Constant(0.3)) == 1
    assert image_rank(make([(0, 1), (0.5, 1)]), IDENTITY) == 2
    with pytest.raises(DomainError):
        image_rank(ex8, rotation(root_of_unity(1, 3)))


def test_image_rank_affine_on_polynomials():
    # an injective affine symbol keeps the full rank on polynomials
    theta = make([(0, 3)])
    assert image_rank(theta, Affine(0.5, 0.1)) == 3


def test_rotation_agreement(rng):
    for _ in range(200):
        theta = random_theta(rng)
        for d in divisors(theta.distinct_count):
            alpha = root_of_unity(1, d)
            assert is_invariant(theta, rotation(alpha)) == mult_match_rotation(theta, alpha)


def test_affine_agreement(rng):
    for _ in range(50):
        theta = random_theta(rng)
        while theta.distinct_count < 2:
            theta = random_theta(rng)
        group = enumerate_L_affine(theta)
        for phi in group.elements:
            assert is_invariant(theta, phi)
        for _ in range(20):
            a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
            assert not is_invariant(theta, affine(a, b))


def test_surjectivity_when_nonvanishing(rng):
    for _ in range(40):
        theta = random_theta(rng)
        for d in divisors(theta.distinct_count):
            phi = rotation(root_of_unity(1, d))
            if is_invariant(theta, phi):
                assert image_rank(theta, phi) == theta.degree


@given(products(origin=True), st.complex_numbers(max_magnitude=0.9))
def test_constants_are_not_surjective(theta, c):
    if theta.is_rotation:
        assert image_rank(theta, Constant(c)) == 1
        return
    assert is_invariant(theta, Constant(c))
    assert image_rank(theta, Constant(c)) < theta.degree


@given(products(max_distinct=3, max_mult=3, origin=True))
def test_span_columns_match_kernel_basis(theta):
    z = sample_points(4 * (theta.degree + 2))
    columns = span_columns(theta, z)
    kernels = np.array([f(z) for f in basis(theta)])
    for target in kernels:
        assert least_squares_residual(list(columns), target) < 1e-10
    # n independent columns containing the n kernels: the spans coincide
    assert np.linalg.cond((columns / np.linalg.norm(columns, axis=1)[:, None]).T) < 1e8


def test_high_degree_products_stay_decidable():
    theta = construct_example(6, 1)
    assert theta.degree == 21
    ok, residual = invariance_residual(theta, IDENTITY)
    assert ok and residual < 1e-10
    ok, residual = invariance_residual(theta, Rotation(-1))
    assert not ok and residual > 1e-3
