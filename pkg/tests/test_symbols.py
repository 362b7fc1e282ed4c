import cmath

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mobiusmodel.errors import DegeneracyError, DomainError
from mobiusmodel.numerics import root_of_unity
from mobiusmodel.symbols import (
    IDENTITY,
    INF,
    Affine,
    Constant,
    Moebius,
    Rotation,
    affine,
    apply,
    compose,
    disc_automorphism,
    equal,
    from_coefficients,
    inverse,
    is_disc_self_map,
    iterate,
    moebius,
    order,
    rotation,
    through_points,
    tilde,
)

from conftest import coefficient, disc_points, unit_complex

INVOLUTION = Affine(-1, 16 / 3)


@st.composite
def moebius_maps(draw):
    a, b, c, d = (draw(coefficient()) for _ in range(4))
    scale = max(abs(a), abs(b), abs(c), abs(d))
    assume(scale > 0.1 and abs(a * d - b * c) > 0.05 * scale**2)
    return from_coefficients(a, b, c, d)


@st.composite
def elliptic_maps(draw, max_order=24):
    """Conjugates of rotations of finite order by random Moebius maps."""
    n = draw(st.integers(1, max_order))
    k = draw(st.integers(0, n - 1))
    T = draw(moebius_maps())
    return compose(inverse(T), compose(rotation(root_of_unity(k, n)), T))


# -- canonicalization ------------------------------------------------------


def test_canonical_forms():
    assert rotation(1) is IDENTITY
    assert affine(1j, 0) == Rotation(1j)
    assert from_coefficients(2, 4, 0, 2) == Affine(1, 2)
    assert from_coefficients(2, 1, 1, 4) == Moebius(0.5, 0.25, 0.25, 1)
    phi = from_coefficients(1j, 0, 1j, 1j)
    assert phi.a == 1 and abs(phi.c - 1) < 1e-15
    assert isinstance(from_coefficients(1, 2, 2, 4), Constant)


@pytest.mark.parametrize(
    "make_bad",
    [
        lambda: Rotation(0.5),
        lambda: Affine(0, 1),
        lambda: Moebius(1, 2, 2, 4),
        lambda: moebius(1, 2, 2, 4),
        lambda: Constant(complex("inf")),
        lambda: disc_automorphism(1, 1.2),
    ],
)
def test_invalid_symbols(make_bad):
    with pytest.raises(DomainError):
        make_bad()


def test_degenerate_coefficients():
    with pytest.raises(DegeneracyError):
        from_coefficients(0, 0, 0, 0)
    with pytest.raises(DegeneracyError):
        from_coefficients(1, 1, 0, 0)


# -- apply -----------------------------------------------------------------


def test_apply_examples():
    assert apply(Rotation(1j), 0.5) == 0.5j
    fix2 = through_points([2, 0, -1], [2, 0.1, -0.5])
    assert abs(apply(fix2, 2) - 2) < 1e-12
    assert apply(INVOLUTION, 0.3) == pytest.approx(16 / 3 - 0.3)
    assert INVOLUTION(0.3) == apply(INVOLUTION, 0.3)
    assert apply(Constant(0.3), 5) == 0.3


def test_apply_infinity():
    assert apply(Affine(2, 1), INF) == INF
    assert apply(moebius(0, 1, 1, 0), 0) == INF
    assert apply(moebius(0, 1, 1, 0), INF) == 0
    assert apply(moebius(1, 0, 2, 1), INF) == 0.5


# -- compose / inverse / order --------------------------------------------


def test_compose_examples():
    assert compose(Rotation(1j), Rotation(1j)) == Rotation(-1)
    assert compose(INVOLUTION, INVOLUTION) is IDENTITY
    phi = moebius(1, 2, 3, 5)
    assert compose(IDENTITY, phi) == phi
    assert compose(phi, Constant(0.5)) == Constant(apply(phi, 0.5))
    assert compose(Constant(0.2), phi) == Constant(0.2)
    with pytest.raises(DegeneracyError):
        compose(moebius(0, 1, 1, 0), Constant(0))


def test_inverse_examples():
    assert inverse(Rotation(1j)) == Rotation(-1j)
    assert inverse(Constant(0.3)) is None
    swap = moebius(0, 1, 1, 0)
    assert equal(inverse(swap), swap)


def test_order_examples():
    assert order(Rotation(root_of_unity(1, 6))) == 6
    assert order(INVOLUTION) == 2
    assert order(Affine(0.5, 0)) is None
    assert order(Constant(0.1)) is None
    assert order(IDENTITY) == 1
    assert order(disc_automorphism(1, 0.5)) is None


def test_iterate():
    assert equal(iterate(Rotation(1j), 3), Rotation(-1j))
    assert iterate(INVOLUTION, 0) is IDENTITY


# -- tilde ----------------------------------------------------------------


def test_tilde_examples():
    a, b = 0.3 + 0.1j, -0.2 + 0.5j
    dual = tilde(Affine(a, b))
    assert equal(dual, moebius(a.conjugate(), 0, -b.conjugate(), 1))
    assert tilde(IDENTITY) is IDENTITY
    involution = moebius(-1, 0.5, -0.5, 1)
    assert equal(tilde(involution), involution)
    with pytest.raises(DomainError):
        tilde(Constant(0.5))


# -- disc self-map test ----------------------------------------------------


def test_disc_self_map_examples(rng):
    assert is_disc_self_map(Affine(0.5, 0.5))
    assert not is_disc_self_map(Affine(1, 0.1))
    auto = disc_automorphism(cmath.exp(1j * cmath.pi / 3), 0.2)
    assert is_disc_self_map(auto)
    z = np.sqrt(rng.uniform(0, 1, 50)) * np.exp(2j * np.pi * rng.uniform(0, 1, 50))
    assert all(abs(apply(auto, w)) < 1 for w in z)
    assert is_disc_self_map(Constant(0.5)) and not is_disc_self_map(Constant(1))
    assert not is_disc_self_map(moebius(1, 0, 1, -1))  # pole on the circle
    assert not is_disc_self_map(moebius(0, 1, 1, 0))  # 1/z
    assert is_disc_self_map(moebius(1, 0, 0.25, 2))


@settings(max_examples=200)
@given(moebius_maps(), st.lists(disc_points(0, 0.99), min_size=20, max_size=20))
def test_disc_self_map_agrees_with_sampling(phi, points):
    if is_disc_self_map(phi):
        assert all(abs(apply(phi, z)) < 1 + 1e-9 for z in points)


# -- properties -----------------------------------------------------------


@settings(max_examples=200)
@given(moebius_maps())
def test_compose_with_inverse_is_identity(phi):
    assert equal(compose(phi, inverse(phi)), IDENTITY)
    assert equal(compose(inverse(phi), phi), IDENTITY)


@settings(max_examples=200)
@given(moebius_maps())
def test_tilde_is_an_involution(phi):
    assert equal(tilde(tilde(phi)), phi)


@settings(max_examples=200)
@given(moebius_maps())
def test_tilde_preserves_disc_self_maps(phi):
    assert is_disc_self_map(phi) == is_disc_self_map(tilde(phi))


@settings(max_examples=200)
@given(unit_complex(), disc_points(0, 0.95))
def test_tilde_of_automorphism_is_automorphism(omega, a):
    phi = disc_automorphism(omega, a)
    assert is_disc_self_map(phi) and is_disc_self_map(tilde(phi))


@settings(max_examples=100)
@given(elliptic_maps())
def test_tilde_preserves_order(phi):
    n = order(phi)
    assert n is not None and n <= 24
    assert order(tilde(phi)) == n


@given(moebius_maps(), moebius_maps(), st.lists(disc_points(), min_size=20, max_size=20))
def test_compose_is_pointwise(phi, psi, points):
    chi = compose(phi, psi)
    for z in points:
        inner = apply(psi, z)
        if abs(inner) > 1e6 or abs(apply(chi, z)) > 1e6:
            continue
        assert abs(apply(chi, z) - apply(phi, inner)) < 1e-10 * max(1, abs(apply(chi, z)))


@given(
    st.lists(disc_points(0, 2), min_size=3, max_size=3, unique=True),
    st.lists(disc_points(0, 2), min_size=3, max_size=3, unique=True),
)
def test_through_points(sources, targets):
    assume(all(abs(p - q) > 0.05 for i, p in enumerate(sources) for q in sources[i + 1 :]))
    assume(all(abs(p - q) > 0.05 for i, p in enumerate(targets) for q in targets[i + 1 :]))
    phi = through_points(sources, targets)
    for s, t in zip(sources, targets):
        assert abs(apply(phi, s) - t) < 1e-8
