import math

import numpy as np
import pytest
from scipy.linalg import expm

from su2_magnus.exceptions import NotSpecialUnitary
from su2_magnus.su2 import (
    IDENTITY,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    AngleAxis,
    MagnusCoefficients,
    compose_bch,
    frobenius_distance,
    from_magnus_coeffs,
    magnus_exponential,
    magnus_rotation,
    principal_log,
    to_matrix,
)


def test_quarter_turn_about_x():
    u = to_matrix(AngleAxis.from_rotation(math.pi / 4, (1, 0, 0)))
    assert frobenius_distance(u, (IDENTITY - 1j * SIGMA_X) / math.sqrt(2)) < 1e-14

    half_turn = to_matrix(AngleAxis.from_rotation(math.pi / 2, (1, 0, 0)))
    assert frobenius_distance(half_turn, -1j * SIGMA_X) < 1e-14


def test_identity_and_degenerate():
    e = AngleAxis.identity()
    assert e.degenerate
    assert frobenius_distance(e.matrix(), IDENTITY) == 0

    minus_one = AngleAxis.from_rotation(math.pi, (0, 1, 0)).canonical()
    assert frobenius_distance(minus_one.matrix(), -IDENTITY) < 1e-14
    assert from_magnus_coeffs(0j, 0.0).degenerate


def test_from_rotation_folds_large_angles():
    r = AngleAxis.from_rotation(1.5 * math.pi, (0, 0, 1))
    assert r.folded
    assert r.theta == pytest.approx(0.5 * math.pi)
    assert r.axis == pytest.approx((0, 0, -1))

    negative = AngleAxis.from_rotation(-0.3, (2, 0, 0))
    assert negative.theta == pytest.approx(0.3)
    assert negative.axis == pytest.approx((-1, 0, 0))


def test_axis_must_be_unit():
    with pytest.raises(ValueError):
        AngleAxis(theta=0.4, axis=(1.0, 1.0, 0.0))
    with pytest.raises(ValueError):
        AngleAxis(theta=-0.1)


def test_magnus_exponential_matches_expm(rng):
    for _ in range(20):
        A = complex(*rng.normal(size=2)) * 2
        C = float(rng.normal()) * 2
        omega = A * SIGMA_PLUS + np.conj(A) * SIGMA_MINUS + C * SIGMA_Z
        assert frobenius_distance(magnus_exponential(A, C), expm(-1j * omega)) < 1e-12


def test_from_magnus_coeffs_is_canonical():
    r = from_magnus_coeffs(4.0 + 0j, 0.0)
    assert r.theta == pytest.approx(2 * math.pi - 4.0)
    assert r.axis == pytest.approx((-1, 0, 0))
    assert r.folded

    raw = magnus_rotation(4.0 + 0j, 0.0)
    assert raw.theta == pytest.approx(4.0)
    assert raw.axis == pytest.approx((1, 0, 0))
    assert not raw.folded
    assert frobenius_distance(to_matrix(r), to_matrix(raw)) < 1e-12

    r = from_magnus_coeffs(1j, 0.0)
    assert r.axis == pytest.approx((0, -1, 0))
    assert from_magnus_coeffs(0.3 + 0.2j, -0.1) == magnus_rotation(0.3 + 0.2j, -0.1)


def test_compose_bch_matches_matrix_product(random_elements):
    elements = random_elements(2000)
    for first, second in zip(elements[::2], elements[1::2]):
        product = compose_bch(first, second)
        assert 0 <= product.theta <= math.pi
        assert frobenius_distance(product.matrix(), first.matrix() @ second.matrix()) < 1e-10


def test_compose_with_inverse_is_identity(random_elements):
    for r in random_elements(10):
        assert frobenius_distance(compose_bch(r, r.inverse()).matrix(), IDENTITY) < 1e-12


def test_compose_is_associative(random_elements):
    a, b, c = random_elements(3)
    left = compose_bch(compose_bch(a, b), c)
    right = compose_bch(a, compose_bch(b, c))
    assert frobenius_distance(left.matrix(), right.matrix()) < 1e-12


def test_principal_log_round_trip(random_elements):
    for r in random_elements(1000):
        recovered = principal_log(r.matrix())
        assert recovered.theta == pytest.approx(r.theta, abs=1e-10)
        assert frobenius_distance(recovered.matrix(), r.matrix()) < 1e-10
        assert frobenius_distance(principal_log(recovered.matrix()).matrix(), r.matrix()) < 1e-10


def test_principal_log_rejects_non_unitary():
    with pytest.raises(NotSpecialUnitary):
        principal_log(2 * IDENTITY)
    with pytest.raises(NotSpecialUnitary):
        principal_log(1j * IDENTITY)
    with pytest.raises(NotSpecialUnitary):
        principal_log(np.eye(3))


def test_sin_axis_of_pauli_components():
    r = AngleAxis.from_rotation(0.7, (0, 1, 0))
    assert r.sin_axis() == pytest.approx((0, math.sin(0.7), 0))
    u = r.matrix()
    assert frobenius_distance(u, math.cos(0.7) * IDENTITY - 1j * math.sin(0.7) * SIGMA_Y) < 1e-14


def test_magnus_coefficients_totals_and_residual():
    mc = MagnusCoefficients(order=3, A=[1.0, 0.0, 0.1j], C=[0.0, 0.2, 0.0], time=1.0)
    assert mc.A_total == pytest.approx(1.0 + 0.1j)
    assert mc.C_total == pytest.approx(0.2)
    assert mc.vanishing_residual() == 0.0
    assert mc.truncate(2).A_total == pytest.approx(1.0)
    assert frobenius_distance(mc.propagator(), magnus_exponential(1.0 + 0.1j, 0.2)) < 1e-14

    with pytest.raises(ValueError):
        mc.truncate(4)
    with pytest.raises(ValueError):
        MagnusCoefficients(order=2, A=[1.0], C=[0.0, 0.0], time=0.0)
