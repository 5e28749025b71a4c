import math

import numpy as np
import pytest

from su2_magnus.constants import DriveShape, PictureKind, Region
from su2_magnus.exceptions import NonPeriodicDrive, ParameterOutOfRange
from su2_magnus.magnus import convergence_margin, magnus_propagator, recursive_magnus
from su2_magnus.oracle import PropagatorRequest, propagate, spec_propagator
from su2_magnus.pictures import (
    DriveSpec,
    amplitudes_first_order,
    amplitudes_from_magnus,
    build_adiabatic,
    build_picture,
    build_region1,
    build_region2,
    classify_region,
    dynamical_phase,
    load_sampled_drive,
    monotone_segments,
    physical_propagator,
)
from su2_magnus.pictures.frames import _phase_by_quadrature
from su2_magnus.su2 import HADAMARD, IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z, frobenius_distance


@pytest.fixture
def triangle():
    return DriveSpec(
        delta=1.0,
        g=0.5,
        shape=DriveShape.SAMPLED,
        period=2 * math.pi,
        sample_times=[0.0, math.pi, 2 * math.pi],
        sample_values=[0.0, 1.0, 0.0],
    )


def test_drive_spec_defaults_and_validation():
    spec = DriveSpec(delta=1.0, g=2.0)
    assert spec.shape == DriveShape.COS
    assert spec.period == pytest.approx(2 * math.pi)
    assert spec.f(0.0) == pytest.approx(2.0)
    assert spec.with_parameters(g=-2.0).f(0.0) == pytest.approx(-2.0)

    with pytest.raises(ValueError):
        DriveSpec(delta=1.0, g=1.0, omega=2.0)
    with pytest.raises(ValueError):
        DriveSpec(delta=1.0, g=1.0, period=3.0)
    with pytest.raises(ValueError):
        DriveSpec(delta=1.0, g=1.0, shape=DriveShape.LINEAR, period=3.0)
    with pytest.raises(ValueError):
        DriveSpec(
            delta=1.0, g=1.0, shape=DriveShape.SAMPLED, sample_times=[0.0, 1.0, 0.5], sample_values=[0, 0, 0]
        )
    with pytest.raises(ValueError):
        DriveSpec(delta=float("nan"), g=1.0)


def test_shape_integrals():
    t = np.linspace(-3.0, 3.0, 13)
    for shape in (DriveShape.COS, DriveShape.SIN, DriveShape.SECH, DriveShape.LINEAR):
        spec = DriveSpec(delta=1.0, g=1.0, shape=shape)
        assert spec.shape_integral(0.0) == pytest.approx(0.0, abs=1e-15)
        numeric = np.gradient(spec.shape_integral(t), t[1] - t[0])
        assert np.max(np.abs(numeric[1:-1] - spec.shape_value(t[1:-1]))) < 0.1
        assert spec.shape_derivative(1.0) == pytest.approx(
            (spec.shape_value(1.0 + 1e-6) - spec.shape_value(1.0 - 1e-6)) / 2e-6, rel=1e-6
        )


def test_sampled_drive_is_periodic(triangle):
    assert triangle.shape_value(0.5 * math.pi) == pytest.approx(0.5)
    assert triangle.shape_value(2.5 * math.pi) == pytest.approx(0.5)
    assert triangle.shape_integral(2 * math.pi) == pytest.approx(math.pi)
    assert triangle.shape_integral(4 * math.pi) == pytest.approx(2 * math.pi)
    assert triangle.shape_derivative(0.5 * math.pi) == pytest.approx(1 / math.pi)
    assert triangle.shape_derivative(1.5 * math.pi) == pytest.approx(-1 / math.pi)
    assert monotone_segments(triangle, 0.0, 2 * math.pi) == pytest.approx([math.pi])
    assert monotone_segments(triangle, 0.0, 4 * math.pi) == pytest.approx([math.pi, 2 * math.pi, 3 * math.pi])


def test_aperiodic_samples_extrapolate_constantly():
    spec = DriveSpec(
        delta=1.0, g=1.0, shape=DriveShape.SAMPLED, sample_times=[0.0, 1.0], sample_values=[1.0, 1.0]
    )
    assert not spec.is_periodic
    assert spec.shape_integral(3.0) == pytest.approx(3.0)
    assert spec.shape_integral(-1.0) == pytest.approx(-1.0)
    with pytest.raises(NonPeriodicDrive):
        spec.require_periodic()


def test_load_sampled_drive(tmp_path):
    path = tmp_path / "drive.txt"
    times = np.linspace(0.0, 2 * math.pi, 9)
    rows = ["# time, shape"] + [f"{t:.15f}, {math.cos(t):.15f}" for t in times]
    path.write_text("\n".join(rows) + "\n")
    spec = load_sampled_drive(path, delta=0.5, g=1.0, period=2 * math.pi)
    assert spec.shape == DriveShape.SAMPLED
    assert len(spec.sample_times) == 9
    assert spec.f(0.0) == pytest.approx(1.0)

    bad = tmp_path / "bad.txt"
    bad.write_text("0.0 1.0 2.0\n1.0 0.0 0.0\n")
    with pytest.raises(ParameterOutOfRange):
        load_sampled_drive(bad, delta=0.5, g=1.0)
    short = tmp_path / "short.txt"
    short.write_text("0.0 1.0\n")
    with pytest.raises(ParameterOutOfRange):
        load_sampled_drive(short, delta=0.5, g=1.0)


def test_monotone_segments_of_harmonic_drives():
    cos = DriveSpec(delta=1.0, g=1.0)
    sin = DriveSpec(delta=1.0, g=1.0, shape=DriveShape.SIN)
    assert monotone_segments(cos, 0.0, 2 * math.pi) == pytest.approx([math.pi])
    assert monotone_segments(sin, 0.0, 2 * math.pi) == pytest.approx([0.5 * math.pi, 1.5 * math.pi])
    assert monotone_segments(DriveSpec(delta=1.0, g=1.0, shape=DriveShape.SECH), -5.0, 5.0) == [0.0]
    assert monotone_segments(cos.with_parameters(g=0.0), 0.0, 10.0) == []


def test_classify_region():
    assert classify_region(DriveSpec(delta=0.5, g=0.3)) == Region.R1
    assert classify_region(DriveSpec(delta=0.3, g=0.5)) == Region.R2
    assert classify_region(DriveSpec(delta=2.0, g=0.5)) == Region.R1
    assert classify_region(DriveSpec(delta=0.5, g=2.0)) == Region.R2
    assert classify_region(DriveSpec(delta=2.0, g=2.0)) == Region.R3
    with pytest.raises(NonPeriodicDrive):
        classify_region(DriveSpec(delta=1.0, g=1.0, shape=DriveShape.LINEAR))


def test_dynamical_phase_closed_forms():
    for shape in (DriveShape.COS, DriveShape.SIN):
        spec = DriveSpec(delta=0.8, g=1.3, shape=shape)
        closed, numeric = dynamical_phase(spec, t0=0.4), _phase_by_quadrature(spec, 0.4)
        for t in (0.4, 1.0, 5.0, 9.0):
            assert float(closed(t)) == pytest.approx(float(numeric(t)), abs=1e-10)

    linear = DriveSpec(delta=0.7, g=0.3, shape=DriveShape.LINEAR)
    closed, numeric = dynamical_phase(linear, t0=-4.0), _phase_by_quadrature(linear, -4.0)
    assert float(closed(4.0)) == pytest.approx(float(numeric(4.0)), abs=1e-10)

    # no drive: phi = Delta t / 2
    assert float(dynamical_phase(DriveSpec(delta=0.8, g=0.0))(2.0)) == pytest.approx(0.8)


def test_window_is_required_off_period():
    with pytest.raises(ParameterOutOfRange):
        build_region1(DriveSpec(delta=1.0, g=1.0, shape=DriveShape.LINEAR))
    with pytest.raises(ParameterOutOfRange):
        build_adiabatic(DriveSpec(delta=0.0, g=1.0))


@pytest.mark.parametrize(
    "kind, delta, g",
    [
        (PictureKind.REGION_I, 1.0, 0.2),
        (PictureKind.REGION_II, 0.1, 1.5),
        (PictureKind.ADIABATIC, 4.0, 1.0),
    ],
)
def test_pictures_reproduce_the_physical_propagator(kind, delta, g):
    spec = DriveSpec(delta=delta, g=g)
    ctx = build_picture(spec, kind, window=(0.0, math.pi))
    assert ctx.kind == kind
    u_picture = magnus_propagator(recursive_magnus(ctx.drive, 9))
    u = physical_propagator(ctx, u_picture, math.pi, 0.0)
    assert frobenius_distance(u, spec_propagator(spec, math.pi)) < 1e-6


def test_adiabatic_frame_starts_at_zero_phase():
    ctx, frame = build_adiabatic(DriveSpec(delta=1.0, g=1.0, shape=DriveShape.SIN), t0=0.0)
    assert ctx.kind == PictureKind.ADIABATIC
    assert float(frame.phi(0.0)) == pytest.approx(0.0, abs=1e-15)
    assert float(frame.chi(0.5 * math.pi)) == pytest.approx(math.pi / 4)


def test_amplitudes_match_the_matrix(rng):
    spec = DriveSpec(delta=1.0, g=0.4)
    mc = recursive_magnus(build_region1(spec).drive, 3)
    alpha, beta = amplitudes_from_magnus(mc)
    u = mc.propagator()
    assert alpha == pytest.approx(u[0, 0])
    assert beta == pytest.approx(u[1, 0])
    assert abs(alpha) ** 2 + abs(beta) ** 2 == pytest.approx(1.0)

    A1 = complex(*rng.normal(size=2))
    alpha, beta = amplitudes_first_order(A1)
    assert alpha == pytest.approx(math.cos(abs(A1)))
    assert abs(beta) == pytest.approx(abs(math.sin(abs(A1))))


def test_adiabatic_margin_of_monotone_drives(rng):
    for _ in range(10):
        delta, g, half_width = rng.uniform(0.3, 3.0), rng.uniform(0.1, 2.0), rng.uniform(1.0, 8.0)
        spec = DriveSpec(delta=delta, g=g, shape=DriveShape.LINEAR)
        ctx, _ = build_adiabatic(spec, t0=-half_width, window=(-half_width, half_width))
        assert convergence_margin(ctx.drive).margin <= 0.5 * math.pi + 1e-10
    for _ in range(10):
        spec = DriveSpec(delta=rng.uniform(0.2, 3.0), g=rng.uniform(0.1, 3.0))
        # the cosine is monotone on half a period
        ctx, _ = build_adiabatic(spec, window=(0.0, math.pi))
        assert convergence_margin(ctx.drive).margin <= 0.5 * math.pi + 1e-10


def test_adiabatic_margin_of_a_bell_shaped_drive():
    spec = DriveSpec(delta=0.5, g=2.0, shape=DriveShape.SECH)
    ctx, _ = build_adiabatic(spec, t0=-12.0, window=(-12.0, 12.0))
    margin = convergence_margin(ctx.drive).margin
    assert margin < math.pi
    # chi rises to arctan(g / Delta) and falls back
    assert margin == pytest.approx(math.atan(4.0), abs=1e-3)


def test_region2_swap_is_an_involution():
    assert frobenius_distance(HADAMARD @ HADAMARD, IDENTITY) < 1e-15
    assert frobenius_distance(HADAMARD @ SIGMA_X @ HADAMARD, SIGMA_Z) < 1e-15
    assert frobenius_distance(HADAMARD @ SIGMA_Z @ HADAMARD, SIGMA_X) < 1e-15
    assert frobenius_distance(HADAMARD @ SIGMA_Y @ HADAMARD, -SIGMA_Y) < 1e-15

    spec = DriveSpec(delta=0.3, g=1.2)
    ctx = build_region2(spec, window=(0.0, math.pi))
    assert ctx.swapped
    u = spec_propagator(spec, math.pi)
    assert frobenius_distance(HADAMARD @ (HADAMARD @ u @ HADAMARD) @ HADAMARD, u) < 1e-14


@pytest.mark.parametrize("kind", [PictureKind.REGION_I, PictureKind.REGION_II, PictureKind.ADIABATIC])
def test_frames_are_consistent_between_pictures(kind, rng):
    for _ in range(3):
        spec = DriveSpec(delta=rng.uniform(0.3, 2.0), g=rng.uniform(0.2, 2.0))
        t = float(rng.uniform(0.5, 2 * math.pi))
        ctx = build_picture(spec, kind)

        def hamiltonian(s):
            return complex(ctx.drive.sample(np.array([s]))[0]), 0.0

        u_picture = propagate(PropagatorRequest(hamiltonian=hamiltonian, t0=0.0, t1=t))
        u = physical_propagator(ctx, u_picture, t, 0.0)
        assert frobenius_distance(u, spec_propagator(spec, t)) < 1e-7
