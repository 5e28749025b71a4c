import math

import numpy as np
import pytest

from su2_magnus.constants import Crossing, MethodKind, PeriodMode, PictureKind
from su2_magnus.exceptions import CrossingInStencil, DomainError, NotSpecialUnitary, ParameterOutOfRange
from su2_magnus.floquet import (
    MagnusMethod,
    ParityOp,
    QuasienergyResult,
    avg_transition_probability,
    bz_fold,
    clamp_unit,
    classify_crossing,
    eps_adiabatic,
    eps_from_gp_trace,
    eps_full_composed,
    eps_full_region1,
    eps_half_composed,
    eps_half_region1,
    eps_half_region2,
    fold_count,
    gp_identity_check,
    gp_sine_of,
    locate_avoided_gap,
    locate_exact_crossing,
    quasienergy_distance,
    sinc,
)
from su2_magnus.reports import CheckResult, SymmetryReport
from su2_magnus.su2 import IDENTITY, AngleAxis, magnus_rotation


def test_bz_fold():
    assert bz_fold(0.7) == pytest.approx(-0.3)
    assert bz_fold(1.2) == pytest.approx(0.2)
    assert bz_fold(0.5) == -0.5
    assert bz_fold(-0.5) == -0.5
    assert bz_fold(-0.2) == pytest.approx(-0.2)
    assert fold_count(0.7) == 1
    assert fold_count(-0.7) == -1
    assert fold_count(0.2) == 0


def test_quasienergy_distance_ignores_the_branch():
    assert quasienergy_distance(0.2, -0.2) == pytest.approx(0.0)
    assert quasienergy_distance(0.49, -0.49) == pytest.approx(0.0)
    assert quasienergy_distance(0.1, 0.3) == pytest.approx(0.2)
    assert quasienergy_distance(0.45, -0.47) == pytest.approx(0.02)


def test_clamp_unit(caplog):
    assert clamp_unit(0.3) == 0.3
    assert clamp_unit(-1.0) == -1.0
    assert clamp_unit(1.0 + 1e-12, "cos") == 1.0
    assert "Clamped cos" in caplog.text
    assert clamp_unit(-1.0 - 1e-12) == -1.0
    with pytest.raises(DomainError):
        clamp_unit(1.0 + 1e-6)


def test_sinc():
    assert sinc(0.0) == 1.0
    assert sinc(math.pi / 2) == pytest.approx(2 / math.pi)


def test_parity_operator():
    p = ParityOp(n_P=(3.0, 0.0, 4.0))
    assert p.n_P == pytest.approx((0.6, 0.0, 0.8))
    assert np.allclose(ParityOp.sigma_x().matrix() @ ParityOp.sigma_x().matrix(), IDENTITY)
    with pytest.raises(ValueError):
        ParityOp(n_P=(0.0, 0.0, 0.0))


def test_gp_trace_quasienergy(random_elements):
    for r in random_elements(10):
        sine = gp_sine_of(r.matrix(), ParityOp.sigma_z())
        assert sine == pytest.approx(math.sin(r.theta) * r.axis[2])
        eps = eps_from_gp_trace(r.matrix(), ParityOp.sigma_z())
        assert math.sin(math.pi * eps) == pytest.approx(sine)
        assert -0.5 <= eps <= 0.5
    with pytest.raises(NotSpecialUnitary):
        eps_from_gp_trace(2 * IDENTITY, ParityOp.sigma_z())


def test_gp_identity_of_a_parity_symmetric_product(random_elements):
    (r,) = random_elements(1)
    p = ParityOp.sigma_z()
    u_half = r.matrix()
    pu = p.matrix() @ u_half
    assert gp_identity_check(u_half, pu @ pu, p) == pytest.approx(0.0, abs=1e-14)


def test_classify_crossing():
    assert classify_crossing(IDENTITY) == Crossing.EXACT_CENTER
    assert classify_crossing(-IDENTITY) == Crossing.EXACT_BOUNDARY
    assert classify_crossing(AngleAxis.from_rotation(0.3, (1, 0, 0)).matrix()) == Crossing.NONE


def test_method_descriptors():
    m = MagnusMethod.parse("magnus:region1:3:half")
    assert (m.kind, m.picture, m.order, m.period) == (
        MethodKind.MAGNUS,
        PictureKind.REGION_I,
        3,
        PeriodMode.HALF,
    )
    assert m.label == "magnus:region1:3:half"
    assert m.column == "eps_region1_m3_half"
    assert MagnusMethod.parse("oracle").column == "eps_oracle"
    assert MagnusMethod.parse(" zma ").label == "zma"

    for bad in ("oracle:fast", "magnus:region1:3", "magnus:region4:3:half", "magnus:region1:-1:half", "exact"):
        with pytest.raises(ValueError):
            MagnusMethod.parse(bad)


def test_result_stays_in_the_zone():
    method = MagnusMethod(kind=MethodKind.ORACLE)
    assert float(QuasienergyResult(epsilon=-0.5, method=method)) == -0.5
    with pytest.raises(ValueError):
        QuasienergyResult(epsilon=0.5, method=method)


def test_bare_splitting():
    assert eps_full_region1(0.0, 0.0, 0.6).epsilon == pytest.approx(0.3)
    assert eps_half_region1(0.0, 0.0, 0.6).epsilon == pytest.approx(0.3)
    # the half-period formula keeps the sign
    assert eps_half_region1(0.0, 0.0, -0.6).epsilon == pytest.approx(-0.3)
    assert eps_full_region1(0.0, 0.0, -0.6).epsilon == pytest.approx(0.3)


def test_region1_formulas_agree_with_composition(rng):
    for _ in range(10):
        A = complex(*rng.normal(scale=0.5, size=2))
        C = float(rng.normal(scale=0.3))
        delta = float(rng.uniform(0.0, 2.0))
        picture = magnus_rotation(A, C)

        full = eps_full_region1(picture.theta, C, delta)
        composed = eps_full_composed(AngleAxis.from_rotation(math.pi * delta, (0, 0, 1)), picture)
        assert quasienergy_distance(full.epsilon, composed.epsilon) < 1e-12

        half = eps_half_region1(picture.theta, C, delta)
        frame = AngleAxis.from_rotation(0.5 * math.pi * delta, (0, 0, 1))
        half_composed = eps_half_composed(frame, picture, ParityOp.sigma_z())
        assert half.epsilon == pytest.approx(half_composed.epsilon, abs=1e-12)


def test_region2_formula_is_the_sigma_x_projection(rng):
    A = complex(*rng.normal(scale=0.5, size=2))
    picture = magnus_rotation(A, 0.0)
    half = eps_half_region2(A, picture.theta)
    composed = eps_half_composed(AngleAxis.identity(), picture, ParityOp.sigma_x())
    assert half.epsilon == pytest.approx(composed.epsilon, abs=1e-12)


def test_adiabatic_zeroth_order_keeps_the_phase():
    assert eps_adiabatic(1.2, 0.0, 0.0).epsilon == pytest.approx(1.2 / math.pi)
    folded = eps_adiabatic(4.0, 0.0, 0.0)
    assert folded.epsilon == pytest.approx(4.0 / math.pi - 1)
    assert folded.folds == 1
    assert eps_adiabatic(1.2, 0.1, 0.0).epsilon == pytest.approx(math.asin(math.sin(1.2) * math.cos(0.1)) / math.pi)


def test_coefficients_are_checked():
    with pytest.raises(ParameterOutOfRange):
        eps_half_region1(0.1, 0.5, 1.0)
    with pytest.raises(ParameterOutOfRange):
        eps_half_region2(0.1, -1.0)


def test_shirley_average():
    assert avg_transition_probability(lambda d: 0.3 * d, 0.7) == pytest.approx(0.32)
    # quadratic quasienergy, slope 2 * 0.1 * Delta
    assert avg_transition_probability(lambda d: 0.1 * d**2, 1.0) == pytest.approx(0.5 * (1 - 4 * 0.04), abs=1e-8)

    with pytest.raises(CrossingInStencil):
        avg_transition_probability(lambda d: 0.4 if d < 1.0 else -0.4, 1.0)
    with pytest.raises(CrossingInStencil):
        avg_transition_probability(lambda d: 0.5 * abs(d - 1.0), 1.0)


def test_locate_crossings():
    assert locate_exact_crossing(lambda x: math.sin(x - 0.3), 0.0, 1.0) == pytest.approx(0.3, abs=1e-7)
    with pytest.raises(ParameterOutOfRange):
        locate_exact_crossing(lambda x: x + 1.0, 0.0, 1.0)

    where, gap = locate_avoided_gap(lambda x: 0.5 * (0.9 - (x - 0.4) ** 2), 0.0, 1.0)
    assert where == pytest.approx(0.4, abs=1e-4)
    assert gap == pytest.approx(0.1, abs=1e-6)
    where, gap = locate_avoided_gap(lambda x: 0.1 + (x - 0.6) ** 2, 0.0, 1.0, boundary=False)
    assert where == pytest.approx(0.6, abs=1e-4)
    assert gap == pytest.approx(0.2, abs=1e-6)


def test_check_results_and_reports():
    ok = CheckResult.below("residual", 1e-9, 1e-8)
    bad = CheckResult.below("residual", 1e-7, 1e-8, note="(large)")
    info = CheckResult.informational("identity", 0.3, 1e-8, "(not claimed)")
    assert (ok.status, bad.status, info.status) == ("PASS", "FAIL", "INFO")
    assert bad.line().startswith("FAIL  residual: 1.000e-07")
    assert bad.line().endswith("(large)")

    report = SymmetryReport(title="demo", checks=[ok, info])
    assert report.passed
    assert report.available_checks == [ok]
    assert report.lines()[0] == "# demo"
    report.checks.append(bad)
    assert not report.passed
