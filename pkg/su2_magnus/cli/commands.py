"""Implementations of the ``lz``, ``rabi`` and ``report`` verbs."""
import logging
import math
from functools import partial
from typing import Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd

from su2_magnus.cli.config import SweepConfig
from su2_magnus.cli.tables import header_lines, run_rows, write_sidecar, write_table
from su2_magnus.constants import Crossing, DriveShape, MethodKind, ModelName
from su2_magnus.exceptions import ConfigError
from su2_magnus.floquet import (
    MagnusMethod,
    ParityOp,
    QuasienergyResult,
    bz_fold,
    eps_from_gp_trace,
    quasienergy_distance,
)
from su2_magnus.magnus import convergence_margin
from su2_magnus.models import (
    LzParams,
    RabiPoint,
    annotate_crossing,
    lz_exact,
    lz_magnus,
    lz_symmetry_report,
    rabi_quasienergy,
    rabi_symmetry_check,
)
from su2_magnus.oracle import quasienergy_numeric, spec_propagator, symmetry_verify
from su2_magnus.pictures import DriveSpec, build_adiabatic, build_region1, build_region2, load_sampled_drive
from su2_magnus.reports import CheckResult, SymmetryReport
from su2_magnus.settings import get_settings

logger = logging.getLogger(__name__)

AVOIDED_GAP_LIMIT = 0.2


def lz_row(gamma: float, orders: Sequence[int]) -> Dict[str, float]:
    p = LzParams(gamma=gamma)
    probability, stokes = lz_exact(p)
    row = {"gamma": gamma, "P_exact": probability, "phase_exact": stokes}
    for order in orders:
        row[f"P_m{order}"], phase = lz_magnus(p, order)
        if phase is not None:
            row[f"phase_m{order}"] = phase
    return row


def cmd_lz(config: SweepConfig) -> pd.DataFrame:
    """Transition probability and Stokes phase along a gamma sweep, exact and per Magnus order."""
    orders = sorted({m.order for m in config.methods})
    rows = run_rows(partial(lz_row, orders=orders), config.grid(), config.workers, config.progress, "gamma")
    df = pd.DataFrame(rows)
    columns = ["gamma", "P_exact"] + [f"P_m{n}" for n in orders] + ["phase_exact"]
    columns += [f"phase_m{n}" for n in orders if n > 1]
    df = df[columns]

    header = config.header()
    errors = {}
    for n in orders:
        errors[f"P_m{n}"] = float(np.max(np.abs(df[f"P_m{n}"] - df["P_exact"])))
        header[f"max|P_m{n} - P_exact|"] = f"{errors[f'P_m{n}']:.3e}"
    if 3 in orders:
        tolerance = get_settings().lz_order3_tolerance
        verdict = "PASS" if errors["P_m3"] <= tolerance else "FAIL"
        logger.info("%s max|P_m3 - P_exact| = %.3e (tolerance %.1e)", verdict, errors["P_m3"], tolerance)
    write_table(df, header, config.out)
    if config.out:
        write_sidecar(config.out, config, df, {"max_abs_error": errors})
    return df


def _point(config: SweepConfig, value: float) -> Tuple[RabiPoint, int]:
    params = {"delta": config.param("delta", 1.0), "g": config.param("g", 1.0)}
    params[config.axis] = value
    return RabiPoint.canonical(params["delta"], params["g"], config.shape)


def rabi_row(value: float, config: SweepConfig) -> Dict[str, object]:
    pt, sign = _point(config, value)
    spec = pt.drive_spec()
    signed = eps_from_gp_trace(spec_propagator(spec, math.pi, tolerance=config.tolerance), ParityOp.sigma_z())
    row = {config.axis: value, "eps_exact": bz_fold(sign * signed)}
    for method in config.methods:
        if method.kind == MethodKind.ORACLE:
            result = quasienergy_numeric(pt, tolerance=config.tolerance)
        else:
            result = rabi_quasienergy(pt, method)
        row[method.column] = bz_fold(sign * result.epsilon)
        if result.certified is not None:
            row[f"certified_{method.column}"] = result.certified
            row[f"margin_{method.column}"] = result.margin
    exact = QuasienergyResult(epsilon=bz_fold(signed), method=MagnusMethod(kind=MethodKind.ORACLE))
    row["crossing_exact"] = annotate_crossing(exact).crossing.value
    return row


def annotate_sweep(values: Sequence[float]) -> List[str]:
    """Crossing labels along a scan of a signed quasienergy.

    A sign change through zero marks an exact centre crossing, a jump across the zone edge an exact
    boundary crossing. Local minima of the centre gap ``2|eps|`` or the boundary gap ``1 - 2|eps|`` without
    such a change mark avoided crossings.
    """
    eps = np.asarray(values, dtype=float)
    labels = [Crossing.NONE.value] * len(eps)
    for i in range(len(eps) - 1):
        closer = i if abs(eps[i]) <= abs(eps[i + 1]) else i + 1
        if abs(eps[i + 1] - eps[i]) > 0.5:
            labels[i if abs(eps[i]) >= abs(eps[i + 1]) else i + 1] = Crossing.EXACT_BOUNDARY.value
        elif eps[i] * eps[i + 1] < 0 or eps[i] == 0:
            labels[closer] = Crossing.EXACT_CENTER.value
    size = np.abs(eps)
    for i in range(1, len(eps) - 1):
        if labels[i - 1 : i + 2] != [Crossing.NONE.value] * 3:
            continue
        if size[i] < size[i - 1] and size[i] < size[i + 1] and 2 * size[i] < AVOIDED_GAP_LIMIT:
            labels[i] = f"{Crossing.AVOIDED.value}(gap={2 * size[i]:.3g})"
        elif size[i] > size[i - 1] and size[i] > size[i + 1] and 1 - 2 * size[i] < AVOIDED_GAP_LIMIT:
            labels[i] = f"{Crossing.AVOIDED.value}(gap={1 - 2 * size[i]:.3g})"
    return labels


def cmd_rabi(config: SweepConfig) -> pd.DataFrame:
    """Quasienergies along a Delta or g scan: the exact reference plus every requested method."""
    if config.axis is None:
        raise ConfigError("the rabi verb needs a sweep axis", field="axis")
    if config.samples is not None:
        raise ConfigError("sampled drives are only checked by the report verb", field="samples")
    rows = run_rows(partial(rabi_row, config=config), config.grid(), config.workers, config.progress, config.axis)
    df = pd.DataFrame(rows)
    df["crossing_exact"] = [
        label if label != Crossing.NONE.value else scanned
        for label, scanned in zip(df["crossing_exact"], annotate_sweep(df["eps_exact"]))
    ]
    for method in config.methods:
        df[f"crossing_{method.column}"] = annotate_sweep(df[method.column])
    write_table(df, config.header(), config.out)
    if config.out:
        write_sidecar(config.out, config, df)
    return df


def _certificates(spec: DriveSpec) -> SymmetryReport:
    report = SymmetryReport(title="Magnus convergence certificates over one period (int |v| < pi)")
    builders = [("region I", build_region1), ("region II", build_region2)]
    if spec.delta > 0:
        builders.append(("adiabatic", lambda s: build_adiabatic(s)[0]))
    for name, builder in builders:
        margin = convergence_margin(builder(spec).drive).margin
        note = "(certified)" if margin < math.pi else "(not certified)"
        report.checks.append(CheckResult.informational(f"{name} margin", margin, math.pi, note))
    return report


def _gp_trace_consistency(spec: DriveSpec, tolerance: float = None) -> SymmetryReport:
    report = SymmetryReport(title="quasienergy from U(pi) with parity against U(2 pi)")
    signed = eps_from_gp_trace(spec_propagator(spec, math.pi, tolerance=tolerance), ParityOp.sigma_z())
    numeric = quasienergy_numeric(spec, tolerance=tolerance).epsilon
    distance = quasienergy_distance(signed, numeric)
    report.checks.append(CheckResult.below("|eps_GP - eps_2pi|", distance, get_settings().gp_violation_tolerance))
    return report


def cmd_report(config: SweepConfig) -> List[str]:
    """PASS/FAIL lines of every invariant suite at one parameter point."""
    reports = []
    if config.samples is not None:
        spec = load_sampled_drive(
            config.samples, config.param("delta", 1.0), config.param("g", 1.0), period=2 * math.pi
        )
        reports.append(symmetry_verify(spec, gp=True, tolerance=config.tolerance))
    else:
        if config.model == ModelName.RABI:
            pt = RabiPoint(delta=config.param("delta", 1.0), g=config.param("g", 1.0), shape=config.shape)
            spec = pt.drive_spec()
            reports.append(_certificates(spec))
            reports.append(symmetry_verify(spec, tolerance=config.tolerance))
            reports.append(rabi_symmetry_check(pt))
            if spec.shape in (DriveShape.COS, DriveShape.SIN):
                reports.append(_gp_trace_consistency(spec, config.tolerance))
        else:
            gamma = config.param("gamma", 0.5)
            reports.append(lz_symmetry_report(LzParams(gamma=gamma), int(config.param("order", 3))))

    lines = header_lines(config.header())
    for report in reports:
        lines.extend(report.lines())
    verdict = all(report.passed for report in reports)
    lines.append(f"# overall: {'PASS' if verdict else 'FAIL'}")
    text = "\n".join(lines) + "\n"
    if config.out:
        config.out.write_text(text)
        write_sidecar(config.out, config, extra={"passed": verdict})
    else:
        print(text, end="")
    return lines
