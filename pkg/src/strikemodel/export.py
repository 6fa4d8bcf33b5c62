"""Trajectory CSV and JSON/text rendering of analysis results.

Numbers are written with 17 significant digits (``%.17g``) so doubles
survive a text round trip unchanged; JSON uses Python's shortest
round-tripping ``repr``.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

import numpy as np

from .equilibrium import EquilibriumResult
from .scenarios import ScenarioReport
from .simulator import Trajectory
from .stability import StabilityReport

CSV_HEADER = ("t", "u_f", "u_s", "u_p", "total")


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def trajectory_rows(traj: Trajectory, stride: int = 1) -> list[int]:
    if stride < 1:
        raise ValueError("stride must be >= 1")
    idx = list(range(0, len(traj), stride))
    if idx[-1] != len(traj) - 1:
        idx.append(len(traj) - 1)
    return idx


def write_trajectory_csv(traj: Trajectory, stride: int = 1) -> str:
    """Every *stride*-th sample plus the final one, as CSV text."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for k in trajectory_rows(traj, stride):
        u_f, u_s, u_p = (float(v) for v in traj.states[k])
        w.writerow([_g17(traj.times[k]), _g17(u_f), _g17(u_s), _g17(u_p), _g17(u_f + u_s + u_p)])
    return buf.getvalue()


def read_trajectory_csv(text: str) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of :func:`write_trajectory_csv`: ``(times, states)``."""
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    if header != CSV_HEADER:
        raise ValueError(f"unexpected header {header!r}")
    rows = [[float(x) for x in row] for row in reader if row]
    data = np.array(rows, dtype=float).reshape(-1, len(CSV_HEADER))
    return data[:, 0], data[:, 1:4]


def _complex_pairs(values) -> list[list[float]]:
    return [[float(complex(z).real), float(complex(z).imag)] for z in values]


def equilibrium_to_dict(eq: EquilibriumResult) -> dict[str, Any]:
    return {
        "state": None if eq.state is None else [float(x) for x in eq.state],
        "residual": float(eq.residual),
        "unique": bool(eq.unique),
    }


def stability_to_dict(rep: StabilityReport) -> dict[str, Any]:
    return {
        "jacobian": [float(x) for x in np.asarray(rep.jacobian).ravel()],
        "characteristic": {"c2": rep.poly.c2, "c1": rep.poly.c1, "c0": rep.poly.c0},
        "eigenvalues": _complex_pairs(rep.eigenvalues),
        "verdict": rep.verdict.value,
        "routh_hurwitz_stable": bool(rep.routh_hurwitz_stable),
    }


def report_to_dict(report: ScenarioReport) -> dict[str, Any]:
    stab = stability_to_dict(report.stability)
    out: dict[str, Any] = {
        "scenario": report.mask.name,
        "masked_parameters": report.masked_params.as_dict(),
        "equilibrium": {
            "state": [float(x) for x in report.equilibrium.state],
            "residual": float(report.equilibrium.residual),
        },
        **stab,
    }
    if report.expected_eigenvalues is not None:
        out["expected_eigenvalues"] = [float(x) for x in report.expected_eigenvalues]
    if report.eigenvalue_match is not None:
        out["eigenvalue_match"] = bool(report.eigenvalue_match)
    ts = report.trajectory_summary
    out["trajectory_summary"] = {
        "t_end": ts.t_end,
        "final_state": [float(x) for x in ts.final_state],
        "distance_to_equilibrium": float(ts.distance_to_equilibrium),
    }
    return out


def to_json(obj: dict[str, Any]) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _fmt_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.10g}"
    return f"{z.real:.10g} {'+' if z.imag > 0 else '-'} {abs(z.imag):.10g}i"


def _matrix_lines(m) -> list[str]:
    return ["  [" + "  ".join(f"{x:>14.8g}" for x in row) + " ]" for row in np.asarray(m)]


def equilibrium_text(eq: EquilibriumResult) -> str:
    if eq.state is None:
        return "equilibrium: singular system (no unique equilibrium)\n"
    lines = ["equilibrium"]
    lines += [f"  {name:<4} {value:.10g}" for name, value in zip(("U_f", "U_s", "U_p"), eq.state)]
    lines.append(f"  residual {eq.residual:.3e}")
    return "\n".join(lines) + "\n"


def stability_text(rep: StabilityReport) -> str:
    lines = ["jacobian"] + _matrix_lines(rep.jacobian)
    p = rep.poly
    lines.append(f"characteristic  x^3 + ({p.c2:.10g}) x^2 + ({p.c1:.10g}) x + ({p.c0:.10g})")
    lines.append("eigenvalues     " + ", ".join(_fmt_complex(z) for z in rep.eigenvalues))
    lines.append(f"verdict         {rep.verdict.value}")
    lines.append(f"routh-hurwitz   {'stable' if rep.routh_hurwitz_stable else 'not stable'}")
    return "\n".join(lines) + "\n"


def render_report(report: ScenarioReport, format: str = "text") -> str:
    if format == "json":
        return to_json(report_to_dict(report))
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    lines = [f"scenario        {report.mask.name}"]
    if report.mask.description:
        lines.append(f"                {report.mask.description}")
    zeroed = ", ".join(sorted(report.mask.zeroed_fields)) or "(none)"
    lines.append(f"zeroed          {zeroed}")
    lines.append("parameters")
    lines += [f"  {k:<13} {v:.10g}" for k, v in report.masked_params.as_dict().items()]
    out = "\n".join(lines) + "\n" + equilibrium_text(report.equilibrium) + stability_text(report.stability)
    extra = []
    if report.expected_eigenvalues is not None:
        extra.append("closed form     " + ", ".join(f"{x:.10g}" for x in report.expected_eigenvalues))
        extra.append(f"match           {'yes' if report.eigenvalue_match else 'no'}")
    ts = report.trajectory_summary
    extra.append(
        f"t={ts.t_end:g}: state ({', '.join(f'{x:.8g}' for x in ts.final_state)}), "
        f"distance to equilibrium {ts.distance_to_equilibrium:.3e}"
    )
    return out + "\n".join(extra) + "\n"
