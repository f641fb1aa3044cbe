"""Report assembly and rendering.

Reports are plain nested dicts with a fixed key order. JSON rendering rounds
every float to 10 significant digits so identical inputs give identical
bytes; the text rendering walks the same structure, so both formats carry
the same information.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from typing import Any, Optional

from . import __version__
from .benford import DIGITS, DigitDistribution, FirstDigitCounts
from .gof import GofResult
from .ingest import LedgerLoad, SamplingPlan
from .mi_matrix import MICell, describe
from .montecarlo import SimulationResult
from .neutrosophic import FraudOutcome, NeutrosophicProbability
from .rng import GENERATOR_NAME
from .synth import CalibrationReport

SIG_DIGITS = 10


def versions() -> dict:
    return {"tool": f"fraudscreen {__version__}", "generator": GENERATOR_NAME}


def digit_map(values) -> dict[str, Any]:
    if isinstance(values, (DigitDistribution, FirstDigitCounts)):
        values = values.as_dict()
    return {str(d): values[d] for d in DIGITS}


def simulation_section(sim: SimulationResult, epsilon: float, include_epochs: bool = False) -> dict:
    out = {
        "epsilon": epsilon,
        "lambda_star": sim.lambda_star,
        "epoch_size": sim.epoch_size,
        "epochs": sim.epoch_count,
        "total_draws": sim.total_draws,
        "seed": sim.seed,
        "pooled_frequencies": digit_map(sim.pooled_frequencies),
    }
    if include_epochs:
        out["epoch_frequencies"] = [digit_map(f) for f in sim.epoch_frequencies]
    return out


def gof_section(gof: GofResult, min_expected: float) -> dict:
    warnings = []
    if gof.low_expected_warning:
        low = [d for d in DIGITS if gof.expected_counts[d] < min_expected]
        warnings.append(
            f"expected count below {min_expected:g} for digit(s) {', '.join(map(str, low))}; "
            "chi-square approximation may be unreliable"
        )
    if gof.expected_source != "simulated":
        warnings.append(f"expected counts from {gof.expected_source} probabilities (non-canonical)")
    return {
        "expected_source": gof.expected_source,
        "statistic": gof.statistic,
        "dof": gof.dof,
        "p_value": gof.p_value,
        "alpha": gof.alpha,
        "decision": gof.decision.value,
        "observed_counts": digit_map(gof.observed_counts),
        "expected_counts": digit_map(gof.expected_counts),
        "categories": ["".join(map(str, c)) for c in gof.categories],
        "warnings": warnings,
    }


def neutrosophic_section(
    np_: NeutrosophicProbability, outcome: FraudOutcome, tau: float, gof: GofResult
) -> dict:
    return {
        "t": np_.t.as_list(),
        "i": np_.i.as_list(),
        "u": np_.u.as_list(),
        "outcome": outcome.label.value,
        "rationale": outcome.rationale,
        "tau": tau,
        "conditioned_on": {"p_value": gof.p_value, "alpha": gof.alpha},
    }


def mi_cell_section(cell: MICell) -> dict:
    involvement, manipulation = describe(cell)
    return {
        "cell": str(cell),
        "i": cell.involvement,
        "j": cell.manipulation,
        "involvement": involvement,
        "manipulation": manipulation,
    }


def screen_report(
    load: LedgerLoad,
    plan: SamplingPlan,
    sim: SimulationResult,
    epsilon: float,
    gof: GofResult,
    min_expected: float,
    *,
    neutrosophic: Optional[dict] = None,
    mi_cell: Optional[MICell] = None,
    potentiality: Optional[str] = None,
    notes: Optional[list[str]] = None,
) -> dict:
    report: dict[str, Any] = {
        "report": "screen",
        "input_summary": {
            "file": load.path,
            "column": load.column,
            "rows_read": load.rows_read,
            "rows_used": len(load.records),
            "rows_excluded": load.rows_excluded,
            "exclusions": dict(load.exclusions),
        },
        "sampling": {"method": plan.method.value, "n": plan.size, "seed": plan.seed},
        "simulation": simulation_section(sim, epsilon),
        "gof": gof_section(gof, min_expected),
    }
    if neutrosophic is not None:
        report["neutrosophic"] = neutrosophic
    if mi_cell is not None:
        report["mi_cell"] = mi_cell_section(mi_cell)
    if potentiality is not None:
        report["annotations"] = {"fraud_potentiality": potentiality}
    report["notes"] = list(notes or [])
    report["versions"] = versions()
    return report


def calibration_entry(rep: CalibrationReport, expected_source: str) -> dict:
    rejections = rep.rejections if expected_source == "simulated" else rep.theoretical_rejections
    return {
        "expected_source": expected_source,
        "scheme": rep.scheme.describe(),
        "trials": rep.trials,
        "rejections": rejections,
        "rejection_rate": rejections / rep.trials,
        "alpha": rep.alpha,
        "epsilon": rep.epsilon,
        "n": rep.n,
        "draws_per_trial": rep.draws_per_trial,
        "seed": rep.seed,
    }


def calibration_report(rep: CalibrationReport) -> dict:
    results = [calibration_entry(rep, "simulated")]
    if rep.theoretical_rejections is not None:
        results.append(calibration_entry(rep, "theoretical"))
    return {"report": "calibrate", "results": results, "versions": versions()}


def simulation_report(sim: SimulationResult, epsilon: float, include_epochs: bool = False) -> dict:
    return {
        "report": "simulate",
        "simulation": simulation_section(sim, epsilon, include_epochs),
        "versions": versions(),
    }


def classification_report(cell: MICell, potentiality: Optional[str] = None) -> dict:
    report: dict[str, Any] = {"report": "classify", "mi_cell": mi_cell_section(cell)}
    if potentiality is not None:
        report["annotations"] = {"fraud_potentiality": potentiality}
    report["versions"] = versions()
    return report


# --- rendering --------------------------------------------------------------


def _rounded(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite number in report: {value!r}")
        return float(f"{value:.{SIG_DIGITS}g}")
    if isinstance(value, dict):
        return {k: _rounded(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(v) for v in value]
    return value


def to_json(report: dict) -> str:
    return json.dumps(_rounded(report), indent=2, ensure_ascii=False) + "\n"


def _text_lines(value: Any, indent: int) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, item in value.items():
        if isinstance(item, dict):
            if item:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: (none)")
        elif isinstance(item, list) and any(isinstance(x, dict) for x in item):
            lines.append(f"{pad}{key}:")
            for k, entry in enumerate(item):
                lines.append(f"{pad}  [{k}]")
                lines.extend(_text_lines(entry, indent + 2))
        elif isinstance(item, list):
            shown = ", ".join(str(x) for x in item) if item else "(none)"
            lines.append(f"{pad}{key}: {shown}")
        else:
            lines.append(f"{pad}{key}: {item}")
    return lines


def to_text(report: dict) -> str:
    return "\n".join(_text_lines(_rounded(report), 0)) + "\n"


def load_schema(kind: str) -> dict:
    text = resources.files("fraudscreen").joinpath("schemas", f"{kind}_report.schema.json").read_text()
    return json.loads(text)
