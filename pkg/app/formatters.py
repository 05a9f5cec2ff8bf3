"""Formatting of command results for the terminal and for result files"""
from typing import Any, Dict, List

import pandas as pd

from models.functionals import MinimizerProfile
from models.oracles import OracleReport
from models.shooting import SweepRow
from utils.table_io import records_frame

ORACLE_COLUMNS = ["name", "comparison", "expected", "upper", "observed", "tolerance", "passed", "note"]
SWEEP_COLUMNS = ["lambda", "a_star", "T1", "J", "T2", "J_tilde", "g", "status"]
PROFILE_COLUMNS = ["x", "u", "du", "d2u", "d3u", "H_residual"]

def oracle_frame(reports: List[OracleReport]) -> pd.DataFrame:
    """One row per check"""
    return records_frame([r.model_dump(mode="json") for r in reports], ORACLE_COLUMNS)

def sweep_frame(rows: List[SweepRow]) -> pd.DataFrame:
    return records_frame([r.model_dump(by_alias=True) for r in rows], SWEEP_COLUMNS)

def sweep_minimum(rows: List[SweepRow]) -> Dict[str, Any]:
    """Smallest J over the sweep and its lambda; J never drops below the sharp constant"""
    found = [r for r in rows if r.J is not None]
    if not found:
        return {}
    best = min(found, key=lambda r: r.J)
    return {"min_J": best.J, "lambda_min_J": best.lam}

def profile_frame(profile: MinimizerProfile) -> pd.DataFrame:
    """Samples of one period with the first-integral residual"""
    return pd.DataFrame({
        "x": profile.grid,
        "u": profile.values,
        "du": profile.du,
        "d2u": profile.derivs,
        "d3u": profile.d3u,
        "H_residual": profile.h_residual
    }, columns=PROFILE_COLUMNS)

def format_status(passed: bool) -> str:
    return "PASS" if passed else "FAIL"

def format_check(report: OracleReport) -> str:
    """Single-line description of a check"""
    if report.comparison.value == "between":
        target = f"in ({report.expected:.6g}, {report.upper:.6g})"
    elif report.comparison.value == "at_least":
        target = f">= {report.expected:.6g}"
    elif report.comparison.value == "at_most":
        target = f"<= {report.expected:.6g}"
    else:
        target = f"= {report.expected:.10g} +/- {report.tolerance:.1g}"
    line = f"[{format_status(report.passed)}] {report.name}: {report.observed:.10g} {target}"
    return f"{line} ({report.note})" if report.note else line

def format_failed_checks(reports: List[OracleReport]) -> str:
    """Bullet list of the failed checks, empty when all passed"""
    return "\n".join(f"  - {format_check(r)}" for r in reports if not r.passed)

def flat_payload(summary: Dict[str, Any], reports: List[OracleReport]) -> Dict[str, Any]:
    """Top-level scalars plus one oracle array"""
    return {**summary, "oracles": [r.model_dump(mode="json") for r in reports]}
