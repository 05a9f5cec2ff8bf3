"""
Result tables and sample files.

CSV output is comma separated with 17 significant digits and '#'-prefixed header
comments, so doubles survive a round trip. JSON output is a flat object.
"""
import io
import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np
import pandas as pd

from core.exceptions import InputFormatError
from core.logging import get_logger
from models.functionals import SampledFunction

logger = get_logger(__name__)

FLOAT_FORMAT = "%.17g"
MIN_ROWS = 5

def _format_value(value: Any) -> str:
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    return str(value)

def render_csv(frame: pd.DataFrame, comments: Optional[Mapping[str, Any]] = None) -> str:
    """Header comments followed by the table"""
    lines = [f"# {key}: {_format_value(value)}" for key, value in (comments or {}).items()]
    body = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return "\n".join(lines + [body]) if lines else body

def render_json(payload: Any) -> str:
    """Stable JSON; non-finite floats become null"""
    return json.dumps(_finite(payload), indent=2, sort_keys=False) + "\n"

def _finite(value: Any) -> Any:
    if isinstance(value, float):
        return value if np.isfinite(value) else None
    if isinstance(value, dict):
        return {k: _finite(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(v) for v in value]
    return value

def write_text(text: str, path: Optional[Path]) -> None:
    """Write to path; callers print when path is None"""
    if path is None:
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("Results written", extra={"path": str(path), "bytes": len(text)})

def records_frame(records: List[Dict[str, Any]], columns: List[str]) -> pd.DataFrame:
    """DataFrame with a fixed column order"""
    return pd.DataFrame.from_records(records, columns=columns)

def _data_lines(text: str) -> List[Tuple[int, str]]:
    """(line number, content) of the non-blank, non-comment lines"""
    return [
        (number, line.strip())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]

def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True

def read_xy_csv(path: Path) -> SampledFunction:
    """
    Read (x, u) samples from the first two columns of a CSV file.

    Comment lines start with '#'. A first row whose leading field is not numeric is a
    header. Every row must have as many fields as the first one. Raises InputFormatError
    naming the offending line.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputFormatError(message=f"cannot read {path}: {e}", details={"path": str(path)}, original_error=e)

    lines = _data_lines(text)
    width = len(lines[0][1].split(",")) if lines else 0
    if lines and not _is_number(lines[0][1].split(",")[0]):
        lines = lines[1:]
    if len(lines) < MIN_ROWS:
        raise InputFormatError(
            message=f"need at least {MIN_ROWS} data rows, found {len(lines)}",
            details={"path": str(path)}
        )

    numbers = [number for number, _ in lines]
    for number, content in lines:
        fields = len(content.split(","))
        if fields != width:
            raise InputFormatError(
                message=f"expected {width} fields, found {fields}: {content!r}",
                line=number,
                details={"path": str(path)}
            )

    try:
        frame = pd.read_csv(
            io.StringIO("\n".join(content for _, content in lines)),
            header=None,
            dtype=str,
            skipinitialspace=True
        )
    except pd.errors.ParserError as e:
        raise InputFormatError(
            message=f"malformed CSV: {e}",
            line=numbers[0],
            details={"path": str(path)},
            original_error=e
        )
    if frame.shape[1] < 2:
        raise InputFormatError(message="expected two columns (x, u)", line=numbers[0], details={"path": str(path)})

    xy = frame.iloc[:, :2].apply(pd.to_numeric, errors="coerce")
    bad = xy.isna().any(axis=1) | ~np.isfinite(xy.to_numpy(dtype=float)).all(axis=1)
    if bad.any():
        row = int(np.flatnonzero(bad.to_numpy())[0])
        raise InputFormatError(
            message=f"non-numeric value: {lines[row][1]!r}",
            line=numbers[row],
            details={"path": str(path)}
        )

    x = xy.iloc[:, 0].to_numpy(dtype=float)
    u = xy.iloc[:, 1].to_numpy(dtype=float)
    steps = np.diff(x)
    if np.any(steps <= 0):
        row = int(np.flatnonzero(steps <= 0)[0]) + 1
        raise InputFormatError(
            message=f"x must be strictly increasing (x={x[row]:.17g} after {x[row - 1]:.17g})",
            line=numbers[row],
            details={"path": str(path)}
        )

    logger.debug("Samples read", extra={"path": str(path), "n": x.size})
    return SampledFunction(grid=x, values=u)
