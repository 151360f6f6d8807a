"""
Deterministic report emitters

JSON keys are sorted and floats rounded to a fixed number of significant
digits so identical runs produce identical bytes.
"""

import json
import math
from pathlib import Path
from typing import Any, List, Optional, Union

import numpy as np
import pandas as pd


def round_sig(value: float, digits: int = 12) -> float:
    """Round ``value`` to ``digits`` significant digits"""
    if not math.isfinite(value) or value == 0.0:
        return value
    return float(f"{value:.{digits}g}")


def to_plain(obj: Any, digits: int = 12) -> Any:
    """Convert numpy containers and scalars into JSON-ready Python objects"""
    if isinstance(obj, dict):
        return {str(k): to_plain(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v, digits) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_plain(obj.tolist(), digits)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(float(obj), digits)
    if isinstance(obj, (complex, np.complexfloating)):
        return [round_sig(obj.real, digits), round_sig(obj.imag, digits)]
    if isinstance(obj, Path):
        return str(obj)
    return obj


def dumps_report(report: Any, digits: int = 12) -> str:
    """Serialize a report to byte-stable JSON text"""
    return json.dumps(to_plain(report, digits), indent=2, sort_keys=True) + "\n"


def write_report(report: Any, path: Union[str, Path], digits: int = 12):
    """Write a JSON report to ``path``"""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_report(report, digits))


def dumps_csv(
    frame: pd.DataFrame,
    kind: str,
    digits: int = 12,
    extra_header: Optional[List[str]] = None,
) -> str:
    """
    Render a DataFrame as CSV behind a versioned header comment

    Args:
        frame: Data to write; column order is preserved
        kind: Series kind named in the header line
        digits: Significant digits for floats
        extra_header: Additional ``# key=value`` comment lines
    """
    lines = [f"# critical-memory {kind} v1 columns={','.join(frame.columns)}"]
    lines.extend(f"# {line}" for line in extra_header or [])
    body = frame.to_csv(index=False, float_format=f"%.{digits}g", lineterminator="\n")
    return "\n".join(lines) + "\n" + body


def write_csv(
    frame: pd.DataFrame,
    path: Union[str, Path],
    kind: str,
    digits: int = 12,
    extra_header: Optional[List[str]] = None,
):
    """Write ``dumps_csv`` output to ``path``"""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_csv(frame, kind, digits, extra_header))
