"""
File: utils.py

Purpose: Shared helpers for reports and tables. Converts library objects to
         plain JSON data, writes deterministic report files, and renders the
         pandas tables printed by the command-line driver.

Imports from: dataclasses, json, pathlib, typing, numpy, pandas, src.groups
Imported by: app.py, src.verdicts, src.verification, src.rep_graphs

Key Functions:
- to_plain(): Library objects to JSON-compatible data
- report_envelope(): Wrap a report body with schema and provenance
- write_report(): Write JSON with sorted keys (byte-identical for equal input)
- limits_frame(): (n, j) dimension table as a DataFrame
- format_frame(): DataFrame to the text printed on stdout
- format_status(): One-line verdict summary

Key Constants:
- REPORT_SCHEMA: Schema tag carried by every report
"""

from __future__ import annotations

from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional, Tuple
import json

import numpy as np
import pandas as pd

from .groups import FiniteGroup, GroupHom, SubgroupHandle, cycle_string

REPORT_SCHEMA = "fusion-limits/1"


def to_plain(obj: Any) -> Any:
    """
    Convert an object into JSON-compatible data.

    Args:
        obj: Library object, numpy value, dataclass or container

    Returns:
        Nested dicts/lists of str, int, float, bool and None
    """
    if obj is None or isinstance(obj, (str, bool)):
        return obj
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, SubgroupHandle):
        return [cycle_string(obj.ambient.elements[x]) for x in obj.members]
    if isinstance(obj, GroupHom):
        G = obj.domain.ambient
        return {
            cycle_string(G.elements[x]): cycle_string(G.elements[y])
            for x, y in zip(obj.domain.members, obj.images)
        }
    if isinstance(obj, FiniteGroup):
        return {"degree": obj.degree, "order": obj.order, "generators": [list(g) for g in obj.generators]}
    if hasattr(obj, "to_dict"):
        return to_plain(obj.to_dict())
    if is_dataclass(obj):
        return to_plain(asdict(obj))
    if isinstance(obj, Mapping):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(to_plain(v) for v in obj)
    if isinstance(obj, Iterable):
        return [to_plain(v) for v in obj]
    return str(obj)


def report_envelope(command: str, provenance: Mapping[str, Any], body: Mapping[str, Any]) -> Dict[str, Any]:
    return {
        "schema": REPORT_SCHEMA,
        "command": command,
        "provenance": to_plain(provenance),
        "result": to_plain(body),
    }


def write_report(path: Path, payload: Mapping[str, Any]) -> Path:
    """Write payload as JSON with sorted keys and two-space indentation."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(to_plain(payload), sort_keys=True, indent=2) + "\n")
    return path


def default_report_path(output_dir: str, command: str) -> Path:
    return Path(output_dir) / f"{command.replace(' ', '-')}.json"


def limits_frame(dims: Mapping[Tuple[int, int], int]) -> pd.DataFrame:
    """Rows n, columns j, cells dim lim^n(H^j)."""
    if not dims:
        return pd.DataFrame()
    records = [{"n": n, "j": j, "dim": d} for (n, j), d in sorted(dims.items())]
    frame = pd.DataFrame(records).pivot(index="n", columns="j", values="dim")
    frame.columns = [f"j={j}" for j in frame.columns]
    frame.index = [f"lim^{n}" for n in frame.index]
    return frame


def records_frame(rows: Iterable[Mapping[str, Any]], columns: Optional[list] = None) -> pd.DataFrame:
    frame = pd.DataFrame(list(rows))
    if columns is not None and not frame.empty:
        frame = frame[columns]
    return frame


def format_frame(frame: pd.DataFrame) -> str:
    if frame.empty:
        return "(empty table)"
    return frame.to_string()


def format_status(label: str, ok: bool, detail: str = "") -> str:
    mark = "✓" if ok else "✗"
    return f"{mark} {label}" + (f": {detail}" if detail else "")
