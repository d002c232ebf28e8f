"""
Output writers shared by the commands: JSON, JSON lines and CSV.

Everything written here is deterministic for fixed inputs; nothing else in
the package writes to stdout.
"""
import sys
from pathlib import Path
from typing import Iterable, List, Optional

import pandas as pd
from pydantic import BaseModel

from models.models import AuditReport, SweepRecord, SweepSummary


def emit(text: str, out: Optional[str] = None):
    """Write text to the output path, or to stdout."""
    if not text.endswith("\n"):
        text += "\n"
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)


def to_json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2, exclude_none=True)


def to_json_lines(models: Iterable[BaseModel]) -> str:
    return "\n".join(m.model_dump_json(exclude_none=True) for m in models)


def sweep_records_frame(records: List[SweepRecord], m_values: List[int]) -> pd.DataFrame:
    """One row per record; the per-M flags become both_le_M<m> columns."""
    rows = []
    for rec in records:
        row = rec.model_dump(exclude={"both_le_m"})
        row["tau"] = str(rec.tau).replace(" ", "")
        row["lam"] = str(rec.lam).replace(" ", "") if rec.lam is not None else None
        for m in m_values:
            row[f"both_le_M{m}"] = rec.both_le_m.get(m) if rec.both_le_m else None
        rows.append(row)
    frame = pd.DataFrame(rows)
    if len(frame):
        frame = frame.dropna(axis=1, how="all")
    return frame


def sweep_summary_frame(summary: SweepSummary) -> pd.DataFrame:
    rows = [row.model_dump(exclude={"per_tau"}) for row in summary.rows]
    return pd.DataFrame(rows)


def write_sweep(records: List[SweepRecord], summary: SweepSummary, fmt: str, out: Optional[str]):
    """JSON: one record per line, then a summary line. CSV: records, then summary rows.

    With an output path, CSV summary rows go to a sibling '<stem>.summary.csv'.
    """
    if fmt == "json":
        body = to_json_lines(records)
        tail = '{"summary": ' + summary.model_dump_json(exclude_none=True) + "}"
        emit(f"{body}\n{tail}" if body else tail, out)
        return

    m_values = summary.config.m_values
    records_csv = sweep_records_frame(records, m_values).to_csv(index=False)
    summary_csv = sweep_summary_frame(summary).to_csv(index=False)
    if out:
        emit(records_csv, out)
        path = Path(out)
        emit(summary_csv, str(path.with_name(f"{path.stem}.summary.csv")))
    else:
        emit(f"{records_csv}\n{summary_csv}")


def write_audit(report: AuditReport, fmt: str, out: Optional[str]):
    if fmt == "json":
        emit(to_json(report), out)
    else:
        frame = pd.DataFrame([row.model_dump() for row in report.rows])
        emit(frame.to_csv(index=False), out)
