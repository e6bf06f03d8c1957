"""CSV point clouds and JSON reports.

Clouds are CSV tables with a header row of objective names and an optional
leading ``id`` column.  Filtering commands re-emit the original row text, so
output values are byte-identical to the input.

Reports are JSON documents.  Floats are written with Python's shortest
round-trip representation, so reading a report back yields the exact values.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Any, Iterable

import numpy as np

from .algorithm import FilterStats, NeimReport
from .core import Normalization, PayoffMatrix, UtopiaNadirBox
from .errors import CloudFormatError, ReportFormatError


@dataclass
class Cloud:
    header: list[str]
    labels: list[str]
    ids: list[str] | None
    points: np.ndarray
    rows: list[list[str]]

    def __len__(self) -> int:
        return self.points.shape[0]


def parse_cloud(text: str, source: str = "<cloud>") -> Cloud:
    reader = csv.reader(io.StringIO(text))
    rows = [r for r in reader if r and any(cell.strip() for cell in r)]
    if not rows:
        raise CloudFormatError(f"{source}: empty file")
    header = [h.strip() for h in rows[0]]
    has_id = header[0].lower() == "id"
    labels = header[1:] if has_id else header
    if len(labels) < 2:
        raise CloudFormatError(f"{source}: need at least 2 objective columns, header is {header}")
    body = rows[1:]
    if not body:
        raise CloudFormatError(f"{source}: no data rows")
    width = len(header)
    values = np.empty((len(body), len(labels)))
    ids: list[str] = []
    for r, row in enumerate(body, start=2):
        if len(row) != width:
            raise CloudFormatError(f"{source}:{r}: expected {width} fields, got {len(row)}")
        fields = row[1:] if has_id else row
        if has_id:
            ids.append(row[0].strip())
        try:
            parsed = [float(f) for f in fields]
        except ValueError as exc:
            raise CloudFormatError(f"{source}:{r}: {exc}") from None
        if not all(math.isfinite(v) for v in parsed):
            raise CloudFormatError(f"{source}:{r}: non-finite value")
        values[r - 2] = parsed
    return Cloud(header, labels, ids if has_id else None, values, body)


def read_cloud(path: str | Path) -> Cloud:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CloudFormatError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_cloud(text, str(path))


def write_cloud_rows(cloud: Cloud, mask: np.ndarray, out: IO[str]) -> None:
    """Write the header and the rows selected by ``mask``, in input order."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(cloud.header)
    for keep, row in zip(mask, cloud.rows):
        if keep:
            writer.writerow(row)


def write_points_csv(points: np.ndarray, labels: Iterable[str], out: IO[str]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(list(labels))
    for p in points:
        writer.writerow([repr(float(v)) for v in p])


def _vec(v: np.ndarray) -> list[float]:
    return [float(x) for x in np.asarray(v).ravel()]


def _jsonable(d: Any) -> Any:
    if isinstance(d, np.ndarray):
        return d.tolist()
    if isinstance(d, (np.integer,)):
        return int(d)
    if isinstance(d, (np.floating,)):
        return float(d)
    if isinstance(d, (list, tuple)):
        return [_jsonable(x) for x in d]
    if isinstance(d, dict):
        return {k: _jsonable(v) for k, v in d.items()}
    return d


def payoff_doc(phi: PayoffMatrix) -> dict:
    return {"kind": phi.kind, "columns": [_vec(c) for c in phi.columns]}


def box_doc(box: UtopiaNadirBox) -> dict:
    return {"utopia": _vec(box.utopia), "nadir": _vec(box.nadir)}


def normalization_doc(norm: Normalization | None) -> dict | None:
    if norm is None:
        return None
    return {"shift": _vec(norm.shift), "scale": _vec(norm.scale)}


def stats_doc(stats: FilterStats) -> dict:
    return {"total": stats.total, "kept": stats.kept, "kept_fraction": stats.kept_fraction}


def neim_doc(report: NeimReport, decisions: tuple[list, list] | None = None) -> dict:
    """Report fields for a :class:`NeimReport`; ``decisions`` overrides the raw handles."""
    std_dec, ne_dec = decisions or (list(report.standard_decisions), list(report.nonextreme_decisions))
    return {
        "alpha_deg": _vec(report.alpha.degrees),
        "normalized": report.normalized,
        "weights": [_vec(w) for w in report.weights],
        "solver_weights": [_vec(w) for w in report.solver_weights],
        "payoff_standard": payoff_doc(report.standard_payoff),
        "payoff_nonextreme": payoff_doc(report.nonextreme_payoff),
        "box_standard": box_doc(report.standard_box),
        "box_nonextreme": box_doc(report.nonextreme_box),
        "normalization": normalization_doc(report.normalization),
        "decisions_standard": _jsonable(std_dec),
        "decisions_nonextreme": _jsonable(ne_dec),
    }


def dumps_report(doc: dict) -> str:
    return json.dumps(_jsonable(doc), indent=2, allow_nan=False) + "\n"


def loads_report(text: str, source: str = "<report>") -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReportFormatError(f"{source}: not a JSON report ({exc})") from None
    if not isinstance(doc, dict):
        raise ReportFormatError(f"{source}: report must be a JSON object")
    return doc


def read_report(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ReportFormatError(f"cannot read {path}: {exc.strerror}") from exc
    return loads_report(text, str(path))


def box_from_doc(doc: dict, which: str = "nonextreme") -> UtopiaNadirBox:
    key = f"box_{which}"
    try:
        b = doc[key]
        return UtopiaNadirBox(np.array(b["utopia"], float), np.array(b["nadir"], float))
    except (KeyError, TypeError, ValueError) as exc:
        raise ReportFormatError(f"report has no usable {key!r} entry ({exc})") from None


def payoff_from_doc(doc: dict, which: str = "nonextreme") -> PayoffMatrix:
    key = f"payoff_{which}"
    try:
        p = doc[key]
        return PayoffMatrix.from_columns(p["columns"], p["kind"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ReportFormatError(f"report has no usable {key!r} entry ({exc})") from None
