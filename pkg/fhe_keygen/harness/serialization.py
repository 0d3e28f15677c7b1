"""
Reading and writing of everything the harness puts on disk.

Reports are JSON or CSV and parse back to the objects they came from; JSON is
checked against a schema first. Generator files hold one polynomial, matrix
files one square integer matrix.
"""

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import jsonschema

from ..core.errors import KeyFileError, ReportFormatError
from ..core.ring import Poly
from .benchmark import BenchmarkComparison, TimingReport
from .experiment import CategoryCounts

logger = logging.getLogger(__name__)

CATEGORY_COLUMNS = [
    "algo",
    "n",
    "t",
    "trials",
    "even_shnf",
    "even_non",
    "odd_shnf",
    "odd_non",
    "seed",
    "classifier",
]
TIMING_COLUMNS = [
    "algo",
    "n",
    "t",
    "keys",
    "trials",
    "t_res",
    "t_xgcd",
    "t_pmod",
    "t_mul",
    "t_oddcoe",
    "t_total",
    "speedup",
]

# report field -> CategoryCounts attribute
_CATEGORY_FIELDS = {
    "algo": "algorithm",
    "n": "n",
    "t": "t",
    "trials": "trials",
    "even_shnf": "even_d_shnf",
    "even_non": "even_d_nonshnf",
    "odd_shnf": "odd_d_shnf",
    "odd_non": "odd_d_nonshnf",
    "seed": "seed",
    "classifier": "classifier",
}
_TIMING_FLOATS = ["t_res", "t_xgcd", "t_pmod", "t_mul", "t_oddcoe", "t_total"]

_count = {"type": "integer", "minimum": 0}
_seconds = {"type": "number", "minimum": 0}
_algo = {"enum": ["gh", "ours"]}

CATEGORY_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["experiment", "results"],
    "properties": {
        "experiment": {"const": "categories"},
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": list(_CATEGORY_FIELDS),
                "properties": {
                    **{
                        k: _count
                        for k in _CATEGORY_FIELDS
                        if k not in ("algo", "classifier")
                    },
                    "algo": _algo,
                    "classifier": {"enum": ["hnf", "gcd"]},
                },
            },
        },
    },
}

TIMING_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["experiment", "results", "speedup"],
    "properties": {
        "experiment": {"const": "timing"},
        "speedup": _seconds,
        "results": {
            "type": "array",
            "minItems": 2,
            "maxItems": 2,
            "items": {
                "type": "object",
                "required": ["algo", "n", "t", "keys", "trials"] + _TIMING_FLOATS,
                "properties": {
                    "algo": _algo,
                    "n": _count,
                    "t": _count,
                    "keys": _count,
                    "trials": _count,
                    **{k: _seconds for k in _TIMING_FLOATS},
                },
            },
        },
    },
}


def _category_row(counts: CategoryCounts) -> Dict[str, Any]:
    return {field: getattr(counts, attr) for field, attr in _CATEGORY_FIELDS.items()}


def _category_from_row(row: Dict[str, Any]) -> CategoryCounts:
    values = {attr: row[field] for field, attr in _CATEGORY_FIELDS.items()}
    try:
        return CategoryCounts(**values)
    except ValueError as e:
        raise ReportFormatError(str(e)) from e


def _load_json(text: str, schema: Dict[str, Any]) -> Any:
    try:
        data = json.loads(text)
        jsonschema.validate(data, schema)
    except json.JSONDecodeError as e:
        raise ReportFormatError(f"line {e.lineno}: {e.msg}") from e
    except jsonschema.ValidationError as e:
        location = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise ReportFormatError(f"{location}: {e.message}") from e
    return data


def _read_csv(text: str, columns: List[str]) -> List[Dict[str, str]]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != columns:
        raise ReportFormatError(f"expected CSV header {','.join(columns)}")
    return list(reader)


def _write_csv(rows: List[Dict[str, Any]], columns: List[str]) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return out.getvalue()


def categories_to_json(results: Sequence[CategoryCounts]) -> str:
    payload = {
        "experiment": "categories",
        "results": [_category_row(c) for c in results],
    }
    return json.dumps(payload, indent=2) + "\n"


def categories_from_json(text: str) -> List[CategoryCounts]:
    data = _load_json(text, CATEGORY_SCHEMA)
    return [_category_from_row(row) for row in data["results"]]


def categories_to_csv(results: Sequence[CategoryCounts]) -> str:
    return _write_csv([_category_row(c) for c in results], CATEGORY_COLUMNS)


def categories_from_csv(text: str) -> List[CategoryCounts]:
    parsed = []
    for number, row in enumerate(_read_csv(text, CATEGORY_COLUMNS), start=2):
        try:
            typed: Dict[str, Any] = {
                k: (v if k in ("algo", "classifier") else int(v))
                for k, v in row.items()
            }
        except (TypeError, ValueError) as e:
            raise ReportFormatError(f"line {number}: {e}") from e
        parsed.append(_category_from_row(typed))
    return parsed


def _timing_row(report: TimingReport, speedup: float) -> Dict[str, Any]:
    row = report.to_dict()
    row["algo"] = row.pop("algorithm")
    row["speedup"] = speedup
    return {k: row[k] for k in TIMING_COLUMNS}


def _timing_from_row(row: Dict[str, Any]) -> TimingReport:
    return TimingReport(
        algorithm=row["algo"],
        n=int(row["n"]),
        t=int(row["t"]),
        keys=int(row["keys"]),
        trials=int(row["trials"]),
        **{k: float(row[k]) for k in _TIMING_FLOATS},
    )


def _comparison(reports: List[TimingReport]) -> BenchmarkComparison:
    by_algo = {r.algorithm: r for r in reports}
    if set(by_algo) != {"gh", "ours"}:
        raise ReportFormatError("timing report needs one gh and one ours row")
    return BenchmarkComparison(gh=by_algo["gh"], ours=by_algo["ours"])


def timing_to_json(comparison: BenchmarkComparison) -> str:
    rows = [
        _timing_row(r, comparison.speedup) for r in (comparison.gh, comparison.ours)
    ]
    for row in rows:
        del row["speedup"]
    payload = {"experiment": "timing", "results": rows, "speedup": comparison.speedup}
    return json.dumps(payload, indent=2) + "\n"


def timing_from_json(text: str) -> BenchmarkComparison:
    data = _load_json(text, TIMING_SCHEMA)
    return _comparison([_timing_from_row(row) for row in data["results"]])


def timing_to_csv(comparison: BenchmarkComparison) -> str:
    rows = [
        _timing_row(r, comparison.speedup) for r in (comparison.gh, comparison.ours)
    ]
    return _write_csv(rows, TIMING_COLUMNS)


def timing_from_csv(text: str) -> BenchmarkComparison:
    reports = []
    for number, row in enumerate(_read_csv(text, TIMING_COLUMNS), start=2):
        try:
            reports.append(_timing_from_row(row))
        except (TypeError, ValueError) as e:
            raise ReportFormatError(f"line {number}: {e}") from e
    return _comparison(reports)


def _to_int(token: Any, line: int) -> int:
    if isinstance(token, bool):
        raise KeyFileError(f"not an integer: {token!r}", line)
    if isinstance(token, int):
        return token
    if isinstance(token, str):
        text = token.strip()
        body = text[1:] if text[:1] == "-" else text
        if body.isdigit() and body.isascii():
            return int(text)
    raise KeyFileError(f"not a decimal integer: {token!r}", line)


def parse_poly(text: str) -> Poly:
    """
    Parse a generator: a JSON array, or one decimal per line.

    Raises:
        KeyFileError: Naming the offending line
    """
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise KeyFileError(e.msg, e.lineno) from e
        if not isinstance(data, list):
            raise KeyFileError("expected a JSON array of coefficients", 1)
        return Poly(tuple(_to_int(c, 1) for c in data))

    coeffs = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            coeffs.append(_to_int(line, number))
    return Poly(tuple(coeffs))


def format_poly(poly: Poly, n: int) -> str:
    """One decimal per line, exactly n lines."""
    return "".join(f"{c}\n" for c in poly.padded(n))


def parse_matrix(text: str) -> List[List[int]]:
    """
    Parse a JSON array of rows of integers (or decimal strings).

    Raises:
        KeyFileError: If the data is not a square integer matrix
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise KeyFileError(e.msg, e.lineno) from e
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise KeyFileError("expected a JSON array of rows")
    rows = [[_to_int(x, i + 1) for x in row] for i, row in enumerate(data)]
    if not rows or any(len(row) != len(rows) for row in rows):
        raise KeyFileError("matrix must be square and non-empty")
    return rows


def format_matrix(rows: Sequence[Sequence[int]]) -> str:
    """JSON rows of decimal strings, so big entries survive any JSON reader."""
    return json.dumps([[str(x) for x in row] for row in rows]) + "\n"


def read_text(path: Union[str, Path]) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except UnicodeDecodeError as e:
        raise KeyFileError(f"not UTF-8 text: {e.reason}") from e


def write_text(path: Union[str, Path], text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.debug(f"Wrote {target}")
