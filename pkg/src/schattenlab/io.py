"""Deterministic JSON/CSV writers and operator export.

Floats are printed with 17 significant digits, keys are sorted and
non-finite numbers become the strings "inf", "-inf", "nan", so identical
inputs give byte-identical files.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import ConfigurationError
from .groups import GroupDescriptor
from .quantize import OperatorMatrix
from .windows import make_window


def fmt_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def _plain(obj):
    """Convert numpy scalars/arrays, tuples and dataclass reports to JSON-able values."""
    if hasattr(obj, "to_dict"):
        return _plain(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    return obj


def _emit(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        s = fmt_float(obj)
        return json.dumps(s) if s in ("nan", "inf", "-inf") else s
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [pad + json.dumps(k, ensure_ascii=False) + ": " + _emit(obj[k], indent, level + 1)
                 for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    return _emit(_plain(obj), indent, 0) + "\n"


def write_json(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj), encoding="utf-8")
    return path


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(header)
        for row in rows:
            wr.writerow([fmt_float(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return path


def read_csv(path) -> list[dict]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


# ---------------------------------------------------------------- operators

def export_operator(A: OperatorMatrix, prefix) -> tuple[Path, Path]:
    """Write ``<prefix>.json`` (window header) and ``<prefix>.csv`` (row, col, re, im).

    Entries equal to +0 + 0i are omitted; everything else is written with
    17 significant digits, which round-trips binary64 exactly.
    """
    prefix = Path(prefix)
    w = A.window
    header = {
        "format": "operator-coo",
        "label": A.label,
        "resolution": A.resolution,
        "shape": [w.total_dim, w.total_dim],
        "window": w.describe(),
        "group": {"kind": w.group.kind, "n": w.group.n},
        "basis": [[list(idx), i, j] for idx, i, j in w.basis_labels()],
    }
    E = A.entries
    re, im = E.real, E.imag
    keep = ~((re == 0) & ~np.signbit(re) & (im == 0) & ~np.signbit(im))
    rows, cols = np.nonzero(keep)
    data = ((int(r), int(c), float(re[r, c]), float(im[r, c])) for r, c in zip(rows, cols))
    return (write_json(prefix.with_suffix(".json"), header),
            write_csv(prefix.with_suffix(".csv"), ["row", "col", "re", "im"], data))


def load_operator(prefix) -> OperatorMatrix:
    prefix = Path(prefix)
    header = json.loads(prefix.with_suffix(".json").read_text(encoding="utf-8"))
    if header.get("format") != "operator-coo":
        raise ConfigurationError("not an operator export")
    g = GroupDescriptor(header["group"]["kind"], int(header["group"]["n"]))
    w = make_window(g, float(header["window"]["cutoff"]))
    if [[list(idx), i, j] for idx, i, j in w.basis_labels()] != header["basis"]:
        raise ConfigurationError("basis in the header does not match the rebuilt window")
    E = np.zeros((w.total_dim, w.total_dim), dtype=complex)
    for row in read_csv(prefix.with_suffix(".csv")):
        E[int(row["row"]), int(row["col"])] = complex(float(row["re"]), float(row["im"]))
    return OperatorMatrix(w, E, header["label"], int(header["resolution"]))
