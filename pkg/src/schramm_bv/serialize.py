"""JSON/CSV input and JSON output.

Provides:
- parse_young(): Young sequence from a shorthand, inline JSON or a file
- young_from_dict(): inverse of YoungSequence.to_dict()
- load_grid_function() / load_function_set(): sampled functions from
  JSON or CSV
- load_kernel(): kernel JSON {"grid_t", "grid_s", "values"}
- load_truncated_set(): l^p sequences {"p", "members": [{"head", ...}]}
- dumps(): deterministic JSON (sorted keys)

Shorthands: ``jordan``, ``wiener:P``, ``young:P`` or ``young:P:KNEE``
(a power Young function), ``waterman:L1,L2,...``.
"""

from __future__ import annotations

import csv
import json
import math
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from .core import (
    GridFunction,
    PowerYoung,
    SchrammError,
    YoungFunction,
    YoungSequence,
    make_grid_function,
    make_table,
    make_young_sequence,
)
from .operators.kernel import Kernel, make_kernel
from .seqspace import TruncatedSequence


class InputError(SchrammError):
    """Raised when an input file or shorthand cannot be read."""

    def __init__(self, message: str, source: str = ""):
        super().__init__(message)
        self.source = source


def _read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise InputError(f"no such file: {path}", str(path)) from e
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}", str(path)) from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON: {e}", str(path)) from e


def _require_mapping(data: Any, what: str, source: str = "") -> Mapping:
    if not isinstance(data, Mapping):
        raise InputError(
            f"{what} must be a JSON object, got {type(data).__name__}",
            source,
        )
    return data


# ========== Young Sequences ==========


def young_function_from_dict(data: Mapping[str, Any]) -> YoungFunction:
    """{"knots", "values"} → table; {"p", "scale", "knee"} → power."""
    if "knots" in data:
        return make_table(data["knots"], data["values"])
    knee = data.get("knee")
    return PowerYoung(
        float(data.get("scale", 1.0)),
        float(data.get("p", 1.0)),
        None if knee is None else float(knee),
    )


def young_from_dict(data: Mapping[str, Any]) -> YoungSequence:
    """
    Rebuild a sequence from its to_dict() form.

    Raises:
        InvalidYoung: The description fails validation.
        InputError: "kind" or a field the kind needs is missing, or a
            part has the wrong JSON shape.
    """
    data = _require_mapping(data, "Young description")
    if "kind" not in data:
        raise InputError("Young description needs a 'kind'")
    kind = data["kind"]
    try:
        if kind == "young":
            phi = _require_mapping(data["phi"], "'phi'")
            return make_young_sequence(
                "young", phi=young_function_from_dict(phi)
            )
        if kind == "custom":
            functions = [
                young_function_from_dict(_require_mapping(f, "'functions'"))
                for f in data["functions"]
            ]
            return make_young_sequence("custom", functions=functions)
    except KeyError as e:
        raise InputError(
            f"Young kind {kind!r} needs {e.args[0]!r}", str(kind)
        ) from e
    except TypeError as e:
        raise InputError(f"bad Young description: {e}", str(kind)) from e
    return make_young_sequence(
        kind, p=data.get("p"), weights=data.get("weights")
    )


def parse_young(spec: str) -> YoungSequence:
    """
    Parse a Young sequence from the command line.

    Args:
        spec: A shorthand, an inline JSON object, or a path to a JSON file.

    Raises:
        InputError: Unknown shorthand or unreadable file.
        InvalidYoung: Parameters fail validation.

    Example:
        >>> parse_young("waterman:10,1").weights
        (10.0, 1.0)
    """
    text = spec.strip()
    if text.startswith("{"):
        try:
            return young_from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise InputError(f"invalid inline Young JSON: {e}", spec) from e
    if text.endswith(".json"):
        return young_from_dict(_read_json(text))

    name, _, args = text.partition(":")
    try:
        if name == "jordan" and not args:
            return make_young_sequence("jordan")
        if name == "wiener":
            return make_young_sequence("wiener", p=float(args))
        if name == "young":
            parts = args.split(":")
            knee = float(parts[1]) if len(parts) > 1 else None
            return make_young_sequence(
                "young", phi=PowerYoung(1.0, float(parts[0]), knee)
            )
        if name == "waterman":
            weights = [float(w) for w in args.split(",") if w]
            return make_young_sequence("waterman", weights=weights)
    except ValueError as e:
        raise InputError(f"bad Young shorthand {spec!r}: {e}", spec) from e
    raise InputError(f"unknown Young shorthand {spec!r}", spec)


# ========== Grid Functions ==========


def grid_function_from_dict(data: Mapping[str, Any]) -> GridFunction:
    data = _require_mapping(data, "grid function")
    try:
        return make_grid_function(data["grid"], data["values"])
    except KeyError as e:
        raise InputError(f"grid function needs {e.args[0]!r}") from e
    except TypeError as e:
        raise InputError(f"bad grid function: {e}") from e


def _read_csv_rows(path: Path) -> list[list[float]]:
    try:
        with path.open(newline="", encoding="utf-8") as handle:
            rows = [row for row in csv.reader(handle) if row]
        return [[float(cell) for cell in row] for row in rows]
    except FileNotFoundError as e:
        raise InputError(f"no such file: {path}", str(path)) from e
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}", str(path)) from e
    except ValueError as e:
        raise InputError(f"{path}: non-numeric CSV cell: {e}", str(path)) from e


def load_grid_function(path: str | Path) -> GridFunction:
    """
    Load {"grid": [...], "values": [...]} JSON, or CSV with a grid row and
    a values row.

    Raises:
        InputError: Unreadable file or missing fields.
        BadGrid: The data fail grid validation.
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        rows = _read_csv_rows(path)
        if len(rows) != 2:
            raise InputError(
                f"{path}: CSV needs a grid row and a values row", str(path)
            )
        return make_grid_function(rows[0], rows[1])
    return grid_function_from_dict(_read_json(path))


def load_function_set(path: str | Path) -> list[GridFunction]:
    """
    Load a set of functions on one grid.

    Accepted layouts: {"grid": [...], "members": [[...], ...]}, a JSON list
    of grid-function objects, or CSV whose first row is the grid and every
    further row a member.
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        rows = _read_csv_rows(path)
        if len(rows) < 2:
            raise InputError(f"{path}: CSV needs a grid row", str(path))
        return [make_grid_function(rows[0], row) for row in rows[1:]]
    data = _read_json(path)
    if isinstance(data, list):
        return [grid_function_from_dict(item) for item in data]
    data = _require_mapping(data, "function set", str(path))
    if "members" not in data:
        return [grid_function_from_dict(data)]
    try:
        return [make_grid_function(data["grid"], m) for m in data["members"]]
    except KeyError as e:
        raise InputError(
            f"{path}: function set needs {e.args[0]!r}", str(path)
        ) from e
    except TypeError as e:
        raise InputError(f"{path}: bad function set: {e}", str(path)) from e


# ========== Kernels and Sequences ==========


def load_kernel(path: str | Path) -> Kernel:
    """
    Load kernel JSON.

    Raises:
        InputError: Unreadable file or missing fields.
        BadGrid: Invalid grids or matrix shape.
    """
    data = _require_mapping(_read_json(path), "kernel", str(path))
    try:
        return make_kernel(data["grid_t"], data["grid_s"], data["values"])
    except KeyError as e:
        raise InputError(f"kernel needs {e.args[0]!r}", str(path)) from e
    except TypeError as e:
        raise InputError(f"{path}: bad kernel: {e}", str(path)) from e


def load_truncated_set(path: str | Path) -> list[TruncatedSequence]:
    """{"p": P or "inf", "members": [{"head": [...], "tail_bound": b}]}."""
    data = _require_mapping(_read_json(path), "sequence set", str(path))
    try:
        p = float(data.get("p", 1.0))
        return [
            TruncatedSequence(
                m["head"],
                float(m.get("tail_bound", 0.0)),
                float(m.get("p", p)),
            )
            for m in data["members"]
        ]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"{path}: bad sequence set: {e}", str(path)) from e


# ========== Output ==========


def _clean(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def dumps(data: Any) -> str:
    """Sorted-key JSON; infinities become the strings "inf" / "-inf"."""
    return json.dumps(_clean(data), sort_keys=True, indent=2)
