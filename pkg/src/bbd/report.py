"""JSON/CSV rendering with round-trippable floats, and the measure-comparison table."""
from __future__ import annotations

import json
import math
from typing import Iterable, Mapping, Sequence

import numpy as np

from .divergences import AlphaLike, as_alpha, bbd, hellinger_squared
from .errors import DomainError


def format_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def dumps(obj) -> str:
    """Compact JSON with every float written to 17 significant digits.

    Infinite values use the ``Infinity`` token that Python's json module reads.
    """
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, Mapping):
        return "{" + ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _cell(v) -> str:
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    if v is None:
        return ""
    return str(v)


def to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def record_to_csv(record: Mapping) -> str:
    flat = {k: v for k, v in record.items() if not isinstance(v, (list, tuple, dict, np.ndarray))}
    return to_csv(list(flat), [list(flat.values())])


def figure_columns(alphas: Sequence[AlphaLike], steps: int) -> dict[str, np.ndarray]:
    if int(steps) != steps or steps < 2:
        raise DomainError("steps must be an integer >= 2")
    grid = np.linspace(0.0, 1.0, int(steps))
    columns = {"rho": grid, "hellinger_sq": hellinger_squared(grid)}
    for a in map(as_alpha, alphas):
        columns[f"bbd_alpha_{a.label}"] = np.atleast_1d(bbd(grid, a))
    return columns


def emit_figure_table(alphas: Sequence[AlphaLike], steps: int) -> str:
    """CSV of H^2 and B_alpha over a uniform rho grid, one column per alpha."""
    columns = figure_columns(alphas, steps)
    return to_csv(list(columns), zip(*columns.values()))
