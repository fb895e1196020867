import csv
import io
import json
import math
from numbers import Integral, Real
from typing import Any, List, Sequence

import click

CSV_HEADER = [
    "axis", "value", "mode_index", "frequency", "field_shift", "ground_energy",
]


def format_float(x: float) -> str:
    """17 significant digits; non-finite values become `null`."""
    x = float(x)
    if not math.isfinite(x):
        return "null"
    if x == 0:
        # no negative zero in reports
        return "0"
    return format(x, ".17g")


def format_number(x: Any) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Integral):
        return str(int(x))
    return format_float(x)


def _encode(value: Any, level: int) -> str:
    pad = "  " * (level + 1)
    end_pad = "  " * level
    if value is None:
        return "null"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (bool, Integral, Real)):
        return format_number(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(key))}: {_encode(item, level + 1)}"
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + end_pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{pad}{_encode(item, level + 1)}" for item in value]
        return "[\n" + ",\n".join(items) + "\n" + end_pad + "]"
    raise TypeError(f'Cannot encode value of type {type(value).__name__}.')


def dump_json(report: dict) -> str:
    """
    JSON with insertion-ordered keys, two-space indent and fixed float
    formatting, so identical reports serialise to identical bytes.
    """
    return _encode(report, 0) + "\n"


def dump_csv(header: Sequence[str], rows: List[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([
            "" if cell is None
            else cell if isinstance(cell, str)
            else format_number(cell)
            for cell in row
        ])
    return buffer.getvalue()


def write_output(text: str, path: str | None) -> None:
    if path is None:
        click.echo(text, nl=False)
        return
    with open(path, 'w', newline='\n') as file:
        file.write(text)
