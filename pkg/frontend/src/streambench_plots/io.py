"""Readers for the benchmark CLI's CSV sample format and JSON fit reports.

These parse the wire formats only; nothing here imports the benchmark
package itself.
"""

import json
from dataclasses import dataclass

EXPECTED_COLUMNS = ["test", "order", "K", "n_elements", "nl", "ng",
                    "bytes", "trials", "elapsed_s", "bandwidth_GBps"]

FIT_KEYS = ["test", "order", "T0_s", "Wmax_Bps", "B80_bytes", "r2",
            "n_points", "clamped_T0"]


class SchemaError(ValueError):
    """Input file does not match the expected wire format."""


@dataclass(frozen=True)
class SampleRow:
    test: str
    order: int | None
    K: int | None
    n_elements: int | None
    nl: int | None
    ng: int | None
    bytes: int
    trials: int
    elapsed_s: float
    bandwidth_GBps: float


@dataclass(frozen=True)
class FitEntry:
    test: str
    order: int | None
    T0_s: float
    Wmax_Bps: float
    B80_bytes: float
    r2: float
    n_points: int
    clamped_T0: bool


def _opt_int(cell: str) -> int | None:
    return int(cell) if cell else None


def read_samples(csv_path: str) -> list[SampleRow]:
    """Parse a sweep CSV; raises SchemaError naming the offending column."""
    with open(csv_path, "r", encoding="utf-8", newline="") as f:
        header = f.readline().rstrip("\r\n")
        columns = header.split(",") if header else []
        for i, expected in enumerate(EXPECTED_COLUMNS):
            if i >= len(columns) or columns[i] != expected:
                found = columns[i] if i < len(columns) else "<missing>"
                raise SchemaError(
                    f"{csv_path}: header column {i + 1} should be "
                    f"{expected!r}, found {found!r}")
        if len(columns) > len(EXPECTED_COLUMNS):
            raise SchemaError(
                f"{csv_path}: unexpected extra column {columns[len(EXPECTED_COLUMNS)]!r}")

        rows = []
        for lineno, line in enumerate(f, start=2):
            line = line.rstrip("\r\n")
            if not line:
                continue
            cells = line.split(",")
            if len(cells) != len(EXPECTED_COLUMNS):
                raise SchemaError(f"{csv_path}: line {lineno}: expected "
                                  f"{len(EXPECTED_COLUMNS)} columns, got {len(cells)}")
            converters = [("test", str), ("order", _opt_int), ("K", _opt_int),
                          ("n_elements", _opt_int), ("nl", _opt_int),
                          ("ng", _opt_int), ("bytes", int), ("trials", int),
                          ("elapsed_s", float), ("bandwidth_GBps", float)]
            values = {}
            for (name, convert), cell in zip(converters, cells):
                try:
                    values[name] = convert(cell)
                except ValueError:
                    raise SchemaError(
                        f"{csv_path}: line {lineno}: column {name!r}: "
                        f"cannot parse {cell!r}") from None
            rows.append(SampleRow(**values))

    if not rows:
        raise SchemaError(f"{csv_path}: no data rows")
    return rows


def read_fits(json_path: str) -> list[FitEntry]:
    """Parse a fit report; raises SchemaError naming any missing key."""
    with open(json_path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{json_path}: not valid JSON: {exc}") from None
    if not isinstance(data, list):
        raise SchemaError(f"{json_path}: expected a top-level array of fits")
    entries = []
    for i, obj in enumerate(data):
        for key in FIT_KEYS:
            if key not in obj:
                raise SchemaError(f"{json_path}: fit entry {i}: missing key {key!r}")
        entries.append(FitEntry(
            test=obj["test"],
            order=obj["order"],
            T0_s=float(obj["T0_s"]),
            Wmax_Bps=float(obj["Wmax_Bps"]),
            B80_bytes=float(obj["B80_bytes"]),
            r2=float(obj["r2"]),
            n_points=int(obj["n_points"]),
            clamped_T0=bool(obj["clamped_T0"]),
        ))
    return entries
