"""MPS export/import for :class:`~speedcover.model.MilpModel`.

Writes minimization models in fixed-field MPS with INTORG/INTEND markers
around integer columns; RANGES is never used. Values are printed with 17
significant digits so floats survive a round trip exactly. A metadata sidecar
(``<path>.meta.json``) carries the model summary.

The bundled reader understands exactly what the writer emits (plus the common
bound keywords), which is enough to verify exports by re-parsing.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from .errors import MpsFormatError
from .model import BINARY, CONTINUOUS, EQ, GE, INTEGER, LE, MilpModel

_OBJ_ROW = "OBJ"
_SENSE_CODE = {LE: "L", GE: "G", EQ: "E"}
_CODE_SENSE = {v: k for k, v in _SENSE_CODE.items()}
_MAX_NAME = 255


def _fmt(value: float) -> str:
    return format(value, ".17g")


def _check_names(names: Iterable[str], what: str) -> None:
    seen = set()
    for name in names:
        if not name or len(name) > _MAX_NAME or any(ch.isspace() for ch in name):
            raise MpsFormatError(f"{what} name {name!r} is empty, too long, or has spaces")
        if name in seen:
            raise MpsFormatError(f"duplicate {what} name {name!r}")
        seen.add(name)


def write_mps(model: MilpModel) -> str:
    """Render the model as MPS text."""
    _check_names((v.name for v in model.variables), "column")
    _check_names((c.name for c in model.constraints), "row")
    if any(c.name == _OBJ_ROW for c in model.constraints):
        raise MpsFormatError(f"row name {_OBJ_ROW!r} is reserved for the objective")

    width = max(
        [len(_OBJ_ROW)]
        + [len(v.name) for v in model.variables]
        + [len(c.name) for c in model.constraints],
        default=len(_OBJ_ROW),
    )
    width = max(width, 8)

    def pad(s: str) -> str:
        return s.ljust(width)

    lines = [f"NAME          {model.name}"]
    lines.append("OBJSENSE")
    lines.append("    MIN")
    lines.append("ROWS")
    lines.append(f" N  {_OBJ_ROW}")
    for con in model.constraints:
        lines.append(f" {_SENSE_CODE[con.sense]}  {con.name}")

    entries: dict[int, list[tuple[str, float]]] = {v.id: [] for v in model.variables}
    for con in model.constraints:
        for vid, coef in con.terms:
            entries[vid].append((con.name, coef))

    lines.append("COLUMNS")
    in_integer_block = False
    marker_count = 0
    for v in model.variables:
        if v.is_integral != in_integer_block:
            tag = "INTORG" if v.is_integral else "INTEND"
            lines.append(f"    {pad(f'M{marker_count}')}  {pad(chr(39) + 'MARKER' + chr(39))}  '{tag}'")
            in_integer_block = v.is_integral
            marker_count += 1
        lines.append(f"    {pad(v.name)}  {pad(_OBJ_ROW)}  {_fmt(v.objective)}")
        for row_name, coef in entries[v.id]:
            lines.append(f"    {pad(v.name)}  {pad(row_name)}  {_fmt(coef)}")
    if in_integer_block:
        lines.append(f"    {pad(f'M{marker_count}')}  {pad(chr(39) + 'MARKER' + chr(39))}  'INTEND'")

    lines.append("RHS")
    for con in model.constraints:
        if con.rhs != 0.0:
            lines.append(f"    {pad('RHS')}  {pad(con.name)}  {_fmt(con.rhs)}")

    lines.append("BOUNDS")
    for v in model.variables:
        if v.kind == BINARY:
            lines.append(f" BV {pad('BND')}  {pad(v.name)}")
            continue
        if v.lower == v.upper:
            lines.append(f" FX {pad('BND')}  {pad(v.name)}  {_fmt(v.lower)}")
            continue
        if v.lower == float("-inf"):
            lines.append(f" MI {pad('BND')}  {pad(v.name)}")
        elif v.lower != 0.0:
            lines.append(f" LO {pad('BND')}  {pad(v.name)}  {_fmt(v.lower)}")
        if v.upper != float("inf"):
            lines.append(f" UP {pad('BND')}  {pad(v.name)}  {_fmt(v.upper)}")

    lines.append("ENDATA")
    return "\n".join(lines) + "\n"


def export_mps(model: MilpModel, path: "str | Path") -> None:
    """Write ``path`` plus a ``<path>.meta.json`` sidecar."""
    text = write_mps(model)
    out = Path(path)
    out.write_text(text, encoding="utf-8")
    sidecar = out.with_name(out.name + ".meta.json")
    sidecar.write_text(json.dumps(model.summary(), indent=2, sort_keys=True) + "\n", encoding="utf-8")


def parse_mps(text: str) -> MilpModel:
    """Parse MPS text produced by :func:`write_mps` back into a model."""
    name = ""
    section = None
    row_order: list[str] = []
    row_sense: dict[str, str] = {}
    col_order: list[str] = []
    col_kind: dict[str, str] = {}
    col_obj: dict[str, float] = {}
    col_entries: dict[str, list[tuple[str, float]]] = {}
    rhs: dict[str, float] = {}
    bounds: dict[str, list[tuple[str, float]]] = {}
    integer_block = False
    minimize_seen = False

    for raw in text.splitlines():
        if not raw.strip() or raw.lstrip().startswith("*"):
            continue
        if not raw[0].isspace():
            head = raw.split()
            section = head[0]
            if section == "NAME":
                name = head[1] if len(head) > 1 else ""
            elif section == "ENDATA":
                break
            elif section not in ("OBJSENSE", "ROWS", "COLUMNS", "RHS", "BOUNDS", "RANGES"):
                raise MpsFormatError(f"unknown section {section!r}")
            continue

        tokens = raw.split()
        if section == "OBJSENSE":
            if tokens[0] == "MIN":
                minimize_seen = True
            elif tokens[0] == "MAX":
                raise MpsFormatError("only minimization models are supported")
        elif section == "ROWS":
            code, row = tokens[0], tokens[1]
            if code == "N":
                continue  # objective row
            if code not in _CODE_SENSE:
                raise MpsFormatError(f"unknown row type {code!r}")
            row_order.append(row)
            row_sense[row] = _CODE_SENSE[code]
        elif section == "COLUMNS":
            if len(tokens) >= 3 and tokens[1] == "'MARKER'":
                integer_block = tokens[2] == "'INTORG'"
                continue
            col, row, value = tokens[0], tokens[1], float(tokens[2])
            if col not in col_kind:
                col_order.append(col)
                col_kind[col] = INTEGER if integer_block else CONTINUOUS
                col_obj[col] = 0.0
                col_entries[col] = []
            if row == _OBJ_ROW:
                col_obj[col] = value
            else:
                if row not in row_sense:
                    raise MpsFormatError(f"column {col!r} references unknown row {row!r}")
                col_entries[col].append((row, value))
            if len(tokens) >= 5:  # optional second row/value pair
                row2, value2 = tokens[3], float(tokens[4])
                if row2 == _OBJ_ROW:
                    col_obj[col] = value2
                else:
                    col_entries[col].append((row2, value2))
        elif section == "RHS":
            rhs[tokens[1]] = float(tokens[2])
            if len(tokens) >= 5:
                rhs[tokens[3]] = float(tokens[4])
        elif section == "RANGES":
            raise MpsFormatError("RANGES sections are not supported")
        elif section == "BOUNDS":
            code, col = tokens[0], tokens[2]
            value = float(tokens[3]) if len(tokens) > 3 else 0.0
            bounds.setdefault(col, []).append((code, value))

    if not minimize_seen:
        raise MpsFormatError("missing OBJSENSE MIN section")

    model = MilpModel(name=name)
    inf = float("inf")
    for col in col_order:
        lower, upper = 0.0, inf
        kind = col_kind[col]
        for code, value in bounds.get(col, []):
            if code == "BV":
                kind, lower, upper = BINARY, 0.0, 1.0
            elif code == "FX":
                lower = upper = value
            elif code == "LO":
                lower = value
            elif code == "UP":
                upper = value
            elif code == "MI":
                lower = -inf
            elif code == "PL":
                upper = inf
            elif code == "FR":
                lower, upper = -inf, inf
            else:
                raise MpsFormatError(f"unknown bound type {code!r}")
        model.add_variable(col, kind, lower, upper, objective=col_obj[col])

    var_id = {v.name: v.id for v in model.variables}
    terms_by_row: dict[str, list[tuple[int, float]]] = {r: [] for r in row_order}
    for col in col_order:
        for row, value in col_entries[col]:
            terms_by_row[row].append((var_id[col], value))
    for row in row_order:
        model.add_constraint(row, terms_by_row[row], row_sense[row], rhs.get(row, 0.0))
    return model


def load_mps(path: "str | Path") -> MilpModel:
    return parse_mps(Path(path).read_text(encoding="utf-8"))


def structurally_equal(a: MilpModel, b: MilpModel) -> bool:
    """Equality up to term order within constraints (hints/metadata ignored)."""
    if len(a.variables) != len(b.variables) or len(a.constraints) != len(b.constraints):
        return False
    for va, vb in zip(a.variables, b.variables):
        if (va.name, va.kind, va.lower, va.upper, va.objective) != (
            vb.name,
            vb.kind,
            vb.lower,
            vb.upper,
            vb.objective,
        ):
            return False
    rows_a = {c.name: (sorted(c.terms), c.sense, c.rhs) for c in a.constraints}
    rows_b = {c.name: (sorted(c.terms), c.sense, c.rhs) for c in b.constraints}
    return rows_a == rows_b
