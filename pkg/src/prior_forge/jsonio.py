"""JSON wire format: float-rejecting parsing and canonical serialization.

Documents carry ``"schema": "prior-forge/1"``. The tag is always emitted; on
input a missing tag is tolerated, a different one is rejected. Rationals
travel as ``"a/b"`` strings, or bare ints when the denominator is 1. Float
literals are rejected at parse time: they cannot carry the exact values the
rest of the package promises, and silently rounding them would poison every
certificate downstream.

Serialization is canonical: keys in fixed order, two-space indent, a single
trailing newline. Identical inputs produce byte-identical documents.
"""

from __future__ import annotations

import json
from typing import Sequence

from ._rational import rational, to_json_value
from .errors import DimensionError, SchemaError
from .model import Distribution, InformationStructure, make_structure, payoff_vector

SCHEMA = "prior-forge/1"


def _reject_float(text: str):
    raise SchemaError(
        f"float literal {text!r} is not accepted; write rationals as 'a/b' strings"
    )


def loads(text: str):
    """``json.loads`` with float and NaN/Infinity literals turned into errors."""
    try:
        return json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None


def load_path(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def dumps_canonical(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def check_schema(doc: dict) -> None:
    tag = doc.get("schema")
    if tag is not None and tag != SCHEMA:
        raise SchemaError(f"unsupported schema tag {tag!r}; this tool reads {SCHEMA!r}")


def parse_rational_value(v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise SchemaError(f"expected an integer or 'a/b' string, got {v!r}")
    try:
        return rational(v)
    except (TypeError, ValueError) as exc:
        raise SchemaError(str(exc)) from None


def _mapping(doc, what: str) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError(f"{what} must be a JSON object, got {type(doc).__name__}")
    return doc


def _list_field(data: dict, key: str) -> list:
    if key not in data:
        raise SchemaError(f"missing field {key!r}")
    value = data[key]
    if not isinstance(value, list):
        raise SchemaError(f"field {key!r} must be a list")
    return value


def _label_list(data: dict, key: str) -> list[str]:
    values = _list_field(data, key)
    if not all(isinstance(v, str) for v in values):
        raise SchemaError(f"field {key!r} must contain strings")
    return values


def _rational_row(values, length: int, what: str) -> tuple:
    if not isinstance(values, list) or len(values) != length:
        raise SchemaError(f"{what} must be a list of {length} rationals")
    return tuple(parse_rational_value(v) for v in values)


def parse_structure(doc) -> InformationStructure:
    """Build a structure from its document form.

    ``partitions`` lists each player's cells as state labels. Types come
    either per cell (``types``, aligned with the cells) or per state
    (``state_types``, one row per state, constant within each cell).
    """
    data = _mapping(doc, "structure document")
    check_schema(data)
    states = _label_list(data, "states")
    players = _label_list(data, "players")
    if len(set(states)) != len(states):
        raise SchemaError("duplicate state labels")
    index = {s: k for k, s in enumerate(states)}
    m = len(states)

    raw_parts = _list_field(data, "partitions")
    if len(raw_parts) != len(players):
        raise SchemaError("need one partition per player")
    partitions = []
    for cells in raw_parts:
        if not isinstance(cells, list):
            raise SchemaError("each partition must be a list of cells")
        idx_cells = []
        for cell in cells:
            if not isinstance(cell, list) or not cell:
                raise SchemaError("each cell must be a non-empty list of state labels")
            try:
                idx_cells.append(tuple(index[s] for s in cell))
            except (KeyError, TypeError):
                raise SchemaError(f"cell {cell!r} names an unknown state") from None
        partitions.append(tuple(idx_cells))

    if ("types" in data) == ("state_types" in data):
        raise SchemaError("provide exactly one of 'types' or 'state_types'")
    cell_types = []
    if "types" in data:
        raw_types = _list_field(data, "types")
        if len(raw_types) != len(players):
            raise SchemaError("need one type table per player")
        for i, rows in enumerate(raw_types):
            if not isinstance(rows, list) or len(rows) != len(partitions[i]):
                raise SchemaError(
                    f"player {players[i]!r} needs one type row per cell"
                )
            cell_types.append(
                tuple(
                    _rational_row(row, m, f"type row for player {players[i]!r}")
                    for row in rows
                )
            )
    else:
        raw_types = _list_field(data, "state_types")
        if len(raw_types) != len(players):
            raise SchemaError("need one type table per player")
        for i, rows in enumerate(raw_types):
            if not isinstance(rows, list) or len(rows) != m:
                raise SchemaError(
                    f"player {players[i]!r} needs one state_types row per state"
                )
            parsed = [
                _rational_row(row, m, f"type row for player {players[i]!r}")
                for row in rows
            ]
            per_cell = []
            for cell in partitions[i]:
                first = parsed[cell[0]]
                for w in cell[1:]:
                    if parsed[w] != first:
                        raise SchemaError(
                            f"player {players[i]!r} has differing types inside "
                            f"cell {[states[w] for w in cell]}"
                        )
                per_cell.append(first)
            cell_types.append(tuple(per_cell))

    return make_structure(states, players, partitions, cell_types)


def structure_to_json(structure: InformationStructure) -> dict:
    return {
        "schema": SCHEMA,
        "states": list(structure.states),
        "players": list(structure.players),
        "partitions": [
            [[structure.states[w] for w in cell] for cell in cells]
            for cells in structure.partitions
        ],
        "types": [
            [
                [to_json_value(v) for v in structure.type_of_cell(i, c)]
                for c in range(structure.num_cells(i))
            ]
            for i in range(structure.num_players)
        ],
    }


def parse_distribution(doc, structure: InformationStructure | None = None) -> Distribution:
    """Accepts ``{"dist": [...]}`` or a bare list of rationals."""
    if isinstance(doc, dict):
        check_schema(doc)
        values = _list_field(doc, "dist")
    elif isinstance(doc, list):
        values = doc
    else:
        raise SchemaError("distribution document must be an object or a list")
    masses = tuple(parse_rational_value(v) for v in values)
    if structure is not None and len(masses) != structure.num_states:
        raise DimensionError(
            f"distribution has {len(masses)} entries for {structure.num_states} states"
        )
    return Distribution(masses)


def distribution_to_json(dist: Distribution) -> dict:
    return {"schema": SCHEMA, "dist": [to_json_value(v) for v in dist]}


def parse_payoffs(doc, structure: InformationStructure) -> tuple:
    """Per-player payoff rows from ``{"payoffs": [...]}`` or a bare list."""
    if isinstance(doc, dict):
        check_schema(doc)
        rows = _list_field(doc, "payoffs")
    elif isinstance(doc, list):
        rows = doc
    else:
        raise SchemaError("payoff document must be an object or a list")
    if len(rows) != structure.num_players:
        raise DimensionError(
            f"{len(rows)} payoff rows for {structure.num_players} players"
        )
    return tuple(
        payoff_vector(
            _rational_row(row, structure.num_states, "payoff row"),
            structure.num_states,
        )
        for row in rows
    )


def payoffs_to_json(payoffs: Sequence) -> dict:
    return {
        "schema": SCHEMA,
        "payoffs": [[to_json_value(v) for v in row] for row in payoffs],
    }
