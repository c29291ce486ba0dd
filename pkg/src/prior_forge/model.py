"""Finite multi-player information structures over exact rationals.

A structure is a finite state space, one partition per player, and one type
(posterior distribution) per player and cell. Types must be probability
distributions supported inside their own cell and constant across the cell.
All model objects are immutable once validated and every operation on them is
a pure function.

State and player labels are strings at the boundary; internally everything is
index-based (states ``0..M-1`` in declaration order, players likewise).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ._rational import ONE, ZERO, Rational, rational
from .errors import (
    DimensionError,
    EmptySetError,
    InconsistencyError,
    NotAComponentError,
    PartitionError,
    SchemaError,
    StochasticityError,
    SupportError,
)

# A payoff vector is a plain tuple of exact rationals, one entry per state.
PayoffVector = tuple


def payoff_vector(values: Sequence, size: int | None = None) -> PayoffVector:
    """Coerce a sequence into a payoff vector, rejecting floats."""
    vec = tuple(rational(v) for v in values)
    if size is not None and len(vec) != size:
        raise DimensionError(f"payoff vector has {len(vec)} entries, expected {size}")
    return vec


@dataclass(frozen=True)
class Distribution:
    """An exact probability distribution over indexed states."""

    probs: tuple

    def __post_init__(self) -> None:
        probs = tuple(rational(v) for v in self.probs)
        object.__setattr__(self, "probs", probs)
        if any(v < ZERO for v in probs):
            raise StochasticityError("negative mass")
        if sum(probs, ZERO) != ONE:
            raise StochasticityError(f"masses sum to {sum(probs, ZERO)}, not 1")

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, i: int):
        return self.probs[i]

    def __iter__(self):
        return iter(self.probs)

    def mass(self, states: Iterable[int]):
        return sum((self.probs[s] for s in states), ZERO)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.probs) if v)


def dot(weights: Sequence, values: Sequence):
    if len(weights) != len(values):
        raise DimensionError(f"length mismatch: {len(weights)} vs {len(values)}")
    return sum((w * v for w, v in zip(weights, values) if w), ZERO)


def expectation(f: Sequence, d: Distribution):
    """Expected value of payoff vector ``f`` under distribution ``d``."""
    return dot(d.probs, f)


def uniform(size: int) -> Distribution:
    if size <= 0:
        raise EmptySetError("cannot build a distribution over no states")
    w = Rational(1, size)
    return Distribution((w,) * size)


def point_mass(state: int, size: int) -> Distribution:
    return Distribution(tuple(ONE if i == state else ZERO for i in range(size)))


@dataclass(frozen=True)
class InformationStructure:
    """States, players, per-player partitions, per-cell types.

    ``partitions[i]`` lists player ``i``'s cells as sorted index tuples, ordered
    by smallest contained state. ``cell_types[i][c]`` is the type shared by all
    states of cell ``c``. Construction validates every invariant; instances are
    immutable afterwards.
    """

    states: tuple[str, ...]
    players: tuple[str, ...]
    partitions: tuple[tuple[tuple[int, ...], ...], ...]
    cell_types: tuple[tuple[Distribution, ...], ...]

    def __post_init__(self) -> None:
        m = len(self.states)
        if m == 0:
            raise EmptySetError("a structure needs at least one state")
        if len(self.players) == 0:
            raise EmptySetError("a structure needs at least one player")
        for labels, kind in ((self.states, "state"), (self.players, "player")):
            if any(not isinstance(x, str) or not x for x in labels):
                raise SchemaError(f"{kind} labels must be non-empty strings")
            if len(set(labels)) != len(labels):
                raise SchemaError(f"duplicate {kind} labels")
        if len(self.partitions) != len(self.players) or len(self.cell_types) != len(self.players):
            raise DimensionError("need one partition and one type table per player")

        cell_of = []
        for i, player in enumerate(self.players):
            cells = self.partitions[i]
            seen = [-1] * m
            for c, cell in enumerate(cells):
                if len(cell) == 0:
                    raise PartitionError(f"player {player!r} has an empty cell")
                if tuple(sorted(cell)) != tuple(cell):
                    raise PartitionError(f"player {player!r}: cell {cell} not sorted")
                for s in cell:
                    if not 0 <= s < m:
                        raise PartitionError(f"player {player!r}: state index {s} out of range")
                    if seen[s] != -1:
                        raise PartitionError(
                            f"player {player!r}: state {self.states[s]!r} appears in two cells"
                        )
                    seen[s] = c
            if any(c == -1 for c in seen):
                missing = self.states[seen.index(-1)]
                raise PartitionError(f"player {player!r}: state {missing!r} not covered")
            if list(cells) != sorted(cells, key=lambda cell: cell[0]):
                raise PartitionError(f"player {player!r}: cells not ordered by least state")

            types = self.cell_types[i]
            if len(types) != len(cells):
                raise DimensionError(f"player {player!r}: {len(types)} types for {len(cells)} cells")
            for c, t in enumerate(types):
                if len(t) != m:
                    raise DimensionError(
                        f"player {player!r}: type for cell {c} has {len(t)} entries, expected {m}"
                    )
                if t.mass(cells[c]) != ONE:
                    raise SupportError(
                        f"player {player!r}: type for cell {cells[c]} puts mass outside the cell"
                    )
            cell_of.append(tuple(seen))
        object.__setattr__(self, "_cell_of", tuple(cell_of))

    # -- indexed access -------------------------------------------------

    @property
    def num_states(self) -> int:
        return len(self.states)

    @property
    def num_players(self) -> int:
        return len(self.players)

    def cell_of(self, player: int, state: int) -> int:
        return self._cell_of[player][state]  # type: ignore[attr-defined]

    def num_cells(self, player: int) -> int:
        return len(self.partitions[player])

    def cell_states(self, player: int, cell: int) -> tuple[int, ...]:
        return self.partitions[player][cell]

    def type_of_cell(self, player: int, cell: int) -> Distribution:
        return self.cell_types[player][cell]

    def type_at(self, player: int, state: int) -> Distribution:
        return self.cell_types[player][self.cell_of(player, state)]

    def state_index(self, label: str) -> int:
        try:
            return self.states.index(label)
        except ValueError:
            raise SchemaError(f"unknown state label {label!r}") from None

    def player_index(self, label: str) -> int:
        try:
            return self.players.index(label)
        except ValueError:
            raise SchemaError(f"unknown player label {label!r}") from None

    def distinct_types(self, player: int) -> tuple[tuple[Distribution, tuple[int, ...]], ...]:
        """Player's distinct type vectors with the cells sharing each, in
        order of first appearance."""
        order: list[tuple[Distribution, list[int]]] = []
        index: dict[tuple, int] = {}
        for c, t in enumerate(self.cell_types[player]):
            key = t.probs
            if key in index:
                order[index[key]][1].append(c)
            else:
                index[key] = len(order)
                order.append((t, [c]))
        return tuple((t, tuple(cs)) for t, cs in order)


def make_structure(
    states: Sequence[str],
    players: Sequence[str],
    partitions: Sequence[Sequence[Sequence[int]]],
    cell_types: Sequence[Sequence[Distribution | Sequence]],
) -> InformationStructure:
    """Index-based constructor; normalizes ordering, then validates."""
    norm_parts = tuple(
        tuple(sorted((tuple(sorted(cell)) for cell in cells), key=lambda c: c[0] if c else -1))
        for cells in partitions
    )
    # Types must follow their cells through the normalization.
    norm_types = []
    for i, cells in enumerate(partitions):
        keyed = {
            tuple(sorted(cell)): _as_distribution(cell_types[i][c])
            for c, cell in enumerate(cells)
        }
        if len(keyed) != len(cells):
            raise PartitionError(f"player index {i}: duplicate cells")
        norm_types.append(tuple(keyed[cell] for cell in norm_parts[i]))
    return InformationStructure(tuple(states), tuple(players), norm_parts, tuple(norm_types))


def _as_distribution(obj) -> Distribution:
    return obj if isinstance(obj, Distribution) else Distribution(tuple(obj))


def validate_structure(raw: Mapping) -> InformationStructure:
    """Build a structure from its label-based raw description.

    ``raw`` carries ``states``, ``players``, ``partitions`` (player label ->
    list of cells, each a list of state labels), and ``types`` (player label ->
    either a mapping of cell index -> distribution, or a list with one
    distribution per state). Rationals may be ints or ``"a/b"`` strings;
    floats are rejected. Idempotent: an already-built structure is re-checked
    through the constructor and returned equal.
    """
    if isinstance(raw, InformationStructure):
        return InformationStructure(raw.states, raw.players, raw.partitions, raw.cell_types)
    if not isinstance(raw, Mapping):
        raise SchemaError("structure document must be a mapping")
    for key in ("states", "players", "partitions", "types"):
        if key not in raw:
            raise SchemaError(f"missing {key!r}")
    states = _label_list(raw["states"], "states")
    players = _label_list(raw["players"], "players")
    state_index = {s: k for k, s in enumerate(states)}

    partitions = []
    cell_types = []
    parts_raw = raw["partitions"]
    types_raw = raw["types"]
    if not isinstance(parts_raw, Mapping) or not isinstance(types_raw, Mapping):
        raise SchemaError("'partitions' and 'types' must map player labels")
    for player in players:
        if player not in parts_raw:
            raise SchemaError(f"no partition for player {player!r}")
        if player not in types_raw:
            raise SchemaError(f"no types for player {player!r}")
        cells = []
        for cell in parts_raw[player]:
            if not isinstance(cell, Sequence) or isinstance(cell, str):
                raise SchemaError(f"player {player!r}: cells must be lists of state labels")
            idx = []
            for s in cell:
                if s not in state_index:
                    raise SchemaError(f"player {player!r}: unknown state label {s!r}")
                idx.append(state_index[s])
            cells.append(tuple(sorted(idx)))
        cells.sort(key=lambda c: c[0] if c else -1)

        spec = types_raw[player]
        if isinstance(spec, Mapping):
            types = _types_per_cell(player, spec, cells, len(states))
        elif isinstance(spec, Sequence) and not isinstance(spec, str):
            types = _types_per_state(player, spec, cells, len(states))
        else:
            raise SchemaError(f"player {player!r}: types must be a mapping or a per-state list")
        partitions.append(tuple(cells))
        cell_types.append(types)

    return InformationStructure(tuple(states), tuple(players), tuple(partitions), tuple(cell_types))


def _label_list(obj, what: str) -> tuple[str, ...]:
    if not isinstance(obj, Sequence) or isinstance(obj, str):
        raise SchemaError(f"{what} must be a list of strings")
    return tuple(str(x) for x in obj)


def _types_per_cell(player, spec, cells, m) -> tuple[Distribution, ...]:
    table = {}
    for key, row in spec.items():
        try:
            c = int(key)
        except (TypeError, ValueError):
            raise SchemaError(f"player {player!r}: type keys must be cell indices") from None
        if not 0 <= c < len(cells):
            raise SchemaError(f"player {player!r}: cell index {c} out of range")
        table[c] = _distribution_row(player, row, m)
    missing = sorted(set(range(len(cells))) - set(table))
    if missing:
        raise SchemaError(f"player {player!r}: no type for cell index {missing[0]}")
    return tuple(table[c] for c in range(len(cells)))


def _types_per_state(player, spec, cells, m) -> tuple[Distribution, ...]:
    if len(spec) != m:
        raise SchemaError(f"player {player!r}: per-state types need {m} rows, got {len(spec)}")
    rows = [_distribution_row(player, row, m) for row in spec]
    types = []
    for cell in cells:
        first = rows[cell[0]]
        for s in cell[1:]:
            if rows[s].probs != first.probs:
                raise InconsistencyError(
                    f"player {player!r}: types differ inside cell {cell}"
                )
        types.append(first)
    return tuple(types)


def _distribution_row(player, row, m) -> Distribution:
    if not isinstance(row, Sequence) or isinstance(row, str):
        raise SchemaError(f"player {player!r}: a type must be a list of rationals")
    if len(row) != m:
        raise DimensionError(f"player {player!r}: type has {len(row)} entries, expected {m}")
    return Distribution(tuple(row))


# -- substructures ------------------------------------------------------


def forward_closed(structure: InformationStructure, states: Iterable[int]) -> bool:
    """True when every type at a member state keeps its support inside the set.

    This is exactly the common-certainty-component condition; the certainty
    module layers graph machinery on top of it.
    """
    inside = frozenset(states)
    if not inside:
        raise EmptySetError("the empty set is never a component")
    if not all(0 <= s < structure.num_states for s in inside):
        raise DimensionError("state index out of range")
    for s in inside:
        for i in range(structure.num_players):
            t = structure.type_at(i, s)
            if t.mass(inside) != ONE:
                return False
    return True


def induced_substructure(
    structure: InformationStructure, states: Iterable[int]
) -> InformationStructure:
    """Restriction to a common certainty component.

    Types are restricted without renormalization; on a component they keep
    full mass, so the result is again a valid structure. Raises
    ``NotAComponentError`` otherwise.
    """
    subset = sorted(set(states))
    if not forward_closed(structure, subset):
        raise NotAComponentError(f"{subset} is not a common certainty component")
    reindex = {s: k for k, s in enumerate(subset)}
    states_out = tuple(structure.states[s] for s in subset)
    partitions = []
    types = []
    for i in range(structure.num_players):
        cells_out = []
        types_out = []
        for c, cell in enumerate(structure.partitions[i]):
            kept = tuple(reindex[s] for s in cell if s in reindex)
            if not kept:
                continue
            t = structure.type_of_cell(i, c)
            cells_out.append(kept)
            types_out.append(Distribution(tuple(t[s] for s in subset)))
        order = sorted(range(len(cells_out)), key=lambda k: cells_out[k][0])
        partitions.append(tuple(cells_out[k] for k in order))
        types.append(tuple(types_out[k] for k in order))
    return InformationStructure(states_out, structure.players, tuple(partitions), tuple(types))


def single_player_view(structure: InformationStructure, player: int) -> InformationStructure:
    """The one-player structure (same states, this player's partition/types)."""
    return InformationStructure(
        structure.states,
        (structure.players[player],),
        (structure.partitions[player],),
        (structure.cell_types[player],),
    )


def restrict_distribution(d: Distribution, subset: Sequence[int]) -> tuple:
    """Masses of ``d`` on ``subset`` (not renormalized)."""
    return tuple(d[s] for s in subset)


def zero_extend(values: Sequence, subset: Sequence[int], size: int) -> tuple:
    """Embed a vector on ``subset`` into the full space, zero elsewhere."""
    out = [ZERO] * size
    for v, s in zip(values, subset):
        out[s] = v
    return tuple(out)
