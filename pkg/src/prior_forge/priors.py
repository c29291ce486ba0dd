"""Prior notions for single players and groups.

Single-player side: disintegrability (the generalized law of total
probability) and conglomerability (every event's probability sandwiched
between the extreme posteriors). Group side: the three common-prior notions,
ordered strong => universal => common, each decided exactly and returned with
a hull-weight witness that reconstructs the prior by re-multiplication.

A structural fact does most of the work here: types are supported inside
their own cells, so distinct cells of one player always carry distinct types,
and the convex weight of each type in any hull representation of p is forced
to be the mass p puts on that type's cell. Hull membership therefore reduces
to one exact linear identity per state, no LP needed. The LPs below are kept
for what genuinely needs optimization (the strictness margin epsilon) and for
cross-checking against the vertex-enumeration oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ._rational import ONE, ZERO, rational
from .certainty import is_maximal, is_strongly_maximal, minimal_components
from .errors import (
    DimensionError,
    PlayerCountError,
    SizeCapError,
    VerificationError,
)
from .lp import LinearProgram, LPBuilder, LPOutcome, solve
from .model import (
    Distribution,
    InformationStructure,
    induced_substructure,
    zero_extend,
)

EVENT_CAP = 24  # exhaustive event enumeration refuses beyond this many states


@dataclass(frozen=True)
class PriorWitness:
    """A prior plus, per player, convex weights over that player's distinct
    types expressing it as a mixture of posteriors."""

    prior: Distribution
    hull_weights: tuple[tuple, ...]

    def verify(self, structure: InformationStructure) -> None:
        """Exact re-multiplication; raises VerificationError on any defect."""
        if len(self.hull_weights) != structure.num_players:
            raise VerificationError("witness has wrong number of weight vectors")
        if len(self.prior) != structure.num_states:
            raise VerificationError("witness prior has wrong dimension")
        for i in range(structure.num_players):
            weights = self.hull_weights[i]
            types = structure.distinct_types(i)
            if len(weights) != len(types):
                raise VerificationError(f"player {i} weight vector has wrong length")
            if any(w < ZERO for w in weights):
                raise VerificationError(f"player {i} has a negative hull weight")
            if sum(weights, ZERO) != ONE:
                raise VerificationError(f"player {i} hull weights do not sum to 1")
            for w in range(structure.num_states):
                acc = ZERO
                for (dist, _), lam in zip(types, weights):
                    if lam:
                        acc += lam * dist[w]
                if acc != self.prior[w]:
                    raise VerificationError(
                        f"player {i} weights fail to reconstruct the prior at state {w}"
                    )


@dataclass(frozen=True)
class PriorClassification:
    prior_for_player: tuple[bool, ...]
    common: bool
    maximal: bool
    strongly_maximal: bool
    universal: bool
    strong: bool


@dataclass(frozen=True)
class PriorReport:
    """The three notions side by side; absent notions may carry a refutation
    (a trade witness) supplied by the trade layer."""

    common_prior: PriorWitness | None
    universal_common_prior: PriorWitness | None
    strong_common_prior: PriorWitness | None
    common_refutation: object | None = None
    universal_refutation: object | None = None
    strong_refutation: object | None = None


def _check_single_player(structure: InformationStructure) -> None:
    if structure.num_players != 1:
        raise PlayerCountError(
            f"operation needs exactly one player, structure has {structure.num_players}"
        )


def _check_dimension(structure: InformationStructure, dist: Distribution) -> None:
    if len(dist) != structure.num_states:
        raise DimensionError(
            f"distribution has {len(dist)} entries, structure has {structure.num_states} states"
        )


def hull_weights(
    structure: InformationStructure, player: int, dist: Distribution
) -> tuple | None:
    """Convex weights over the player's distinct types reconstructing dist,
    or None when dist is outside the hull. Weights are forced to be the cell
    masses, so this is a direct exact check, not a search."""
    _check_dimension(structure, dist)
    types = structure.distinct_types(player)
    weights = []
    for _, cells in types:
        w = ZERO
        for cell in cells:
            w += dist.mass(structure.cell_states(player, cell))
        weights.append(w)
    for state in range(structure.num_states):
        acc = ZERO
        for (tdist, _), lam in zip(types, weights):
            if lam:
                acc += lam * tdist[state]
        if acc != dist[state]:
            return None
    return tuple(weights)


def is_disintegrable(
    structure: InformationStructure, dist: Distribution
) -> tuple[bool, tuple | None]:
    """Single-player: does dist disintegrate over the partition via the type
    function? Equivalent to membership in the convex hull of the types."""
    _check_single_player(structure)
    weights = hull_weights(structure, 0, dist)
    return (weights is not None), weights


def single_player_prior(structure: InformationStructure, dist: Distribution) -> bool:
    """A single-player prior is exactly a disintegrable distribution."""
    return is_disintegrable(structure, dist)[0]


def is_conglomerable(
    structure: InformationStructure,
    dist: Distribution,
    max_states: int = EVENT_CAP,
) -> tuple[bool, tuple[int, ...] | None]:
    """Single-player sandwich property: for every proper non-empty event E,
    min_cell t(E) <= dist(E) <= max_cell t(E). Exhaustive over all 2^M - 2
    events (a Gray-code walk keeps the running sums incremental); returns a
    violating event when the answer is no."""
    _check_single_player(structure)
    _check_dimension(structure, dist)
    m = structure.num_states
    if m > max_states:
        raise SizeCapError(f"{m} states exceeds the event enumeration cap {max_states}")
    cell_dists = [d for d, _ in structure.distinct_types(0)]
    p_e = ZERO
    t_e = [ZERO] * len(cell_dists)
    full = (1 << m) - 1
    prev = 0
    for k in range(1, 1 << m):
        gray = k ^ (k >> 1)
        bit = (gray ^ prev).bit_length() - 1
        if gray & (1 << bit):
            p_e += dist[bit]
            for c, td in enumerate(cell_dists):
                if td[bit]:
                    t_e[c] += td[bit]
        else:
            p_e -= dist[bit]
            for c, td in enumerate(cell_dists):
                if td[bit]:
                    t_e[c] -= td[bit]
        prev = gray
        if gray == full:
            continue
        if p_e < min(t_e) or p_e > max(t_e):
            event = tuple(s for s in range(m) if gray & (1 << s))
            return False, event
    return True, None


def disintegrable_by_definition(
    structure: InformationStructure,
    dist: Distribution,
    max_states: int = 20,
) -> bool:
    """The literal product identity p(E n cell) == t_cell(E) * p(cell) over
    every event and cell. Exponential; exists purely as an independent oracle
    for the closed-form test above."""
    _check_single_player(structure)
    _check_dimension(structure, dist)
    m = structure.num_states
    if m > max_states:
        raise SizeCapError(f"{m} states exceeds the event enumeration cap {max_states}")
    cells = [structure.cell_states(0, c) for c in range(structure.num_cells(0))]
    types = [structure.type_of_cell(0, c) for c in range(structure.num_cells(0))]
    cell_mass = [dist.mass(cell) for cell in cells]
    for mask in range(1, 1 << m):
        event = [s for s in range(m) if mask & (1 << s)]
        for c, cell in enumerate(cells):
            inter = sum((dist[s] for s in event if s in cell), ZERO)
            t_event = sum((types[c][s] for s in event), ZERO)
            if inter != t_event * cell_mass[c]:
                return False
    return True


# -- common prior programs -------------------------------------------------


def common_prior_program(structure: InformationStructure) -> LinearProgram:
    """The joint program over (p, lambda per player, epsilon): p matches every
    player's mixture of distinct types, every cell's mass dominates epsilon,
    epsilon is maximized. Feasible iff a common prior exists; optimal
    epsilon > 0 iff a strong one does."""
    b = LPBuilder()
    m = structure.num_states
    p_vars = [b.add_var(f"p[{structure.states[w]}]", lower=0) for w in range(m)]
    lam_vars: list[list[int]] = []
    for i in range(structure.num_players):
        types = structure.distinct_types(i)
        lam_vars.append(
            [b.add_var(f"w[{structure.players[i]},{v}]", lower=0) for v in range(len(types))]
        )
    eps = b.add_var("eps", lower=0, objective=1)
    for i in range(structure.num_players):
        types = structure.distinct_types(i)
        for w in range(m):
            row = {p_vars[w]: 1}
            for v, (tdist, _) in enumerate(types):
                if tdist[w]:
                    row[lam_vars[i][v]] = -tdist[w]
            b.add_constraint(row, "=", 0)
        b.add_constraint({lv: 1 for lv in lam_vars[i]}, "=", 1)
    b.add_constraint({pv: 1 for pv in p_vars}, "=", 1)
    for cell_set in _distinct_cell_sets(structure):
        row = {p_vars[w]: 1 for w in cell_set}
        row[eps] = -1
        b.add_constraint(row, ">=", 0)
    return b.build(maximize=True)


def common_prior_polytope(
    structure: InformationStructure, with_epsilon: bool = False
) -> LinearProgram:
    """The same feasible set projected onto p alone: the forced-weight
    identity makes hull membership linear in p. Small enough for the
    vertex-enumeration oracle; with_epsilon adds the strictness margin and
    its objective."""
    b = LPBuilder()
    m = structure.num_states
    p_vars = [b.add_var(f"p[{structure.states[w]}]", lower=0) for w in range(m)]
    eps = b.add_var("eps", lower=0, objective=1) if with_epsilon else None
    for i in range(structure.num_players):
        for w in range(m):
            row: dict = {p_vars[w]: ONE}
            for c in range(structure.num_cells(i)):
                t_w = structure.type_of_cell(i, c)[w]
                if t_w:
                    for s in structure.cell_states(i, c):
                        row[p_vars[s]] = row.get(p_vars[s], ZERO) - t_w
            b.add_constraint(row, "=", 0)
    b.add_constraint({pv: 1 for pv in p_vars}, "=", 1)
    if eps is not None:
        for cell_set in _distinct_cell_sets(structure):
            row = {p_vars[w]: 1 for w in cell_set}
            row[eps] = -1
            b.add_constraint(row, ">=", 0)
    return b.build(maximize=True)


def _distinct_cell_sets(structure: InformationStructure) -> list[tuple[int, ...]]:
    """Cell state-sets across players, deduplicated: mass constraints only
    depend on the set of states."""
    seen: dict[tuple[int, ...], None] = {}
    for i in range(structure.num_players):
        for c in range(structure.num_cells(i)):
            seen.setdefault(structure.cell_states(i, c), None)
    return list(seen)


@lru_cache(maxsize=256)
def _solve_common(structure: InformationStructure) -> LPOutcome:
    return solve(common_prior_program(structure))


def _witness_from_prior(
    structure: InformationStructure, prior: Distribution
) -> PriorWitness:
    weight_rows = []
    for i in range(structure.num_players):
        weights = hull_weights(structure, i, prior)
        if weights is None:
            raise VerificationError(
                f"claimed common prior is outside player {i}'s type hull"
            )
        weight_rows.append(weights)
    witness = PriorWitness(prior, tuple(weight_rows))
    witness.verify(structure)
    return witness


def find_common_prior(structure: InformationStructure) -> PriorWitness | None:
    """A common prior with hull weights, or None. The returned prior is the
    epsilon-maximal one, so it is as spread out over cells as the structure
    allows; existence is unaffected by the objective."""
    outcome = _solve_common(structure)
    if outcome.status == "infeasible":
        return None
    prior = Distribution(outcome.primal[: structure.num_states])
    return _witness_from_prior(structure, prior)


def find_strong_common_prior(structure: InformationStructure) -> PriorWitness | None:
    """A common prior charging every cell of every player, decided by the
    exact sign of the optimal strictness margin."""
    outcome = _solve_common(structure)
    if outcome.status == "infeasible" or outcome.objective_value == ZERO:
        return None
    prior = Distribution(outcome.primal[: structure.num_states])
    witness = _witness_from_prior(structure, prior)
    if not is_strongly_maximal(structure, prior):
        raise VerificationError("strong prior witness misses a cell")
    return witness


def find_universal_common_prior(structure: InformationStructure) -> PriorWitness | None:
    """A common prior charging every common certainty component. Built from
    the minimal components: each one's induced structure must admit a common
    prior; the equal-weight mixture of their zero-extensions then charges
    every component and stays in every hull (cross-component types put no
    mass outside their own component)."""
    components = minimal_components(structure)
    parts = []
    for comp in components:
        sub = induced_substructure(structure, comp)
        witness = find_common_prior(sub)
        if witness is None:
            return None
        parts.append((comp, witness.prior))
    share = ONE / rational(len(parts))
    mixed = [ZERO] * structure.num_states
    for comp, sub_prior in parts:
        extended = zero_extend(tuple(sub_prior), comp, structure.num_states)
        for w in range(structure.num_states):
            if extended[w]:
                mixed[w] += share * extended[w]
    prior = Distribution(tuple(mixed))
    witness = _witness_from_prior(structure, prior)
    if not is_maximal(structure, prior):
        raise VerificationError("universal prior witness misses a component")
    return witness


def classify_prior(
    structure: InformationStructure, dist: Distribution
) -> PriorClassification:
    """Exact flags for a given distribution: per-player hull membership plus
    the positivity grades that upgrade a common prior to universal/strong."""
    _check_dimension(structure, dist)
    per_player = tuple(
        hull_weights(structure, i, dist) is not None
        for i in range(structure.num_players)
    )
    common = all(per_player)
    maximal = is_maximal(structure, dist)
    strongly = is_strongly_maximal(structure, dist)
    return PriorClassification(
        prior_for_player=per_player,
        common=common,
        maximal=maximal,
        strongly_maximal=strongly,
        universal=common and maximal,
        strong=common and strongly,
    )
