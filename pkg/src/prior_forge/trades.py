"""Trades, their grades, and money pumps.

A trade hands every player a payoff vector whose pointwise sum never exceeds
zero. Grades order how emphatically players want it: acceptable (no player
ever loses in expectation, someone somewhere gains), weakly agreeable
(everyone gains throughout some common certainty component), agreeable
(everyone gains everywhere). Each grade is the dual of a prior notion, and
the synthesizers here are the constructive halves of those dualities: they
either produce a graded trade or the prior side exists.

Money pumps are the distribution-level mirror: a semi-trade (every player's
conditional expectation non-negative at every state, no sum constraint)
whose total payoff has strictly negative expectation under p. Such an f
drains p-average money from an outside party while every player is content
at every information set, which is exactly what fails to exist when p is a
common prior.

All synthesis LPs box payoffs into [-1, 1]; every defining condition is
scale-invariant, so this only normalizes witnesses. Every object returned
has been re-verified against its definition; failures raise
VerificationError and mean a bug, not bad input.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ._rational import ONE, ZERO, rational
from .certainty import is_maximal, is_strongly_maximal, minimal_components
from .errors import (
    DimensionError,
    InconsistencyError,
    PlayerCountError,
    VerificationError,
)
from .lp import LPBuilder, solve
from .model import (
    Distribution,
    InformationStructure,
    dot,
    induced_substructure,
    payoff_vector,
    zero_extend,
)
from .priors import (
    PriorClassification,
    PriorReport,
    PriorWitness,
    classify_prior,
    find_common_prior,
    find_strong_common_prior,
    find_universal_common_prior,
    hull_weights,
    is_disintegrable,
)

PLAIN, UNIVERSAL, STRONG = "plain", "universal", "strong"


@dataclass(frozen=True)
class Trade:
    """Per-player payoffs with pointwise sum <= 0 (zero-sum with slack)."""

    payoffs: tuple[tuple, ...]

    def __post_init__(self) -> None:
        norm = tuple(payoff_vector(f) for f in self.payoffs)
        if not norm:
            raise DimensionError("a trade needs at least one player")
        m = len(norm[0])
        if any(len(f) != m for f in norm):
            raise DimensionError("payoff vectors differ in length")
        object.__setattr__(self, "payoffs", norm)
        for w in range(m):
            total = sum((f[w] for f in norm), ZERO)
            if total > ZERO:
                raise InconsistencyError(
                    f"payoffs sum to {total} > 0 at state index {w}; not a trade"
                )


@dataclass(frozen=True)
class SemiTrade:
    """Per-player payoffs; the defining expectation conditions depend on a
    structure, so they are checked by MoneyPumpWitness.verify, not here."""

    payoffs: tuple[tuple, ...]

    def __post_init__(self) -> None:
        norm = tuple(payoff_vector(f) for f in self.payoffs)
        if not norm:
            raise DimensionError("a semi-trade needs at least one player")
        m = len(norm[0])
        if any(len(f) != m for f in norm):
            raise DimensionError("payoff vectors differ in length")
        object.__setattr__(self, "payoffs", norm)


@dataclass(frozen=True)
class TradeClassification:
    is_trade: bool
    is_semi_trade: bool
    acceptable: bool
    weakly_agreeable: bool
    agreeable: bool
    expectations: tuple[tuple, ...]  # [player][state], exact
    sum_violations: tuple[int, ...]  # states where the pointwise sum is > 0
    strict_states: tuple[tuple[int, int], ...]  # (player, state), expectation > 0
    negative_states: tuple[tuple[int, int], ...]  # (player, state), expectation < 0
    agreeable_component: tuple[int, ...] | None


@dataclass(frozen=True)
class MoneyPumpWitness:
    distribution: Distribution
    semi_trade: SemiTrade
    deficit: object
    kind: str

    def verify(self, structure: InformationStructure) -> None:
        """Re-derive every claim from scratch; VerificationError on defect."""
        payoffs = self.semi_trade.payoffs
        if len(payoffs) != structure.num_players:
            raise VerificationError("pump witness has wrong player count")
        if len(payoffs[0]) != structure.num_states or len(self.distribution) != structure.num_states:
            raise VerificationError("pump witness has wrong state count")
        table = expectation_table(structure, payoffs)
        for i, row in enumerate(table):
            for w, e in enumerate(row):
                if e < ZERO:
                    raise VerificationError(
                        f"not a semi-trade: player {i} expects {e} < 0 at state {w}"
                    )
        total = [sum((f[w] for f in payoffs), ZERO) for w in range(structure.num_states)]
        deficit = dot(total, self.distribution)
        if deficit != self.deficit:
            raise VerificationError(
                f"stored deficit {self.deficit} differs from recomputed {deficit}"
            )
        if not deficit < ZERO:
            raise VerificationError(f"deficit {deficit} is not negative")
        if self.kind not in (PLAIN, UNIVERSAL, STRONG):
            raise VerificationError(f"unknown pump kind {self.kind!r}")
        if self.kind == UNIVERSAL and not is_maximal(structure, self.distribution):
            raise VerificationError("universal pump with non-maximal distribution")
        if self.kind == STRONG and not is_strongly_maximal(structure, self.distribution):
            raise VerificationError("strong pump with non-strongly-maximal distribution")


@dataclass(frozen=True)
class DistributionVerdict:
    """The exactly-one case split for a distribution: prior or pump, graded
    by how much of the structure p charges."""

    classification: PriorClassification
    prior_witness: PriorWitness | None
    pump_witness: MoneyPumpWitness | None
    base: str  # "common_prior" | "money_pump"
    universal: str | None  # set only when p is maximal
    strong: str | None  # set only when p is strongly maximal


def expectation_table(
    structure: InformationStructure, payoffs: tuple[tuple, ...]
) -> tuple[tuple, ...]:
    """Per player, per state, the exact conditional expectation of that
    player's payoff under their type. Constant on cells by construction."""
    table = []
    for i, f in enumerate(payoffs):
        per_cell = [
            dot(f, structure.type_of_cell(i, c)) for c in range(structure.num_cells(i))
        ]
        table.append(
            tuple(per_cell[structure.cell_of(i, w)] for w in range(structure.num_states))
        )
    return tuple(table)


def classify_trade(
    structure: InformationStructure, payoffs
) -> TradeClassification:
    """Exact flags for an arbitrary payoff family. Flags are independent
    evaluations of the defining conditions; in particular expectation flags
    are reported even when the family is not a trade."""
    norm = tuple(payoff_vector(f, structure.num_states) for f in payoffs)
    if len(norm) != structure.num_players:
        raise DimensionError(
            f"{len(norm)} payoff vectors for {structure.num_players} players"
        )
    m = structure.num_states
    table = expectation_table(structure, norm)
    sums = [sum((f[w] for f in norm), ZERO) for w in range(m)]
    sum_violations = tuple(w for w in range(m) if sums[w] > ZERO)
    strict = tuple(
        (i, w) for i in range(len(norm)) for w in range(m) if table[i][w] > ZERO
    )
    negative = tuple(
        (i, w) for i in range(len(norm)) for w in range(m) if table[i][w] < ZERO
    )
    is_semi = not negative
    agreeable = all(e > ZERO for row in table for e in row)
    component = None
    for comp in minimal_components(structure):
        if all(table[i][w] > ZERO for i in range(len(norm)) for w in comp):
            component = comp
            break
    return TradeClassification(
        is_trade=not sum_violations,
        is_semi_trade=is_semi,
        acceptable=is_semi and bool(strict),
        weakly_agreeable=component is not None,
        agreeable=agreeable,
        expectations=table,
        sum_violations=sum_violations,
        strict_states=strict,
        negative_states=negative,
        agreeable_component=component,
    )


# -- synthesis ------------------------------------------------------------


def _payoff_lp(structure: InformationStructure, with_sum_rows: bool):
    """Shared scaffolding: boxed payoff variables, optional budget rows, and
    one expectation row per (player, cell)."""
    b = LPBuilder()
    m = structure.num_states
    fvar = [
        [
            b.add_var(f"f[{structure.players[i]},{structure.states[w]}]", lower=-1, upper=1)
            for w in range(m)
        ]
        for i in range(structure.num_players)
    ]
    if with_sum_rows:
        for w in range(m):
            b.add_constraint({fvar[i][w]: 1 for i in range(structure.num_players)}, "<=", 0)
    return b, fvar


def _expectation_coeffs(structure, player, cell, fvar) -> dict:
    t = structure.type_of_cell(player, cell)
    return {
        fvar[player][w]: t[w]
        for w in structure.cell_states(player, cell)
        if t[w]
    }


def _payoffs_from_primal(structure, fvar, primal) -> tuple[tuple, ...]:
    return tuple(
        tuple(primal[fvar[i][w]] for w in range(structure.num_states))
        for i in range(structure.num_players)
    )


@lru_cache(maxsize=1024)
def find_agreeable_trade(structure: InformationStructure) -> Trade | None:
    """Maximize the worst conditional expectation subject to the budget; a
    trade exists iff the optimum is strictly positive (scale-invariance makes
    the boxed optimum decisive). Cached: the weakly-agreeable scan re-asks
    for whole-space components."""
    b, fvar = _payoff_lp(structure, with_sum_rows=True)
    delta = b.add_var("delta", objective=1)
    for i in range(structure.num_players):
        for c in range(structure.num_cells(i)):
            row = _expectation_coeffs(structure, i, c, fvar)
            row[delta] = -ONE
            b.add_constraint(row, ">=", 0)
    out = solve(b.build(maximize=True))
    if out.status != "optimal":
        raise VerificationError(f"agreeable-trade program ended {out.status}")
    if not out.objective_value > ZERO:
        return None
    trade = Trade(_payoffs_from_primal(structure, fvar, out.primal))
    if not classify_trade(structure, trade.payoffs).agreeable:
        raise VerificationError("synthesized trade is not agreeable")
    return trade


def find_weakly_agreeable_trade(structure: InformationStructure) -> Trade | None:
    """First minimal component (by least state) whose induced structure has
    an agreeable trade, zero-extended to the full state space."""
    for comp in minimal_components(structure):
        sub = induced_substructure(structure, comp)
        inner = find_agreeable_trade(sub)
        if inner is None:
            continue
        payoffs = tuple(
            zero_extend(f, comp, structure.num_states) for f in inner.payoffs
        )
        trade = Trade(payoffs)
        if not classify_trade(structure, trade.payoffs).weakly_agreeable:
            raise VerificationError("zero-extended trade lost weak agreeability")
        return trade
    return None


def find_acceptable_trade(structure: InformationStructure) -> Trade | None:
    """Maximize the total of all conditional expectations subject to the
    budget and to no player ever expecting a loss; acceptable iff the optimum
    is strictly positive. Each (player, cell) expectation is weighted by the
    cell size, i.e. the objective sums expectations over states."""
    b, fvar = _payoff_lp(structure, with_sum_rows=True)
    for i in range(structure.num_players):
        for c in range(structure.num_cells(i)):
            row = _expectation_coeffs(structure, i, c, fvar)
            b.add_constraint(row, ">=", 0)
            weight = rational(len(structure.cell_states(i, c)))
            for var, coeff in row.items():
                b.add_objective(var, weight * coeff)
    out = solve(b.build(maximize=True))
    if out.status != "optimal":
        raise VerificationError(f"acceptable-trade program ended {out.status}")
    if not out.objective_value > ZERO:
        return None
    trade = Trade(_payoffs_from_primal(structure, fvar, out.primal))
    if not classify_trade(structure, trade.payoffs).acceptable:
        raise VerificationError("synthesized trade is not acceptable")
    return trade


def pump_kind(structure: InformationStructure, dist: Distribution) -> str:
    """Strongest pump definition the distribution satisfies by its support:
    strong needs every cell charged, universal every minimal component."""
    if is_strongly_maximal(structure, dist):
        return STRONG
    if is_maximal(structure, dist):
        return UNIVERSAL
    return PLAIN


@lru_cache(maxsize=4096)
def _pump_piece(cells: tuple, types: tuple, dist_values: tuple):
    """Most negative p-expectation one player's boxed payoff can reach while
    keeping every conditional expectation non-negative.

    Semi-trades carry no budget row, so the pump program has no constraint
    linking players: its minimum is the sum of these per-player minima, and
    concatenating the per-player argmins attains it. The cache key is the
    player's own partition, types, and p, which makes the block shared
    between the full structure and that player's one-player view.
    """
    b = LPBuilder()
    m = len(dist_values)
    fvar = [b.add_var(f"f[{w}]", lower=-1, upper=1) for w in range(m)]
    for cell, t in zip(cells, types):
        b.add_constraint({fvar[w]: t[w] for w in cell if t[w]}, ">=", 0)
    for w in range(m):
        if dist_values[w]:
            b.add_objective(fvar[w], dist_values[w])
    out = solve(b.build(maximize=False))
    if out.status != "optimal":
        raise VerificationError(f"money-pump program ended {out.status}")
    return out.objective_value, out.primal


def _pump_search(
    structure: InformationStructure, dist: Distribution
) -> MoneyPumpWitness | None:
    total = ZERO
    payoffs = []
    values = tuple(dist)
    for i in range(structure.num_players):
        types = tuple(
            structure.type_of_cell(i, c) for c in range(structure.num_cells(i))
        )
        value, fvec = _pump_piece(structure.partitions[i], types, values)
        total += value
        payoffs.append(fvec)
    if not total < ZERO:
        return None
    witness = MoneyPumpWitness(
        distribution=dist,
        semi_trade=SemiTrade(tuple(payoffs)),
        deficit=total,
        kind=pump_kind(structure, dist),
    )
    witness.verify(structure)
    return witness


def find_single_money_pump(
    structure: InformationStructure, dist: Distribution
) -> MoneyPumpWitness | None:
    """Single-player pump: a payoff with non-negative conditional expectation
    at every state whose p-expectation is negative. Exists iff p fails to
    disintegrate."""
    if structure.num_players != 1:
        raise PlayerCountError(
            f"single-player pump on a {structure.num_players}-player structure"
        )
    return _pump_search(structure, dist)


def find_multiplayer_money_pump(
    structure: InformationStructure, dist: Distribution
) -> MoneyPumpWitness | None:
    """Minimize the p-expectation of the summed payoffs over all semi-trades;
    a witness exists iff the minimum is negative, iff p is not a common
    prior."""
    if len(dist) != structure.num_states:
        raise DimensionError("distribution dimension does not match structure")
    return _pump_search(structure, dist)


def classify_distribution(
    structure: InformationStructure, dist: Distribution
) -> DistributionVerdict:
    """The theorem-level case split. Always exactly one of common prior /
    money pump; when p is maximal the universal pair splits the same way,
    and when strongly maximal the strong pair does. A missing pump for a
    non-prior is a bug and raises."""
    cls = classify_prior(structure, dist)
    prior_witness = None
    pump_witness = None
    if cls.common:
        weights = tuple(
            hull_weights(structure, i, dist) for i in range(structure.num_players)
        )
        prior_witness = PriorWitness(dist, weights)
        prior_witness.verify(structure)
        base = "common_prior"
    else:
        pump_witness = find_multiplayer_money_pump(structure, dist)
        if pump_witness is None:
            raise VerificationError(
                "distribution is neither a common prior nor a money pump"
            )
        base = "money_pump"
    universal = None
    if cls.maximal:
        universal = "universal_common_prior" if cls.common else "universal_money_pump"
    strong = None
    if cls.strongly_maximal:
        strong = "strong_common_prior" if cls.common else "strong_money_pump"
    return DistributionVerdict(
        classification=cls,
        prior_witness=prior_witness,
        pump_witness=pump_witness,
        base=base,
        universal=universal,
        strong=strong,
    )


def build_prior_report(structure: InformationStructure) -> PriorReport:
    """All three prior notions with refuting trades for the absent ones. The
    dualities guarantee a refutation exists whenever a notion fails; their
    absence would be a bug."""
    common = find_common_prior(structure)
    universal = find_universal_common_prior(structure)
    strong = find_strong_common_prior(structure)
    if strong is not None and universal is None:
        raise VerificationError("strong prior present but universal absent")
    if universal is not None and common is None:
        raise VerificationError("universal prior present but common absent")
    refut_c = find_agreeable_trade(structure) if common is None else None
    refut_u = find_weakly_agreeable_trade(structure) if universal is None else None
    refut_s = find_acceptable_trade(structure) if strong is None else None
    if common is None and refut_c is None:
        raise VerificationError("no common prior and no agreeable trade")
    if universal is None and refut_u is None:
        raise VerificationError("no universal prior and no weakly agreeable trade")
    if strong is None and refut_s is None:
        raise VerificationError("no strong prior and no acceptable trade")
    return PriorReport(
        common_prior=common,
        universal_common_prior=universal,
        strong_common_prior=strong,
        common_refutation=refut_c,
        universal_refutation=refut_u,
        strong_refutation=refut_s,
    )


def single_player_pump_duality(
    structure: InformationStructure, dist: Distribution
) -> bool:
    """Exactly one of {disintegrable, pump exists}; used as a harness check."""
    disintegrable, _ = is_disintegrable(structure, dist)
    pump = find_single_money_pump(structure, dist)
    return disintegrable != (pump is not None)
