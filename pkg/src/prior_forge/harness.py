"""Random instance generation and the executable-theorem battery.

The six dualities this package implements are exactly-one statements: a
notion holds or its dual witness exists, never both, never neither. That
makes them ideal property tests, because both sides are computed by
independent code paths (prior LPs vs trade LPs vs closed-form membership)
and any disagreement is a bug somewhere. cross_check runs all six on one
structure, together with the single-player theory on every player's
marginal view and the commonly-certain reformulations of the trade grades.

Generation is fully deterministic in the seed. Partitions are drawn
uniformly over all set partitions of the state set; type values are uniform
compositions with bounded denominators; supports are thinned at a
configurable rate so sparse structures (rich component geometry) appear
often.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, replace
from functools import lru_cache

from ._rational import ONE, ZERO, rational
from .certainty import (
    closure,
    is_commonly_certain,
    is_component,
    is_maximal,
    is_strongly_maximal,
    minimal_components,
)
from .errors import PriorForgeError
from .lp import enumerate_basic_solutions, solve
from .model import Distribution, InformationStructure, make_structure, single_player_view
from .priors import (
    classify_prior,
    common_prior_polytope,
    common_prior_program,
    disintegrable_by_definition,
    find_common_prior,
    find_strong_common_prior,
    find_universal_common_prior,
    hull_weights,
    is_conglomerable,
    is_disintegrable,
)
from .trades import (
    classify_trade,
    find_acceptable_trade,
    find_agreeable_trade,
    find_multiplayer_money_pump,
    find_single_money_pump,
    find_weakly_agreeable_trade,
)

REJECTION_CAP = 1000


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for the random instance generator. All sampled probabilities
    have denominators bounded by denominator_bound (stretched to the support
    size when a support is larger than the bound, which cannot happen when
    the bound is at least max_states)."""

    seed: int = 0
    max_states: int = 6
    max_players: int = 3
    denominator_bound: int = 6
    zero_mass_rate: object = rational("1/4")

    def __post_init__(self) -> None:
        if self.max_states < 1 or self.max_players < 1 or self.denominator_bound < 1:
            raise PriorForgeError("generator sizes must be positive")
        zr = rational(self.zero_mass_rate)
        if zr < ZERO or zr > ONE:
            raise PriorForgeError("zero_mass_rate must lie in [0,1]")
        object.__setattr__(self, "zero_mass_rate", zr)


@lru_cache(maxsize=None)
def _bell(n: int) -> int:
    if n == 0:
        return 1
    return sum(math.comb(n - 1, k) * _bell(k) for k in range(n))


def _sample_set_partition(items: list[int], rng: random.Random) -> list[list[int]]:
    """Uniform over all set partitions: pick the size of the block holding
    the first item with the exact Bell-recurrence probabilities, then its
    members, then recurse."""
    if not items:
        return []
    n = len(items)
    total = _bell(n)
    pick = rng.randrange(total)
    acc = 0
    for size in range(1, n + 1):
        acc += math.comb(n - 1, size - 1) * _bell(n - size)
        if pick < acc:
            break
    rest = items[1:]
    mates = sorted(rng.sample(rest, size - 1))
    block = [items[0], *mates]
    remaining = [x for x in rest if x not in set(mates)]
    return [block, *_sample_set_partition(remaining, rng)]


def _drop(rng: random.Random, rate) -> bool:
    if rate == ZERO:
        return False
    return rng.randrange(rate.denominator) < rate.numerator


def _positive_composition(total: int, parts: int, rng: random.Random) -> list[int]:
    """Uniform composition of total into the given number of positive parts."""
    if parts == 1:
        return [total]
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    edges = [0, *cuts, total]
    return [edges[k + 1] - edges[k] for k in range(parts)]


def _random_type(cell: tuple[int, ...], size: int, cfg: GeneratorConfig, rng: random.Random) -> list:
    support = [s for s in cell if not _drop(rng, cfg.zero_mass_rate)]
    if not support:
        support = [cell[rng.randrange(len(cell))]]
    k = len(support)
    d = rng.randint(k, max(cfg.denominator_bound, k))
    parts = _positive_composition(d, k, rng)
    dist = [ZERO] * size
    dq = rational(d)
    for s, part in zip(support, parts):
        dist[s] = rational(part) / dq
    return dist


def random_structure(cfg: GeneratorConfig) -> InformationStructure:
    """Deterministic in cfg.seed; always passes structure validation."""
    rng = random.Random(cfg.seed)
    m = rng.randint(1, cfg.max_states)
    n = rng.randint(1, cfg.max_players)
    states = [f"w{k + 1}" for k in range(m)]
    players = [f"P{k + 1}" for k in range(n)]
    partitions = []
    cell_types = []
    for _ in range(n):
        blocks = _sample_set_partition(list(range(m)), rng)
        blocks = sorted([sorted(b) for b in blocks])
        partitions.append(blocks)
        cell_types.append(
            [_random_type(tuple(b), m, cfg, rng) for b in blocks]
        )
    return make_structure(states, players, partitions, cell_types)


def random_distribution(
    structure: InformationStructure,
    cfg: GeneratorConfig,
    constraint: str = "any",
    rng: random.Random | None = None,
) -> Distribution:
    """Rejection-samples a distribution satisfying the constraint; after the
    attempt cap falls back to a perturbed uniform, which always qualifies."""
    if constraint not in ("any", "maximal", "strongly_maximal"):
        raise PriorForgeError(f"unknown constraint {constraint!r}")
    if rng is None:
        rng = random.Random(cfg.seed)
    m = structure.num_states
    for _ in range(REJECTION_CAP):
        support = [s for s in range(m) if not _drop(rng, cfg.zero_mass_rate)]
        if not support:
            support = [rng.randrange(m)]
        k = len(support)
        d = rng.randint(k, max(cfg.denominator_bound, k))
        parts = _positive_composition(d, k, rng)
        probs = [ZERO] * m
        dq = rational(d)
        for s, part in zip(support, parts):
            probs[s] = rational(part) / dq
        dist = Distribution(tuple(probs))
        if constraint == "any":
            return dist
        if constraint == "maximal" and is_maximal(structure, dist):
            return dist
        if constraint == "strongly_maximal" and is_strongly_maximal(structure, dist):
            return dist
    weights = [1 + rng.randrange(cfg.denominator_bound + 1) for _ in range(m)]
    total = rational(sum(weights))
    return Distribution(tuple(rational(w) / total for w in weights))


# -- the battery -----------------------------------------------------------


@dataclass(frozen=True)
class CheckFailure:
    name: str
    details: str


@dataclass(frozen=True)
class CrossCheckReport:
    structure: InformationStructure
    checks_run: int
    failures: tuple[CheckFailure, ...]
    minimized: InformationStructure | None = None

    @property
    def passed(self) -> bool:
        return not self.failures


def structure_digest(structure: InformationStructure) -> int:
    """Content hash, stable across processes; seeds per-structure sampling."""
    parts = [",".join(structure.states), ",".join(structure.players)]
    for i in range(structure.num_players):
        for c in range(structure.num_cells(i)):
            parts.append("|".join(map(str, structure.cell_states(i, c))))
            parts.append("|".join(str(q) for q in structure.type_of_cell(i, c)))
    blob = ";".join(parts).encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big")


class _Recorder:
    def __init__(self) -> None:
        self.count = 0
        self.failures: list[CheckFailure] = []

    def check(self, name: str, ok: bool, details: str = "") -> None:
        self.count += 1
        if not ok:
            self.failures.append(CheckFailure(name, details))

    def guard(self, name: str):
        """Context manager converting internal verification crashes into
        recorded failures rather than aborting the battery."""
        rec = self

        class _Guard:
            def __enter__(self) -> None:
                return None

            def __exit__(self, exc_type, exc, tb) -> bool:
                rec.count += 1
                if exc is not None and isinstance(exc, PriorForgeError):
                    rec.failures.append(CheckFailure(name, f"raised {exc!r}"))
                    return True
                return False

        return _Guard()


def _event_set(table, relation) -> tuple[int, ...]:
    players = range(len(table))
    states = range(len(table[0]))
    return tuple(w for w in states if all(relation(table[i][w]) for i in players))


def _check_trade_forms(rec: _Recorder, structure, payoffs, label: str) -> None:
    """The pointwise trade grades must match their commonly-certain forms."""
    cls = classify_trade(structure, payoffs)
    table = cls.expectations
    positive = _event_set(table, lambda e: e > ZERO)
    nonneg = _event_set(table, lambda e: e >= ZERO)
    m = structure.num_states
    if positive:
        cc_everywhere = all(
            is_commonly_certain(structure, positive, w) for w in range(m)
        )
        cc_somewhere = any(
            is_commonly_certain(structure, positive, w) for w in range(m)
        )
    else:
        cc_everywhere = False
        cc_somewhere = False
    rec.check(
        f"{label}: agreeable == commonly-certain-everywhere",
        cls.agreeable == cc_everywhere,
        f"payoffs {payoffs}",
    )
    rec.check(
        f"{label}: weakly == commonly-certain-somewhere",
        cls.weakly_agreeable == cc_somewhere,
        f"payoffs {payoffs}",
    )
    semi_cc = all(
        is_commonly_certain(structure, nonneg, w) for w in range(m)
    ) if nonneg else False
    rec.check(
        f"{label}: semi-trade == commonly-certain non-negative",
        cls.is_semi_trade == semi_cc,
        f"payoffs {payoffs}",
    )


def cross_check(
    structure: InformationStructure,
    sample_count: int = 2,
    cfg: GeneratorConfig | None = None,
    minimize: bool = True,
) -> CrossCheckReport:
    """All six exactly-one dualities, the presence chains, the single-player
    theory on each player's view, and the commonly-certain reformulations,
    on one structure. Deterministic: sampling is seeded by a content digest."""
    if cfg is None:
        cfg = GeneratorConfig()
    rec = _Recorder()
    rng = random.Random(structure_digest(structure))

    common = universal = strong = None
    agree = weak = accept = None
    with rec.guard("prior finders"):
        common = find_common_prior(structure)
        universal = find_universal_common_prior(structure)
        strong = find_strong_common_prior(structure)
    with rec.guard("trade finders"):
        agree = find_agreeable_trade(structure)
        weak = find_weakly_agreeable_trade(structure)
        accept = find_acceptable_trade(structure)

    rec.check(
        "duality: common prior xor agreeable trade",
        (common is None) != (agree is None),
    )
    rec.check(
        "duality: universal prior xor weakly agreeable trade",
        (universal is None) != (weak is None),
    )
    rec.check(
        "duality: strong prior xor acceptable trade",
        (strong is None) != (accept is None),
    )
    rec.check(
        "chain: strong => universal => common",
        (strong is None or universal is not None)
        and (universal is None or common is not None),
    )
    rec.check(
        "chain: agreeable => weakly => acceptable (synthesized)",
        (agree is None or weak is not None)
        and (weak is None or accept is not None),
    )
    for witness, name in ((common, "common"), (universal, "universal"), (strong, "strong")):
        if witness is not None:
            with rec.guard(f"{name} prior witness re-verifies"):
                witness.verify(structure)
    if universal is not None:
        rec.check("universal witness is maximal", is_maximal(structure, universal.prior))
    if strong is not None:
        rec.check(
            "strong witness is strongly maximal",
            is_strongly_maximal(structure, strong.prior),
        )
    for trade, label in ((agree, "agreeable"), (weak, "weakly"), (accept, "acceptable")):
        if trade is not None:
            _check_trade_forms(rec, structure, trade.payoffs, f"synthesized {label}")

    # Components sanity: minimal components are components; closures are
    # components containing their state.
    comps = minimal_components(structure)
    rec.check("minimal components exist", len(comps) >= 1)
    for comp in comps:
        rec.check("minimal component is forward-closed", is_component(structure, comp))
    for w in range(structure.num_states):
        cl = closure(structure, w)
        rec.check(
            "closure is a component containing its state",
            w in cl and is_component(structure, cl),
        )

    # Distribution-level dualities on sampled distributions.
    samples = [
        (random_distribution(structure, cfg, "any", rng), "any"),
        (random_distribution(structure, cfg, "maximal", rng), "maximal"),
        (random_distribution(structure, cfg, "strongly_maximal", rng), "strongly_maximal"),
    ]
    for _ in range(max(0, sample_count - 1)):
        samples.append((random_distribution(structure, cfg, "any", rng), "any"))
    sample_pumps = []
    for dist, kind in samples:
        cls = classify_prior(structure, dist)
        pump = None
        with rec.guard("pump finder"):
            pump = find_multiplayer_money_pump(structure, dist)
        sample_pumps.append(pump)
        rec.check(
            "duality: common prior xor money pump",
            cls.common != (pump is not None),
            f"p={tuple(dist)} kind={kind}",
        )
        if pump is not None:
            with rec.guard("pump witness re-verifies"):
                pump.verify(structure)
        if kind == "maximal":
            rec.check("sampled maximal is maximal", cls.maximal)
            rec.check(
                "duality: universal prior xor universal pump (maximal p)",
                cls.universal != (pump is not None and cls.maximal),
                f"p={tuple(dist)}",
            )
        if kind == "strongly_maximal":
            rec.check("sampled strongly maximal is strongly maximal", cls.strongly_maximal)
            rec.check(
                "duality: strong prior xor strong pump (strongly maximal p)",
                cls.strong != (pump is not None and cls.strongly_maximal),
                f"p={tuple(dist)}",
            )
        # When no common prior exists anywhere, every distribution pumps.
        if common is None:
            rec.check(
                "no common prior => every distribution pumps",
                pump is not None,
                f"p={tuple(dist)}",
            )

    # Single-player theory on each player's marginal view.
    for i in range(structure.num_players):
        view = single_player_view(structure, i)
        for k, (dist, _) in enumerate(samples):
            disintegrable, weights = is_disintegrable(view, dist)
            rec.check(
                "closed-form disintegrability matches definitional oracle",
                disintegrable == disintegrable_by_definition(view, dist),
                f"player {i} p={tuple(dist)}",
            )
            rec.check(
                "view membership matches full-structure hull membership",
                disintegrable == (hull_weights(structure, i, dist) is not None),
                f"player {i}",
            )
            if disintegrable:
                conglomerable, _ = is_conglomerable(view, dist)
                rec.check(
                    "disintegrable => conglomerable",
                    conglomerable,
                    f"player {i} p={tuple(dist)}",
                )
            # For one-player structures the view LP equals the multiplayer
            # pump LP already solved above; reuse that result.
            if structure.num_players == 1:
                pump = sample_pumps[k]
            else:
                pump = None
                with rec.guard("single pump finder"):
                    pump = find_single_money_pump(view, dist)
            rec.check(
                "duality: disintegrable xor single-player pump",
                disintegrable != (pump is not None),
                f"player {i} p={tuple(dist)}",
            )

    minimized = None
    if rec.failures and minimize:
        minimized = _minimize_failure(structure, sample_count, cfg)
    return CrossCheckReport(structure, rec.count, tuple(rec.failures), minimized)


def _still_fails(structure: InformationStructure, sample_count: int, cfg: GeneratorConfig) -> bool:
    try:
        report = cross_check(structure, sample_count, cfg, minimize=False)
    except PriorForgeError:
        return True
    return not report.passed


def _delete_player(structure: InformationStructure, player: int) -> InformationStructure | None:
    if structure.num_players <= 1:
        return None
    keep = [i for i in range(structure.num_players) if i != player]
    return make_structure(
        structure.states,
        [structure.players[i] for i in keep],
        [[list(structure.cell_states(i, c)) for c in range(structure.num_cells(i))] for i in keep],
        [[structure.type_of_cell(i, c) for c in range(structure.num_cells(i))] for i in keep],
    )


def _delete_state(structure: InformationStructure, state: int) -> InformationStructure | None:
    if structure.num_states <= 1:
        return None
    keep = [w for w in range(structure.num_states) if w != state]
    index = {w: k for k, w in enumerate(keep)}
    partitions = []
    cell_types = []
    for i in range(structure.num_players):
        blocks = []
        types = []
        for c in range(structure.num_cells(i)):
            cell = [w for w in structure.cell_states(i, c) if w != state]
            if not cell:
                continue
            t = structure.type_of_cell(i, c)
            mass = sum((t[w] for w in cell), ZERO)
            if mass == ZERO:
                return None  # renormalization impossible; skip this deletion
            blocks.append([index[w] for w in cell])
            types.append([t[w] / mass for w in keep])
        partitions.append(blocks)
        cell_types.append(types)
    return make_structure(
        [structure.states[w] for w in keep],
        structure.players,
        partitions,
        cell_types,
    )


def _minimize_failure(
    structure: InformationStructure, sample_count: int, cfg: GeneratorConfig
) -> InformationStructure:
    """Greedy shrinking: drop players, then states (renormalizing types),
    keeping every deletion that preserves failure."""
    current = structure
    changed = True
    while changed:
        changed = False
        for i in range(current.num_players):
            candidate = _delete_player(current, i)
            if candidate is not None and _still_fails(candidate, sample_count, cfg):
                current = candidate
                changed = True
                break
        if changed:
            continue
        for w in range(current.num_states):
            try:
                candidate = _delete_state(current, w)
            except PriorForgeError:
                candidate = None
            if candidate is not None and _still_fails(candidate, sample_count, cfg):
                current = candidate
                changed = True
                break
    return current


@dataclass(frozen=True)
class BatteryReport:
    structures_checked: int
    checks_run: int
    failures: tuple[tuple[int, CrossCheckReport], ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def run_battery(
    seeds, cfg: GeneratorConfig | None = None, sample_count: int = 2
) -> BatteryReport:
    """cross_check over a seed range; deterministic and mergeable."""
    if cfg is None:
        cfg = GeneratorConfig()
    checked = 0
    checks = 0
    failures = []
    for seed in seeds:
        structure = random_structure(replace(cfg, seed=seed))
        report = cross_check(structure, sample_count, cfg)
        checked += 1
        checks += report.checks_run
        if not report.passed:
            failures.append((seed, report))
    return BatteryReport(checked, checks, tuple(failures))


def oracle_battery(seeds, cfg: GeneratorConfig | None = None) -> BatteryReport:
    """Simplex vs exhaustive basis enumeration on the common-prior polytope,
    feasibility and strictness-margin objective, exactly."""
    if cfg is None:
        cfg = GeneratorConfig(max_states=4, max_players=2, denominator_bound=5)
    checked = 0
    checks = 0
    failures = []
    for seed in seeds:
        structure = random_structure(replace(cfg, seed=seed))
        rec = _Recorder()
        feas = common_prior_polytope(structure)
        out = solve(feas)
        vertices = enumerate_basic_solutions(feas)
        rec.check(
            "oracle: polytope feasibility agrees with vertex enumeration",
            (out.status == "optimal") == bool(vertices),
            f"status={out.status} vertices={len(vertices)}",
        )
        eps_lp = common_prior_polytope(structure, with_epsilon=True)
        out_eps = solve(eps_lp)
        vertices_eps = enumerate_basic_solutions(eps_lp)
        rec.check(
            "oracle: margin program feasibility agrees",
            (out_eps.status == "optimal") == bool(vertices_eps),
        )
        if out_eps.status == "optimal":
            best = max(v[-1] for v in vertices_eps)
            rec.check(
                "oracle: margin optimum equals best vertex",
                out_eps.objective_value == best,
                f"lp={out_eps.objective_value} vertices={best}",
            )
            joint = solve(common_prior_program(structure))
            rec.check(
                "oracle: joint formulation matches projected margin",
                joint.status == "optimal" and joint.objective_value == out_eps.objective_value,
            )
        else:
            joint = solve(common_prior_program(structure))
            rec.check(
                "oracle: joint formulation agrees on infeasibility",
                joint.status == "infeasible",
            )
        checked += 1
        checks += rec.count
        if rec.failures:
            failures.append((seed, CrossCheckReport(structure, rec.count, tuple(rec.failures))))
    return BatteryReport(checked, checks, tuple(failures))
