"""Discount-style given-clause saturation.

Passive clauses wait in two queues (age FIFO and weight priority) popped by a
configurable ratio.  Activating a clause runs literal selection, indexes the
clause, generates all inferences against the active set and pushes surviving
children back to passive.  Passive clauses are never used for simplification.
"""

from __future__ import annotations

import enum
import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import calculus
from .calculus import FACTORING_RULES, CalculusConfig, Inference, generate_all
from .index import TermIndexSet
from .kbo import KboParams
from .selection import (
    KNOWN_STRATEGIES,
    SelectionContext,
    select,
    select_forced,
)
from .terms import Clause, ClauseFactory, Literal, is_tautology, match_literal, shift_literal


class Status(enum.Enum):
    UNSATISFIABLE = "Unsatisfiable"
    SATISFIABLE = "Satisfiable"
    UNKNOWN = "Unknown"
    RESOURCE_OUT = "ResourceOut"


@dataclass
class ProverConfig:
    selection: int = 10
    time_limit: float | None = 10.0
    max_activations: int | None = None
    age_weight_ratio: tuple[int, int] = (1, 5)
    flip: bool = False
    post_unification_check: bool = False
    kbo: KboParams | None = None
    forced_selection: dict[str, tuple[int, ...]] | None = None
    track_derived: bool = False
    check_estimates: bool = False

    def validate(self):
        if self.selection not in KNOWN_STRATEGIES:
            raise ValueError(f"unknown selection strategy {self.selection}")
        a, w = self.age_weight_ratio
        if a < 0 or w < 0 or (a == 0 and w == 0):
            raise ValueError(f"bad age-weight ratio {self.age_weight_ratio}")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limit must be positive")
        if self.max_activations is not None and self.max_activations < 0:
            raise ValueError("activation limit must be non-negative")


@dataclass
class RunStatistics:
    activations: int = 0
    children_generated: int = 0
    selection_events: int = 0
    incomplete_selections: int = 0
    estimate_violations: int = 0
    selection_time: float = 0.0
    total_time: float = 0.0

    @property
    def avg_children(self) -> Fraction:
        if not self.activations:
            return Fraction(0)
        return Fraction(self.children_generated, self.activations)

    @property
    def pct_incomp(self) -> Fraction:
        if not self.selection_events:
            return Fraction(0)
        return Fraction(self.incomplete_selections, self.selection_events)

    @property
    def selection_time_fraction(self) -> float:
        if self.total_time <= 0:
            return 0.0
        return self.selection_time / self.total_time


@dataclass
class SaturationResult:
    status: Status
    proof: list[tuple[Clause, Inference | None]] | None = None
    derived: list[Clause] = field(default_factory=list)


class PassiveSet:
    """Age/weight twin queues over one clause set, popped by a fixed ratio."""

    def __init__(self, ratio: tuple[int, int] = (1, 5)):
        self._by_age: list[tuple[int, int]] = []
        self._by_weight: list[tuple[int, int]] = []
        self._clauses: dict[int, Clause] = {}
        self._ratio = ratio
        self._tick = 0

    def __len__(self):
        return len(self._clauses)

    def push(self, clause: Clause) -> None:
        self._clauses[clause.id] = clause
        heapq.heappush(self._by_age, (clause.age, clause.id))
        heapq.heappush(self._by_weight, (clause.weight, clause.id))

    def pop(self) -> Clause:
        age_picks, weight_picks = self._ratio
        cycle = age_picks + weight_picks
        use_age = age_picks > 0 and (self._tick % cycle) < age_picks
        self._tick += 1
        heap = self._by_age if use_age else self._by_weight
        while True:
            _, cid = heapq.heappop(heap)
            clause = self._clauses.pop(cid, None)
            if clause is not None:
                return clause


def subsumes(general: Clause, specific: Clause) -> bool:
    """Multiset embedding: some substitution maps ``general``'s literals onto
    distinct literals of ``specific``.  Equality literals match either way
    around."""
    if len(general) > len(specific) or general.weight > specific.weight:
        return False
    pattern = [shift_literal(lit, specific.num_vars) for lit in general.literals]

    def extend(i: int, used: int, bindings) -> bool:
        if i == len(pattern):
            return True
        lit = pattern[i]
        for j, target in enumerate(specific.literals):
            if used & (1 << j):
                continue
            candidates = [target]
            if target.is_eq:
                candidates.append(Literal(target.positive, target.sym,
                                          (target.args[1], target.args[0])))
            for cand in candidates:
                new = match_literal(lit, cand, bindings)
                if new is not None and extend(i + 1, used | (1 << j), new):
                    return True
        return False

    return extend(0, 0, {})


def retention_test(clause: Clause, active: list[Clause], kept_keys: set) -> tuple[bool, str]:
    """Keep a freshly generated clause unless it is a tautology, a variant of
    a kept clause, or forward-subsumed by an active clause."""
    if is_tautology(clause):
        return False, "tautology"
    if clause.variant_key() in kept_keys:
        return False, "duplicate"
    for other in active:
        if subsumes(other, clause):
            return False, "subsumed"
    return True, "kept"


def _extract_proof(empty: Clause, registry: dict[int, Clause]):
    """Input clauses and inferences reaching the empty clause, in id order."""
    seen: set[int] = set()
    stack = [empty]
    steps: list[Clause] = []
    while stack:
        clause = stack.pop()
        if clause.id in seen:
            continue
        seen.add(clause.id)
        steps.append(clause)
        if clause.origin is not None:
            stack.extend(registry[pid] for pid in clause.origin.premises)
    steps.sort(key=lambda c: c.id)
    return [(c, c.origin) for c in steps]


def saturate(clauses, config: ProverConfig) -> tuple[SaturationResult, RunStatistics]:
    """Run the given-clause loop on already-built input clauses."""
    config.validate()
    started = time.perf_counter()
    stats = RunStatistics()
    params = config.kbo or KboParams.for_clauses(clauses)
    factory = ClauseFactory(next_id=max((c.id for c in clauses), default=-1) + 1)
    calc = CalculusConfig(params=params, flip=config.flip,
                          post_unification_check=config.post_unification_check,
                          factory=factory)
    index = TermIndexSet(params)
    ctx = SelectionContext(params=params, index=index, flip=config.flip)
    passive = PassiveSet(config.age_weight_ratio)
    active: list[Clause] = []
    kept_keys: set = set()
    registry: dict[int, Clause] = {}
    result = SaturationResult(Status.SATISFIABLE)
    incomplete_run = False

    def finish(status: Status, proof=None) -> tuple[SaturationResult, RunStatistics]:
        result.status = status
        result.proof = proof
        stats.total_time = time.perf_counter() - started
        return result, stats

    for clause in clauses:
        registry[clause.id] = clause
        if clause.empty:
            return finish(Status.UNSATISFIABLE, _extract_proof(clause, registry))
        keep, _ = retention_test(clause, active, kept_keys)
        if keep:
            kept_keys.add(clause.variant_key())
            passive.push(clause)

    while len(passive):
        if config.time_limit is not None and time.perf_counter() - started > config.time_limit:
            return finish(Status.RESOURCE_OUT)
        if config.max_activations is not None and stats.activations >= config.max_activations:
            return finish(Status.RESOURCE_OUT)
        given = passive.pop()

        sel_started = time.perf_counter()
        ctx.reset_cache()
        if config.forced_selection is not None:
            outcome = select_forced(given, config.forced_selection, ctx,
                                    fallback=config.selection)
        else:
            outcome = select(config.selection, given, ctx)
        stats.selection_time += time.perf_counter() - sel_started
        stats.selection_events += 1
        if outcome.violated_completeness:
            stats.incomplete_selections += 1
            incomplete_run = True
        given.selected = tuple(outcome.positions)

        index.insert_active(given)
        active.append(given)
        stats.activations += 1

        inferences = generate_all(given, index, calc)
        stats.children_generated += len(inferences)
        if config.check_estimates and outcome.estimate is not None:
            non_factoring = sum(1 for inf in inferences if inf.rule not in FACTORING_RULES)
            if non_factoring > outcome.estimate:
                stats.estimate_violations += 1

        for inf in inferences:
            child = inf.conclusion
            registry[child.id] = child
            if config.track_derived:
                result.derived.append(child)
            if child.empty:
                return finish(Status.UNSATISFIABLE, _extract_proof(child, registry))
            keep, _ = retention_test(child, active, kept_keys)
            if keep:
                kept_keys.add(child.variant_key())
                passive.push(child)

    return finish(Status.UNKNOWN if incomplete_run else Status.SATISFIABLE)


def replay_proof(proof) -> bool:
    """Re-run every inference of a proof and check each recorded conclusion
    is reproduced; the final step must be the empty clause."""
    if not proof:
        return False
    by_id = {clause.id: clause for clause, _ in proof}
    cfg = CalculusConfig(params=KboParams.for_clauses([c for c, _ in proof]),
                         factory=ClauseFactory(next_id=10_000_000))
    for clause, inf in proof:
        if inf is None:
            continue
        premises = [by_id.get(pid) for pid in inf.premises]
        if any(p is None for p in premises):
            return False
        redone = _reapply(inf, premises, cfg)
        if redone is None or redone.variant_key() != clause.variant_key():
            return False
    return proof[-1][0].empty


def _reapply(inf: Inference, premises, cfg):
    d = inf.details
    if inf.rule == calculus.RESOLUTION:
        c1, c2 = premises
        p1, p2 = d["pos"]
        other = calculus._shifted(c2, c1.num_vars)
        out = calculus.resolution(c1, p1, other, p2, cfg)
        return out.conclusion if out else None
    if inf.rule == calculus.FACTORING:
        (c,) = premises
        p, q = d["pos"]
        for out in calculus.factoring(c, p, cfg):
            if out.details["pos"] == (p, q):
                return out.conclusion
        return None
    if inf.rule == calculus.SUPERPOSITION:
        from_c, into_c = premises
        shifted_into = calculus._shifted(into_c, from_c.num_vars)
        out = calculus.superposition(from_c, d["eq_pos"], d["side"],
                                     shifted_into, d["target"], d["path"], cfg)
        return out.conclusion if out else None
    if inf.rule == calculus.EQ_RESOLUTION:
        (c,) = premises
        out = calculus.equality_resolution(c, d["pos"], cfg)
        return out.conclusion if out else None
    if inf.rule == calculus.EQ_FACTORING:
        (c,) = premises
        p, p2 = d["pos"]
        for out in calculus.equality_factoring(c, p, p2, cfg):
            if out.details["sides"] == d["sides"]:
                return out.conclusion
        return None
    return None
