"""Literal selection strategies.

A strategy assigns every non-empty clause a non-empty multiset of literal
positions; generating inferences are then only performed on selected
literals.  Strategies come in three families:

* quality selections: pick the greatest literal under a lexicographic
  composition of quality criteria, either as-is (incomplete) or repaired to
  keep refutational completeness;
* lookahead selections: pick the literal whose index-based estimate of
  immediate children is minimal (or maximal);
* fixed rules adapted from other saturation provers (strategy numbers 1,
  20-22, 30-35).

A selection is *complete* when it selects a negative literal or all maximal
ones; outcomes record whether that guard was violated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .index import MAXIMIZE, MINIMIZE, TermIndexSet, children_estimate
from .kbo import GREATER, KboParams, compare_literals, maximal_literals
from .terms import Clause, Literal, eff_positive

WEIGHT = "weight"
FEWER_VARS = "fewer_vars"
FEWER_TOP_VARS = "fewer_top_vars"
FEWER_DISTINCT_VARS = "fewer_distinct_vars"
NO_POS_EQ = "no_pos_eq"
PREFER_NEG_EQ = "prefer_neg_eq"
PREFER_NEG = "prefer_neg"
LOOK_MIN = "look_min"
LOOK_MAX = "look_max"

LOOKAHEAD_CRITERIA = frozenset({LOOK_MIN, LOOK_MAX})


@dataclass(frozen=True)
class QualityOrder:
    """Ordered quality criteria; ties after the last fall to the tie-break."""

    criteria: tuple[str, ...]

    def needs_context(self) -> bool:
        return any(c in LOOKAHEAD_CRITERIA for c in self.criteria)


ORDER_WEIGHT = QualityOrder((WEIGHT,))
ORDER_VAR_SHAPE = QualityOrder((NO_POS_EQ, FEWER_TOP_VARS, FEWER_DISTINCT_VARS))
ORDER_VAR_WEIGHT = QualityOrder((NO_POS_EQ, FEWER_TOP_VARS, FEWER_VARS, WEIGHT))
ORDER_NEG_EQ_WEIGHT = QualityOrder((PREFER_NEG_EQ, WEIGHT, PREFER_NEG))

#: Strategy numbers accepted by :func:`select`.
COMPLETE_STRATEGIES = (0, 1, 2, 3, 4, 10, 11, 12, 20, 21, 22, 30, 31, 32, 33, 34, 35)
INCOMPLETE_STRATEGIES = (1002, 1003, 1004, 1010, 1011, 1012)
KNOWN_STRATEGIES = frozenset(COMPLETE_STRATEGIES) | frozenset(INCOMPLETE_STRATEGIES)

_QUALITY_ORDERS = {
    2: ORDER_WEIGHT,
    3: ORDER_VAR_SHAPE,
    4: ORDER_VAR_WEIGHT,
    10: ORDER_NEG_EQ_WEIGHT,
}


def is_incomplete_strategy(number: int) -> bool:
    return number >= 1000


@dataclass
class SelectionContext:
    """Everything a strategy may consult besides the clause itself."""

    params: KboParams
    index: TermIndexSet | None = None
    flip: bool = False
    _estimates: dict = field(default_factory=dict, repr=False)

    def estimate(self, lit: Literal) -> int:
        if lit not in self._estimates:
            if self.index is None:
                raise ValueError("lookahead selection needs an active-set index")
            self._estimates[lit] = children_estimate(self.index, lit)
        return self._estimates[lit]

    def reset_cache(self) -> None:
        """Drop cached estimates; call whenever the active set changes."""
        self._estimates.clear()


@dataclass
class SelectionOutcome:
    positions: tuple[int, ...]
    violated_completeness: bool = False
    estimate: int | None = None  # winner's child estimate, singleton lookahead only


def _score(criterion: str, lit: Literal, ctx: SelectionContext | None, flip: bool) -> int:
    if criterion == WEIGHT:
        return lit.weight
    if criterion == FEWER_VARS:
        return -lit.var_occurrences()
    if criterion == FEWER_TOP_VARS:
        return -lit.top_level_vars()
    if criterion == FEWER_DISTINCT_VARS:
        return -len(lit.distinct_vars())
    if criterion == NO_POS_EQ:
        return 0 if (lit.is_eq and lit.positive) else 1
    if criterion == PREFER_NEG_EQ:
        return 1 if (lit.is_eq and not lit.positive) else 0
    if criterion == PREFER_NEG:
        return 0 if eff_positive(lit, flip) else 1
    if criterion in LOOKAHEAD_CRITERIA:
        if ctx is None:
            raise ValueError("lookahead criteria need a selection context")
        est = ctx.estimate(lit)
        return -est if criterion == LOOK_MIN else est
    raise ValueError(f"unknown quality criterion {criterion!r}")


def compare_quality(l1: Literal, l2: Literal, order: QualityOrder,
                    ctx: SelectionContext | None = None, flip: bool = False) -> int:
    """-1, 0 or +1: which literal the quality order prefers (before tie-break)."""
    for criterion in order.criteria:
        s1 = _score(criterion, l1, ctx, flip)
        s2 = _score(criterion, l2, ctx, flip)
        if s1 != s2:
            return 1 if s1 > s2 else -1
    return 0


def tie_break_key(clause: Clause, pos: int, flip: bool):
    """Deterministic, content-based total order on positions (smaller wins)."""
    lit = clause.literals[pos]
    return (0 if not eff_positive(lit, flip) else 1, lit.sym.id, -lit.weight, lit.skey, pos)


def _quality_max(clause: Clause, positions, order: QualityOrder,
                 ctx: SelectionContext | None, flip: bool) -> int:
    """The position whose literal the quality order prefers, ties broken
    by the structural tie-break."""
    scored = []
    for p in positions:
        lit = clause.literals[p]
        row = tuple(-_score(c, lit, ctx, flip) for c in order.criteria)
        scored.append((row, tie_break_key(clause, p, flip), p))
    return min(scored)[2]


def condition_one(clause: Clause, positions, params: KboParams, flip: bool = False) -> bool:
    """Completeness guard: a selected literal is negative, or every maximal
    literal is selected."""
    chosen = set(positions)
    if any(not eff_positive(clause.literals[p], flip) for p in chosen):
        return True
    return set(maximal_literals(clause, params, flip)) <= chosen


def select_incomplete(clause: Clause, order: QualityOrder, params: KboParams,
                      ctx: SelectionContext | None = None, flip: bool = False) -> SelectionOutcome:
    """Select the single quality-greatest literal, completeness be damned."""
    assert clause.literals
    winner = _quality_max(clause, range(len(clause.literals)), order, ctx, flip)
    positions = (winner,)
    return SelectionOutcome(positions, not condition_one(clause, positions, params, flip))


def select_completed(clause: Clause, order: QualityOrder, params: KboParams,
                     ctx: SelectionContext | None = None, flip: bool = False) -> SelectionOutcome:
    """Quality selection repaired to satisfy the completeness guard.

    Starting from all literals N and the maximal ones M: take the quality
    best of N; a negative best is selected alone; a positive best that is
    maximal while M is all-positive selects M; otherwise retry on the
    negatives of M if there are any, else drop the best from N and repeat.
    """
    assert clause.literals
    maximal = maximal_literals(clause, params, flip)
    m_set = set(maximal)
    m_all_positive = all(eff_positive(clause.literals[p], flip) for p in maximal)
    m_negatives = [p for p in maximal if not eff_positive(clause.literals[p], flip)]
    n = list(range(len(clause.literals)))
    while True:
        best = _quality_max(clause, n, order, ctx, flip)
        if not eff_positive(clause.literals[best], flip):
            return SelectionOutcome((best,))
        if best in m_set and m_all_positive:
            return SelectionOutcome(tuple(maximal))
        if m_negatives:
            n = m_negatives
            continue
        # only reachable while the maximal literals are all positive and the
        # current best lies outside them
        assert m_all_positive and best not in m_set
        n = [p for p in n if p != best]


def select_lookahead(clause: Clause, ctx: SelectionContext, direction: str,
                     complete: bool, fallback: QualityOrder = ORDER_VAR_SHAPE) -> SelectionOutcome:
    """Select by estimated child count, minimal or maximal.

    The incomplete variant considers every literal.  The complete variant
    selects all maximal literals outright when the clause has no negative
    literal; otherwise it runs lookahead over the negative literals plus the
    unique maximal literal when that one is positive, and falls back to all
    maximal literals if the positive wins.
    """
    assert clause.literals
    if ctx.index is None:
        raise ValueError("lookahead selection needs an active-set index")
    flip = ctx.flip
    params = ctx.params
    n = len(clause.literals)
    negatives = [p for p in range(n) if not eff_positive(clause.literals[p], flip)]
    maximal: list[int] | None = None
    if complete:
        maximal = maximal_literals(clause, params, flip)
        if not negatives:
            return SelectionOutcome(tuple(maximal))
        pool = list(negatives)
        if len(maximal) == 1 and eff_positive(clause.literals[maximal[0]], flip):
            pool.append(maximal[0])
    else:
        pool = list(range(n))
    mode = MINIMIZE if direction == "min" else MAXIMIZE
    counts = ctx.index.count_candidates(clause, pool, mode)
    extreme = min(counts.values()) if mode == MINIMIZE else max(counts.values())
    tied = [p for p in pool if counts[p] == extreme]
    if len(tied) == 1:
        winner = tied[0]
    else:
        winner = _quality_max(clause, tied, fallback, ctx, flip)
    # in minimize mode the winner's count is exact; in maximize mode the last
    # stream may have been cut short, so recompute the full total
    winner_estimate = counts[winner] if mode == MINIMIZE else ctx.estimate(clause.literals[winner])
    if complete and eff_positive(clause.literals[winner], flip):
        positions = tuple(maximal)
        est = winner_estimate if positions == (winner,) else None
        return SelectionOutcome(positions, estimate=est)
    positions = (winner,)
    violated = False if complete else not condition_one(clause, positions, params, flip)
    return SelectionOutcome(positions, violated, estimate=winner_estimate)


def _all_maximal(clause: Clause, ctx: SelectionContext) -> SelectionOutcome:
    return SelectionOutcome(tuple(maximal_literals(clause, ctx.params, ctx.flip)))


def _pick(clause: Clause, positions, flip: bool, key) -> int:
    """Largest ``key`` first, structural tie-break second."""
    return min(positions, key=lambda p: (-key(p), tie_break_key(clause, p, flip)))


def _side_weight_diff(lit: Literal) -> int:
    """Weight gap between the two sides of an equality; a non-equational atom
    counts as atom-vs-truth-constant, i.e. weight minus one."""
    if lit.is_eq:
        return abs(lit.args[0].weight - lit.args[1].weight)
    return lit.weight - 1


def select(strategy: int, clause: Clause, ctx: SelectionContext) -> SelectionOutcome:
    """Dispatch on a strategy number.  Unknown numbers are a configuration
    error and must be rejected before saturation starts."""
    assert clause.literals, "selection needs a non-empty clause"
    flip = ctx.flip
    params = ctx.params
    if strategy not in KNOWN_STRATEGIES:
        raise ValueError(f"unknown selection strategy {strategy}")
    if strategy == 0:
        return SelectionOutcome(tuple(range(len(clause.literals))))
    if strategy == 1:
        maximal = maximal_literals(clause, params, flip)
        neg = [p for p in maximal if not eff_positive(clause.literals[p], flip)]
        if neg:
            return SelectionOutcome((_pick(clause, neg, flip, lambda p: 0),))
        return SelectionOutcome(tuple(maximal))
    if strategy in _QUALITY_ORDERS:
        return select_completed(clause, _QUALITY_ORDERS[strategy], params, ctx, flip)
    if strategy - 1000 in _QUALITY_ORDERS:
        return select_incomplete(clause, _QUALITY_ORDERS[strategy - 1000], params, ctx, flip)
    if strategy in (11, 12, 1011, 1012):
        direction = "min" if strategy in (11, 1011) else "max"
        return select_lookahead(clause, ctx, direction, complete=strategy < 1000)
    negatives = [p for p in range(len(clause.literals))
                 if not eff_positive(clause.literals[p], flip)]
    if strategy == 20:
        return _all_maximal(clause, ctx)
    if strategy == 21:
        maximal = maximal_literals(clause, params, flip)
        if len(maximal) == 1:
            return SelectionOutcome(tuple(maximal))
        if negatives:
            return SelectionOutcome((_pick(clause, negatives, flip, lambda p: clause.literals[p].weight),))
        return SelectionOutcome(tuple(maximal))
    if strategy == 22:
        if negatives:
            return SelectionOutcome((_pick(clause, negatives, flip, lambda p: clause.literals[p].weight),))
        return _all_maximal(clause, ctx)
    if strategy == 30:
        if negatives:
            return SelectionOutcome(tuple(negatives))
        return _all_maximal(clause, ctx)
    if strategy == 31:
        pure_var_neg_eq = [
            p for p in negatives
            if clause.literals[p].is_eq
            and clause.literals[p].args[0].is_var
            and clause.literals[p].args[1].is_var
        ]
        if pure_var_neg_eq:
            return SelectionOutcome((_pick(clause, pure_var_neg_eq, flip, lambda p: 0),))
        return _all_maximal(clause, ctx)
    if strategy == 32:
        if negatives:
            return SelectionOutcome((_pick(clause, negatives, flip, lambda p: -clause.literals[p].weight),))
        return _all_maximal(clause, ctx)
    if strategy == 33:
        if negatives:
            return SelectionOutcome((_pick(clause, negatives, flip, lambda p: _side_weight_diff(clause.literals[p])),))
        return _all_maximal(clause, ctx)
    if strategy == 34:
        ground_neg = [p for p in negatives if clause.literals[p].is_ground()]
        if ground_neg:
            return SelectionOutcome((_pick(clause, ground_neg, flip, lambda p: _side_weight_diff(clause.literals[p])),))
        return _all_maximal(clause, ctx)
    if strategy == 35:
        if any(clause.literals[p].is_ground() for p in negatives):
            return select(34, clause, ctx)
        return select(33, clause, ctx)
    raise AssertionError(f"unhandled strategy {strategy}")


def select_forced(clause: Clause, mapping: dict[str, tuple[int, ...]],
                  ctx: SelectionContext, fallback: int = 0) -> SelectionOutcome:
    """Testing hook: force the selection of labelled input clauses.

    Clauses whose label is not in the mapping fall back to a numbered
    strategy.  The completeness guard is still evaluated honestly.
    """
    forced = mapping.get(clause.label) if clause.label else None
    if forced is None:
        return select(fallback, clause, ctx)
    positions = tuple(forced)
    if not positions or not all(0 <= p < len(clause.literals) for p in positions):
        raise ValueError(f"forced selection {positions} out of range for {clause!r}")
    return SelectionOutcome(positions, not condition_one(clause, positions, ctx.params, ctx.flip))
