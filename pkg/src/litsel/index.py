"""Retrieval indexes over the active clause set.

Three indexes are kept, all restricted to selected literals of active
clauses: resolution partners by (predicate, polarity), orientable sides of
positive equalities, and non-variable subterms.  Buckets are keyed by top
symbol and every retrieval re-checks unifiability before yielding, so the
streams are exact up to ordering side conditions (which are deliberately not
checked here).
"""

from __future__ import annotations

from .kbo import LESS, KboParams, compare_terms
from .terms import Clause, Literal, Term, mgu_atoms, mgu_terms, shift_literal, shift_term, subterms_with_paths

MINIMIZE = "minimize"
MAXIMIZE = "maximize"

_VAR_BUCKET = "?"


def _bucket_key(t: Term):
    return _VAR_BUCKET if t.is_var else t.sym.id


def orientable_sides(lit: Literal, params: KboParams) -> list[int]:
    """Sides of a positive equality that are not smaller than the other side."""
    out = []
    for side in (0, 1):
        if compare_terms(lit.args[side], lit.args[1 - side], params) != LESS:
            out.append(side)
    return out


class TermIndexSet:
    """Insertion-ordered retrieval indexes for generating inferences."""

    def __init__(self, params: KboParams):
        self.params = params
        self.atom_index: dict[tuple[int, bool], list] = {}
        self.eq_side_index: dict = {}   # side top symbol -> [(clause, pos, side)]
        self.subterm_index: dict = {}   # subterm top symbol -> [(clause, pos, path)]
        self.members: set[int] = set()

    def _entries(self, clause: Clause):
        assert clause.selected, "clause must carry a non-empty selection"
        for pos in clause.selected:
            lit = clause.literals[pos]
            if not lit.is_eq:
                yield self.atom_index, (lit.sym.id, lit.positive), (clause, pos)
            elif lit.positive:
                for side in orientable_sides(lit, self.params):
                    yield self.eq_side_index, _bucket_key(lit.args[side]), (clause, pos, side)
            for i, arg in enumerate(lit.args):
                for path, sub in subterms_with_paths(arg, (i,)):
                    yield self.subterm_index, sub.sym.id, (clause, pos, path)

    def insert_active(self, clause: Clause) -> None:
        assert clause.id not in self.members, "clause already indexed"
        for index, key, entry in self._entries(clause):
            index.setdefault(key, []).append(entry)
        self.members.add(clause.id)

    def remove_active(self, clause: Clause) -> None:
        assert clause.id in self.members, "clause was never indexed"
        for index, key, entry in self._entries(clause):
            bucket = index[key]
            bucket.remove(entry)
            if not bucket:
                del index[key]
        self.members.remove(clause.id)

    # --- candidate streams -------------------------------------------------

    def resolution_candidates(self, lit: Literal, offset: int | None = None):
        """Active entries with the opposite polarity whose atom unifies with ``lit``.

        ``offset`` renames the candidate's variables apart; by default it is
        derived from the query literal's own variable range.
        """
        assert not lit.is_eq
        if offset is None:
            offset = _offset_for(lit.args)
        for clause, pos in self.atom_index.get((lit.sym.id, not lit.positive), ()):
            other = shift_literal(clause.literals[pos], offset)
            if mgu_atoms(lit, other) is not None:
                yield clause, pos

    def superposition_from_candidates(self, s: Term, offset: int | None = None):
        """Positive-equality sides unifying with the non-variable subterm ``s``."""
        if offset is None:
            offset = _offset_for((s,))
        buckets = [self.eq_side_index.get(_bucket_key(s), ())]
        if not s.is_var:
            buckets.append(self.eq_side_index.get(_VAR_BUCKET, ()))
        for bucket in buckets:
            for clause, pos, side in bucket:
                lhs = shift_term(clause.literals[pos].args[side], offset)
                if mgu_terms(s, lhs) is not None:
                    yield clause, pos, side

    def superposition_into_candidates(self, lhs: Term, offset: int | None = None):
        """Indexed non-variable subterms unifying with the equality side ``lhs``."""
        if offset is None:
            offset = _offset_for((lhs,))
        if lhs.is_var:
            buckets = list(self.subterm_index.values())
        else:
            buckets = [self.subterm_index.get(lhs.sym.id, ())]
        for bucket in buckets:
            for clause, pos, path in bucket:
                sub = shift_term(_term_at(clause.literals[pos], path), offset)
                if mgu_terms(lhs, sub) is not None:
                    yield clause, pos, path

    # --- lookahead estimation ----------------------------------------------

    def _streams_for(self, lit: Literal, offset: int):
        """Candidate streams plus the index-free seed count for one literal."""
        streams = []
        if not lit.is_eq:
            streams.append(self.resolution_candidates(lit, offset))
        elif lit.positive:
            for side in orientable_sides(lit, self.params):
                streams.append(self.superposition_into_candidates(lit.args[side], offset))
        for i, arg in enumerate(lit.args):
            for _path, sub in subterms_with_paths(arg, (i,)):
                streams.append(self.superposition_from_candidates(sub, offset))
        return streams, _seed_count(lit, self.params)

    def count_candidates(self, clause: Clause, positions, mode: str = MINIMIZE) -> dict[int, int]:
        """Candidate counts per position, computed fail-fast.

        All positions' streams advance round-robin, one candidate per stream
        per turn.  In minimize mode the count of the returned minimum is
        exact and every other reported count is a lower bound at least as
        large, so ``min`` over the result is a sound winner.  In maximize
        mode all positions are exhausted except possibly the last, which may
        stop once it alone remains and already dominates.
        """
        positions = list(positions)
        assert positions
        state = {}
        for p in positions:
            streams, seed = self._streams_for(clause.literals[p], clause.num_vars)
            state[p] = {"streams": streams, "count": seed, "done": not streams}
        best: int | None = None

        def finished_counts():
            return [st["count"] for st in state.values() if st["done"]]

        while True:
            progressed = False
            for p in positions:
                st = state[p]
                if st["done"]:
                    continue
                if mode == MINIMIZE and best is not None and st["count"] > best:
                    continue
                alive = []
                for stream in st["streams"]:
                    try:
                        next(stream)
                    except StopIteration:
                        continue
                    st["count"] += 1
                    alive.append(stream)
                st["streams"] = alive
                if not alive:
                    st["done"] = True
                progressed = True
            done = [p for p in positions if state[p]["done"]]
            if mode == MINIMIZE:
                if done:
                    best = min(state[p]["count"] for p in done)
                    if all(st["done"] or st["count"] > best for st in state.values()):
                        break
            else:
                pending = [p for p in positions if not state[p]["done"]]
                if not pending:
                    break
                if len(pending) == 1 and done:
                    if state[pending[0]]["count"] > max(finished_counts()):
                        break
            if not progressed:
                break
        return {p: state[p]["count"] for p in positions}


def _term_at(lit: Literal, path) -> Term:
    t = lit.args[path[0]]
    for i in path[1:]:
        t = t.args[i]
    return t


def _offset_for(terms) -> int:
    top = -1
    for t in terms:
        if t.var_counts:
            top = max(top, max(t.var_counts))
    return top + 1


def _seed_count(lit: Literal, params: KboParams) -> int:
    """Index-free contributions: equality-resolution applicability plus the
    literal's own superposition pairs once its clause joins the active set."""
    if not lit.is_eq:
        return 0
    if not lit.positive:
        return 1 if mgu_terms(lit.args[0], lit.args[1]) is not None else 0
    offset = _offset_for(lit.args)
    pairs = 0
    for side in orientable_sides(lit, params):
        lhs = shift_term(lit.args[side], offset)
        for i, arg in enumerate(lit.args):
            for _path, sub in subterms_with_paths(arg, (i,)):
                if mgu_terms(lhs, sub) is not None:
                    pairs += 1
    # each pair is found from both the rewriting and the rewritten end
    return 2 * pairs


def children_estimate(index: TermIndexSet, lit: Literal, offset: int | None = None) -> int:
    """Exact candidate total for one literal: all three indexes exhausted,
    plus the index-free seed.  An overestimate of the non-factoring children
    a clause gets at activation when exactly this literal is selected."""
    if offset is None:
        offset = _offset_for(lit.args)
    streams, seed = index._streams_for(lit, offset)
    return seed + sum(1 for stream in streams for _ in stream)
