"""Generating inference rules of the superposition and resolution calculus.

Every rule works on selected literals of premises that the caller has renamed
apart.  Conclusions are built through a ClauseFactory so ids and ages stay
consistent; each conclusion records an Inference for proof reconstruction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .index import TermIndexSet, orientable_sides
from .kbo import EQUAL, GREATER, KboParams, compare_literals, compare_terms
from .terms import (
    Clause,
    ClauseFactory,
    Literal,
    Substitution,
    eff_positive,
    mgu_atoms,
    mgu_terms,
    shift_literal,
    subterm_at,
    replace_at,
    subterms_with_paths,
)

RESOLUTION = "resolution"
FACTORING = "factoring"
SUPERPOSITION = "superposition"
EQ_RESOLUTION = "equality_resolution"
EQ_FACTORING = "equality_factoring"

FACTORING_RULES = frozenset({FACTORING, EQ_FACTORING})


@dataclass
class Inference:
    rule: str
    premises: tuple[int, ...]
    conclusion: Clause
    details: dict = field(default_factory=dict)

    def __repr__(self):
        ps = ",".join(map(str, self.premises))
        return f"[{self.rule} {ps}] {self.conclusion!r}"


@dataclass
class CalculusConfig:
    params: KboParams
    flip: bool = False
    post_unification_check: bool = False
    factory: ClauseFactory = field(default_factory=ClauseFactory)


def _conclude(cfg, rule, premises, literals, theta, details):
    age = 1 + max(p.age for p in premises)
    clause = cfg.factory.make(theta.apply_literals(literals), age=age)
    inf = Inference(rule, tuple(p.id for p in premises), clause, details)
    clause.origin = inf
    return inf


def _rest(clause: Clause, *drop: int):
    return [lit for i, lit in enumerate(clause.literals) if i not in drop]


def _instance_still_maximal(clause: Clause, pos: int, theta: Substitution, cfg) -> bool:
    lits = theta.apply_literals(clause.literals)
    target = lits[pos]
    return not any(
        compare_literals(other, target, cfg.params, cfg.flip) == GREATER
        for i, other in enumerate(lits)
        if i != pos
    )


def _passes_post_check(cfg, clause: Clause, pos: int, theta: Substitution) -> bool:
    """Optional re-check that a positive selected literal stays maximal after
    instantiation.  Off by default; selected negative literals never needed
    maximality in the first place."""
    if not cfg.post_unification_check:
        return True
    if not eff_positive(clause.literals[pos], cfg.flip):
        return True
    return _instance_still_maximal(clause, pos, theta, cfg)


def resolution(c1: Clause, p1: int, c2: Clause, p2: int, cfg: CalculusConfig) -> Inference | None:
    """Resolve positive ``c1[p1]`` against negative ``c2[p2]`` (renamed apart)."""
    a, b = c1.literals[p1], c2.literals[p2]
    assert not a.is_eq and not b.is_eq and a.positive != b.positive
    assert p1 in c1.selected and p2 in c2.selected
    theta = mgu_atoms(a, b)
    if theta is None:
        return None
    if not (_passes_post_check(cfg, c1, p1, theta) and _passes_post_check(cfg, c2, p2, theta)):
        return None
    literals = _rest(c1, p1) + _rest(c2, p2)
    return _conclude(cfg, RESOLUTION, (c1, c2), literals, theta,
                     {"pos": (p1, p2)})


def factoring(c: Clause, p: int, cfg: CalculusConfig) -> list[Inference]:
    """Factor the selected literal at ``p`` against every other unifiable atom
    of the same polarity.  Only applies when ``p`` reads as positive."""
    lit = c.literals[p]
    assert p in c.selected and not lit.is_eq
    if not eff_positive(lit, cfg.flip):
        return []
    out = []
    for q, other in enumerate(c.literals):
        if q == p or other.is_eq or other.sym is not lit.sym or other.positive != lit.positive:
            continue
        theta = mgu_atoms(lit, other)
        if theta is None:
            continue
        if not _passes_post_check(cfg, c, p, theta):
            continue
        out.append(_conclude(cfg, FACTORING, (c,), _rest(c, q), theta, {"pos": (p, q)}))
    return out


def superposition(from_c: Clause, eq_pos: int, side: int, into_c: Clause, target: int,
                  path: tuple[int, ...], cfg: CalculusConfig) -> Inference | None:
    """Rewrite the subterm of ``into_c[target]`` at ``path`` with the equality
    ``from_c[eq_pos]`` oriented so that ``side`` is the left-hand side."""
    eq = from_c.literals[eq_pos]
    assert eq.is_eq and eq.positive and eq_pos in from_c.selected
    assert target in into_c.selected
    lhs, rhs = eq.args[side], eq.args[1 - side]
    lit = into_c.literals[target]
    s = subterm_at(lit.args[path[0]], path[1:])
    assert not s.is_var
    theta = mgu_terms(lhs, s)
    if theta is None:
        return None
    if compare_terms(theta.apply(rhs), theta.apply(lhs), cfg.params) in (GREATER, EQUAL):
        return None
    if lit.is_eq:
        t_side, other_side = lit.args[path[0]], lit.args[1 - path[0]]
        if compare_terms(theta.apply(other_side), theta.apply(t_side), cfg.params) in (GREATER, EQUAL):
            return None
    if not (_passes_post_check(cfg, from_c, eq_pos, theta)
            and _passes_post_check(cfg, into_c, target, theta)):
        return None
    new_arg = replace_at(lit.args[path[0]], path[1:], rhs)
    new_args = lit.args[:path[0]] + (new_arg,) + lit.args[path[0] + 1:]
    new_lit = Literal(lit.positive, lit.sym, new_args)
    literals = _rest(from_c, eq_pos) + [new_lit] + _rest(into_c, target)
    return _conclude(cfg, SUPERPOSITION, (from_c, into_c), literals, theta,
                     {"eq_pos": eq_pos, "side": side, "target": target, "path": path})


def equality_resolution(c: Clause, p: int, cfg: CalculusConfig) -> Inference | None:
    """Resolve a selected negative equality against itself by unifying its sides."""
    lit = c.literals[p]
    assert lit.is_eq and not lit.positive and p in c.selected
    theta = mgu_terms(lit.args[0], lit.args[1])
    if theta is None:
        return None
    return _conclude(cfg, EQ_RESOLUTION, (c,), _rest(c, p), theta, {"pos": p})


def equality_factoring(c: Clause, p: int, p2: int, cfg: CalculusConfig) -> list[Inference]:
    """Factor two positive equalities of one clause, trying all four side pairings."""
    lit, lit2 = c.literals[p], c.literals[p2]
    assert lit.is_eq and lit.positive and p in c.selected
    assert lit2.is_eq and lit2.positive and p2 != p
    out = []
    for i in (0, 1):
        s, t = lit.args[i], lit.args[1 - i]
        for j in (0, 1):
            s2, t2 = lit2.args[j], lit2.args[1 - j]
            theta = mgu_terms(s, s2)
            if theta is None:
                continue
            if compare_terms(theta.apply(t), theta.apply(s), cfg.params) in (GREATER, EQUAL):
                continue
            if compare_terms(theta.apply(t2), theta.apply(s2), cfg.params) in (GREATER, EQUAL):
                continue
            if not _passes_post_check(cfg, c, p, theta):
                continue
            literals = [Literal(False, lit.sym, (t, t2)), Literal(True, lit2.sym, (s2, t2))] + _rest(c, p, p2)
            out.append(_conclude(cfg, EQ_FACTORING, (c,), literals, theta,
                                 {"pos": (p, p2), "sides": (i, j)}))
    return out


def _shifted(clause: Clause, offset: int) -> Clause:
    """A throwaway renamed-apart copy sharing id, age and selection."""
    copy = Clause.__new__(Clause)
    copy.literals = tuple(shift_literal(l, offset) for l in clause.literals)
    copy.id = clause.id
    copy.age = clause.age
    copy.selected = clause.selected
    copy.label = clause.label
    copy.origin = clause.origin
    copy.num_vars = clause.num_vars
    copy.weight = clause.weight
    copy._vkey = None
    return copy


def generate_all(given: Clause, index: TermIndexSet, cfg: CalculusConfig) -> list[Inference]:
    """All conclusions of the five rules with ``given`` as a premise.

    The index must already contain ``given``, so self-inferences are found
    like any other; the active partner is renamed apart by offsetting its
    variables past the given clause's.
    """
    assert given.selected
    offset = given.num_vars
    out: list[Inference] = []
    for p in given.selected:
        lit = given.literals[p]
        if not lit.is_eq:
            for partner, q in index.resolution_candidates(lit, offset):
                other = _shifted(partner, offset)
                if lit.positive:
                    inf = resolution(given, p, other, q, cfg)
                else:
                    inf = resolution(other, q, given, p, cfg)
                if inf is not None:
                    out.append(inf)
            out.extend(factoring(given, p, cfg))
        elif lit.positive:
            for side in orientable_sides(lit, cfg.params):
                for partner, q, path in index.superposition_into_candidates(lit.args[side], offset):
                    inf = superposition(given, p, side, _shifted(partner, offset), q, path, cfg)
                    if inf is not None:
                        out.append(inf)
            for q, other in enumerate(given.literals):
                if q != p and other.is_eq and other.positive:
                    out.extend(equality_factoring(given, p, q, cfg))
        else:
            inf = equality_resolution(given, p, cfg)
            if inf is not None:
                out.append(inf)
        for i, arg in enumerate(lit.args):
            for path, sub in subterms_with_paths(arg, (i,)):
                for partner, q, side in index.superposition_from_candidates(sub, offset):
                    inf = superposition(_shifted(partner, offset), q, side, given, p, path, cfg)
                    if inf is not None:
                        out.append(inf)
    return out
