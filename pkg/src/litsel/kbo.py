"""Knuth-Bendix ordering on terms and its extension to literals."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .terms import EQUALITY, Clause, Literal, Symbol, Term, eff_positive, mk_app


class Order(enum.Enum):
    GREATER = "greater"
    LESS = "less"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


GREATER = Order.GREATER
LESS = Order.LESS
EQUAL = Order.EQUAL
INCOMPARABLE = Order.INCOMPARABLE


@dataclass
class KboParams:
    """Symbol weights, variable weight and a total precedence on symbols.

    ``precedence`` maps each symbol to an integer; a larger value means
    greater in the precedence.  The default construction gives every symbol
    weight 1, ranks by arity descending and breaks ties by first occurrence
    (earlier occurrence is greater).
    """

    precedence: dict[Symbol, int]
    weights: dict[Symbol, int] = field(default_factory=dict)
    variable_weight: int = 1
    _wcache: dict[Term, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.variable_weight <= 0:
            raise ValueError("variable weight must be positive")
        for sym, w in self.weights.items():
            if w <= 0:
                raise ValueError(f"weight of {sym!r} must be positive")

    @classmethod
    def for_symbols(cls, symbols, weights=None, variable_weight: int = 1) -> "KboParams":
        """Default precedence over ``symbols`` listed in first-occurrence order."""
        seen = []
        for s in symbols:
            if s not in seen:
                seen.append(s)
        ranked = sorted(range(len(seen)), key=lambda i: (-seen[i].arity, i))
        prec = {seen[i]: len(seen) - pos for pos, i in enumerate(ranked)}
        return cls(precedence=prec, weights=dict(weights or {}), variable_weight=variable_weight)

    @classmethod
    def for_clauses(cls, clauses, weights=None, variable_weight: int = 1) -> "KboParams":
        return cls.for_symbols(_signature_of(clauses), weights, variable_weight)

    def ranked(self, sym: Symbol) -> int:
        return self.precedence[sym]

    def weight_of(self, t: Term) -> int:
        if t.is_var:
            return self.variable_weight
        w = self._wcache.get(t)
        if w is None:
            w = self.weights.get(t.sym, 1) + sum(self.weight_of(a) for a in t.args)
            self._wcache[t] = w
        return w


def _signature_of(clauses):
    out = []
    seen = set()

    def visit(t: Term):
        if t.is_var:
            return
        if t.sym not in seen:
            seen.add(t.sym)
            out.append(t.sym)
        for a in t.args:
            visit(a)

    for c in clauses:
        for lit in c.literals:
            if lit.sym.kind != EQUALITY and lit.sym not in seen:
                seen.add(lit.sym)
                out.append(lit.sym)
            for a in lit.args:
                visit(a)
    return out


def compare_terms(t1: Term, t2: Term, params: KboParams) -> Order:
    """KBO comparison with the variable-occurrence condition."""
    if t1 == t2:
        return EQUAL
    c1, c2 = t1.var_counts, t2.var_counts
    ge = all(c1.get(v, 0) >= n for v, n in c2.items())
    le = all(c2.get(v, 0) >= n for v, n in c1.items())
    if not ge and not le:
        return INCOMPARABLE
    w1, w2 = params.weight_of(t1), params.weight_of(t2)
    if w1 > w2:
        return GREATER if ge else INCOMPARABLE
    if w1 < w2:
        return LESS if le else INCOMPARABLE
    # equal weights
    if t1.is_var or t2.is_var:
        # distinct variables, or a variable vs. a compound of equal weight:
        # no substitution-stable direction exists (positive weights rule out
        # the classic unary-of-weight-zero case)
        return INCOMPARABLE
    r1, r2 = params.ranked(t1.sym), params.ranked(t2.sym)
    if r1 > r2:
        return GREATER if ge else INCOMPARABLE
    if r1 < r2:
        return LESS if le else INCOMPARABLE
    # same symbol: lexicographic on arguments
    for a1, a2 in zip(t1.args, t2.args):
        sub = compare_terms(a1, a2, params)
        if sub == EQUAL:
            continue
        if sub == GREATER:
            return GREATER if ge else INCOMPARABLE
        if sub == LESS:
            return LESS if le else INCOMPARABLE
        return INCOMPARABLE
    return EQUAL


def _top_terms(lit: Literal) -> list[Term]:
    if lit.is_eq:
        return [lit.args[0], lit.args[1]]
    return [mk_app(lit.sym, lit.args)]


def _compare_multisets(ms1: list[Term], ms2: list[Term], params: KboParams) -> Order:
    """Dershowitz-Manna multiset extension of the term ordering."""
    rest1 = list(ms1)
    rest2 = list(ms2)
    for x in ms1:
        if x in rest1 and x in rest2:
            rest1.remove(x)
            rest2.remove(x)
    if not rest1 and not rest2:
        return EQUAL
    gt = bool(rest1) and all(
        any(compare_terms(x, y, params) == GREATER for x in rest1) for y in rest2
    )
    lt = bool(rest2) and all(
        any(compare_terms(y, x, params) == GREATER for y in rest2) for x in rest1
    )
    if gt:
        return GREATER
    if lt:
        return LESS
    return INCOMPARABLE


def compare_literals(l1: Literal, l2: Literal, params: KboParams, flip: bool = False) -> Order:
    """Extension of the term ordering to literals.

    Literals compare as multisets of their top terms (both sides for an
    equality, the whole atom for a predicate).  On equal atoms a negative
    literal is greater than a positive one; ``flip`` inverts the polarity
    read for non-equality literals.
    """
    r = _compare_multisets(_top_terms(l1), _top_terms(l2), params)
    if r != EQUAL:
        return r
    n1 = not eff_positive(l1, flip)
    n2 = not eff_positive(l2, flip)
    if n1 == n2:
        return EQUAL
    return GREATER if n1 else LESS


def maximal_literals(c: Clause, params: KboParams, flip: bool = False) -> list[int]:
    """Positions whose literal is not strictly below any other literal."""
    lits = c.literals
    out = []
    for p, lit in enumerate(lits):
        if not any(
            compare_literals(other, lit, params, flip) == GREATER
            for q, other in enumerate(lits)
            if q != p
        ):
            out.append(p)
    return out
