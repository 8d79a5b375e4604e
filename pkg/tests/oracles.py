"""Independent reference implementations used to cross-check the prover.

Everything here recomputes results from first principles: naive tree walks,
brute-force scans with full unification, exhaustive finite-model enumeration.
None of it shares code with the retrieval or selection paths it checks.
"""

from __future__ import annotations

import itertools
import random

from litsel.kbo import GREATER, KboParams, compare_literals
from litsel.terms import (
    EQ,
    PREDICATE,
    Clause,
    ClauseFactory,
    Literal,
    Symbol,
    eff_positive,
    mgu_atoms,
    mgu_terms,
    mk_app,
    mk_var,
    shift_literal,
    shift_term,
    subterms_with_paths,
)


def naive_symbol_count(x) -> int:
    """Count symbol occurrences by a plain tree walk."""

    def walk(t):
        if t.is_var:
            return 1
        return 1 + sum(walk(a) for a in t.args)

    if isinstance(x, Literal):
        if x.is_eq:
            return walk(x.args[0]) + walk(x.args[1])
        return 1 + sum(walk(a) for a in x.args)
    return walk(x)


# --- brute-force index scans --------------------------------------------------


def scan_resolution(active, lit):
    """All (clause, pos) whose selected literal is an opposite-polarity,
    same-predicate atom unifiable with ``lit``."""
    out = set()
    for clause in active:
        for pos in clause.selected:
            other = clause.literals[pos]
            if other.is_eq or other.sym is not lit.sym or other.positive == lit.positive:
                continue
            offset = max([v for a in lit.args for v in a.var_counts], default=-1) + 1
            if mgu_atoms(lit, shift_literal(other, offset)) is not None:
                out.add((clause.id, pos))
    return out


def scan_from_candidates(active, params, s):
    """All (clause, pos, side) of selected positive equalities whose
    not-smaller side unifies with the subterm ``s``."""
    from litsel.index import orientable_sides

    out = set()
    offset = max(s.var_counts, default=-1) + 1
    for clause in active:
        for pos in clause.selected:
            lit = clause.literals[pos]
            if not (lit.is_eq and lit.positive):
                continue
            for side in orientable_sides(lit, params):
                if mgu_terms(s, shift_term(lit.args[side], offset)) is not None:
                    out.add((clause.id, pos, side))
    return out


def scan_into_candidates(active, lhs):
    """All (clause, pos, path) of selected literals owning a non-variable
    subterm unifiable with ``lhs``."""
    out = set()
    offset = max(lhs.var_counts, default=-1) + 1
    for clause in active:
        for pos in clause.selected:
            lit = clause.literals[pos]
            for i, arg in enumerate(lit.args):
                for path, sub in subterms_with_paths(arg, (i,)):
                    if mgu_terms(lhs, shift_term(sub, offset)) is not None:
                        out.add((clause.id, pos, path))
    return out


def condition_one_oracle(clause, positions, params: KboParams, flip: bool = False) -> bool:
    """Re-derivation of the completeness guard from pairwise comparisons."""
    chosen = set(positions)
    for p in chosen:
        if not eff_positive(clause.literals[p], flip):
            return True
    maximal = set()
    for p, lit in enumerate(clause.literals):
        strictly_below = any(
            compare_literals(other, lit, params, flip) == GREATER
            for q, other in enumerate(clause.literals) if q != p
        )
        if not strictly_below:
            maximal.add(p)
    return maximal <= chosen


# --- finite model enumeration ---------------------------------------------------


def signature_of(clauses):
    functions, predicates = [], []
    seen = set()

    def visit(t):
        if t.is_var:
            return
        if t.sym not in seen:
            seen.add(t.sym)
            functions.append(t.sym)
        for a in t.args:
            visit(a)

    for c in clauses:
        for lit in c.literals:
            if lit.sym is not EQ and lit.sym not in seen:
                seen.add(lit.sym)
                predicates.append(lit.sym)
            for a in lit.args:
                visit(a)
    return functions, predicates


class Model:
    def __init__(self, size, func_tables, pred_tables):
        self.size = size
        self.funcs = func_tables
        self.preds = pred_tables

    def eval_term(self, t, env):
        if t.is_var:
            return env[t.var]
        return self.funcs[t.sym][tuple(self.eval_term(a, env) for a in t.args)]

    def literal_true(self, lit, env):
        if lit.is_eq:
            holds = self.eval_term(lit.args[0], env) == self.eval_term(lit.args[1], env)
        else:
            holds = self.preds[lit.sym][tuple(self.eval_term(a, env) for a in lit.args)]
        return holds if lit.positive else not holds

    def clause_true(self, clause) -> bool:
        nvars = clause.num_vars
        for values in itertools.product(range(self.size), repeat=nvars):
            env = dict(enumerate(values))
            if not any(self.literal_true(lit, env) for lit in clause.literals):
                return False
        return True


def enumerate_models(clauses, max_size=2):
    """Every interpretation over carriers of size 1..max_size (equality is
    identity).  Keep signatures tiny; the space is exponential."""
    functions, predicates = signature_of(clauses)
    for size in range(1, max_size + 1):
        domain = list(range(size))
        func_spaces = []
        for f in functions:
            keys = list(itertools.product(domain, repeat=f.arity))
            func_spaces.append([dict(zip(keys, values))
                                for values in itertools.product(domain, repeat=len(keys))])
        pred_spaces = []
        for p in predicates:
            keys = list(itertools.product(domain, repeat=p.arity))
            pred_spaces.append([dict(zip(keys, values))
                                for values in itertools.product((False, True), repeat=len(keys))])
        for func_choice in itertools.product(*func_spaces):
            for pred_choice in itertools.product(*pred_spaces):
                yield Model(size, dict(zip(functions, func_choice)),
                            dict(zip(predicates, pred_choice)))


def entails(premises, conclusion, max_size=2) -> bool:
    """True iff every small model of the premises satisfies the conclusion."""
    for model in enumerate_models(list(premises) + [conclusion], max_size):
        if all(model.clause_true(c) for c in premises) and not model.clause_true(conclusion):
            return False
    return True


def is_unsat_in_small_models(clauses, max_size=2) -> bool:
    """No model up to ``max_size`` satisfies all clauses.  Only a positive
    unsat verdict is meaningful: a surviving model proves satisfiability,
    absence of one does not prove unsatisfiability in general."""
    for model in enumerate_models(clauses, max_size):
        if all(model.clause_true(c) for c in clauses):
            return False
    return True


# --- random generators --------------------------------------------------------


class RandomLogic:
    """Seeded generator of small terms, literals and clauses."""

    def __init__(self, seed=0, with_equality=True):
        self.rng = random.Random(seed)
        self.with_equality = with_equality
        self.funcs = [Symbol("rf", 1), Symbol("rg", 2), Symbol("ra", 0), Symbol("rb", 0), Symbol("rc", 0)]
        self.preds = [Symbol("rp", 1, PREDICATE), Symbol("rq", 2, PREDICATE), Symbol("rs", 0, PREDICATE)]
        self.params = KboParams.for_symbols(self.preds + self.funcs)

    def term(self, depth=2, nvars=3):
        if depth == 0 or self.rng.random() < 0.35:
            if self.rng.random() < 0.45:
                return mk_var(self.rng.randrange(nvars))
            const = self.rng.choice([f for f in self.funcs if f.arity == 0])
            return mk_app(const)
        f = self.rng.choice([f for f in self.funcs if f.arity > 0])
        return mk_app(f, tuple(self.term(depth - 1, nvars) for _ in range(f.arity)))

    def ground_term(self, depth=2):
        consts = [f for f in self.funcs if f.arity == 0]
        if depth == 0 or self.rng.random() < 0.4:
            return mk_app(self.rng.choice(consts))
        f = self.rng.choice([f for f in self.funcs if f.arity > 0])
        return mk_app(f, tuple(self.ground_term(depth - 1) for _ in range(f.arity)))

    def literal(self, nvars=3):
        positive = self.rng.random() < 0.5
        if self.with_equality and self.rng.random() < 0.35:
            return Literal(positive, EQ, (self.term(2, nvars), self.term(2, nvars)))
        p = self.rng.choice(self.preds)
        return Literal(positive, p, tuple(self.term(2, nvars) for _ in range(p.arity)))

    def clause(self, factory: ClauseFactory, max_len=4):
        n = self.rng.randrange(1, max_len + 1)
        return factory.make([self.literal() for _ in range(n)])

    def substitution(self, nvars=3):
        from litsel.terms import Substitution

        return Substitution({v: self.term(1, nvars + 2) for v in range(nvars)
                             if self.rng.random() < 0.7})
