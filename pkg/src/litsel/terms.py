"""Terms, literals, clauses and substitutions.

Terms form an immutable, structurally shared DAG.  Construction goes through
``mk_var``/``mk_app``, which intern structurally equal terms so that the
weight and variable measures carried by every node are computed once.
Literals treat equality atoms as unordered (``s = t`` and ``t = s`` are the
same literal) while remembering the orientation they were written in.
"""

from __future__ import annotations

import itertools
import weakref

FUNCTION = "function"
PREDICATE = "predicate"
EQUALITY = "equality"

_symbol_ids = itertools.count(1)


class Symbol:
    """A function or predicate symbol with a fixed arity.

    Symbols compare by identity; interning per problem lives in the parser's
    signature.  ``id`` is a small integer used for deterministic tie-breaking
    and index bucketing.
    """

    __slots__ = ("name", "arity", "kind", "id")

    def __init__(self, name: str, arity: int, kind: str = FUNCTION, id: int | None = None):
        self.name = name
        self.arity = arity
        self.kind = kind
        self.id = next(_symbol_ids) if id is None else id

    def __repr__(self):
        return f"{self.name}/{self.arity}"


#: The distinguished equality predicate.
EQ = Symbol("=", 2, EQUALITY, id=0)

_term_table: weakref.WeakValueDictionary = weakref.WeakValueDictionary()


class Term:
    """Either a variable (``var`` is an int) or an application ``sym(args)``."""

    __slots__ = ("sym", "args", "var", "weight", "var_counts", "skey", "_hash", "__weakref__")

    def __init__(self, sym, args, var, weight, var_counts, skey):
        self.sym = sym
        self.args = args
        self.var = var
        self.weight = weight
        self.var_counts = var_counts  # dict var index -> occurrence count
        self.skey = skey              # structural key: (head, (child keys...))
        self._hash = hash(skey)

    @property
    def is_var(self) -> bool:
        return self.var is not None

    @property
    def ground(self) -> bool:
        return not self.var_counts

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return self.skey == other.skey

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.is_var:
            return f"X{self.var}"
        if not self.args:
            return self.sym.name
        return f"{self.sym.name}({','.join(map(repr, self.args))})"


def mk_var(index: int) -> Term:
    key = ("?%d" % index, ())
    t = _term_table.get(key)
    if t is None:
        t = Term(None, (), index, 1, {index: 1}, key)
        _term_table[key] = t
    return t


def mk_app(sym: Symbol, args: tuple[Term, ...] = ()) -> Term:
    args = tuple(args)
    if len(args) != sym.arity:
        raise ValueError(f"{sym!r} applied to {len(args)} arguments")
    key = (sym.name, tuple(a.skey for a in args))
    t = _term_table.get(key)
    if t is not None and t.sym is sym:
        return t
    weight = 1 + sum(a.weight for a in args)
    if any(a.var_counts for a in args):
        counts: dict[int, int] = {}
        for a in args:
            for v, n in a.var_counts.items():
                counts[v] = counts.get(v, 0) + n
    else:
        counts = {}
    t = Term(sym, args, None, weight, counts, key)
    _term_table[key] = t
    return t


def subterms_with_paths(t: Term, prefix: tuple[int, ...] = ()):
    """Yield (path, subterm) pairs for all non-variable subterms, pre-order."""
    if t.is_var:
        return
    yield prefix, t
    for i, a in enumerate(t.args):
        yield from subterms_with_paths(a, prefix + (i,))


def subterm_at(t: Term, path: tuple[int, ...]) -> Term:
    for i in path:
        t = t.args[i]
    return t


def replace_at(t: Term, path: tuple[int, ...], replacement: Term) -> Term:
    if not path:
        return replacement
    i = path[0]
    new_args = t.args[:i] + (replace_at(t.args[i], path[1:], replacement),) + t.args[i + 1:]
    return mk_app(t.sym, new_args)


class Literal:
    """A possibly negated atom: ``p(args)`` or ``lhs = rhs``.

    Equality literals keep the orientation they were built with in ``args``
    but compare and hash orientation-insensitively.
    """

    __slots__ = ("positive", "sym", "args", "weight", "skey", "akey", "_hash")

    def __init__(self, positive: bool, sym: Symbol, args: tuple[Term, ...]):
        args = tuple(args)
        if len(args) != sym.arity:
            raise ValueError(f"{sym!r} applied to {len(args)} arguments")
        self.positive = positive
        self.sym = sym
        self.args = args
        if sym.kind == EQUALITY:
            self.weight = args[0].weight + args[1].weight
            sides = sorted(a.skey for a in args)
            self.skey = (positive, sym.name, tuple(sides))
        else:
            self.weight = 1 + sum(a.weight for a in args)
            self.skey = (positive, sym.name, tuple(a.skey for a in args))
        self.akey = _abstract(self.skey)
        self._hash = hash(self.skey)

    @property
    def is_eq(self) -> bool:
        return self.sym.kind == EQUALITY

    @property
    def atom_key(self):
        return self.skey[1:]

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Literal):
            return NotImplemented
        return self.skey == other.skey

    def __hash__(self):
        return self._hash

    def negated(self) -> "Literal":
        return Literal(not self.positive, self.sym, self.args)

    def var_occurrences(self) -> int:
        return sum(sum(a.var_counts.values()) for a in self.args)

    def distinct_vars(self) -> frozenset:
        out: set[int] = set()
        for a in self.args:
            out.update(a.var_counts)
        return frozenset(out)

    def top_level_vars(self) -> int:
        return sum(1 for a in self.args if a.is_var)

    def is_ground(self) -> bool:
        return all(a.ground for a in self.args)

    def __repr__(self):
        if self.is_eq:
            op = "=" if self.positive else "!="
            return f"{self.args[0]!r} {op} {self.args[1]!r}"
        body = self.sym.name if not self.args else f"{self.sym.name}({','.join(map(repr, self.args))})"
        return body if self.positive else "~" + body


def _abstract(key):
    """Variable-blind copy of a structural key (every variable becomes '?')."""
    if isinstance(key, tuple):
        return tuple(_abstract(k) for k in key)
    if isinstance(key, str) and key.startswith("?"):
        return "?"
    return key


def eff_positive(lit: Literal, flip: bool) -> bool:
    """Polarity as read by selection and factoring.

    With ``flip`` on, the polarity of every non-equality literal is inverted;
    equality literals keep their real polarity.
    """
    if flip and not lit.is_eq:
        return not lit.positive
    return lit.positive


def weight(e) -> int:
    """Number of symbol occurrences in a term or literal."""
    return e.weight


def var_measures(lit: Literal) -> dict:
    """Occurrence/distinct/top-level variable counts of a literal."""
    return {
        "occurrences": lit.var_occurrences(),
        "distinct": len(lit.distinct_vars()),
        "top_level": lit.top_level_vars(),
    }


class Clause:
    """A multiset of literals with an id, an age and a frozen selection.

    ``selected`` is empty until the clause is activated; the saturation loop
    assigns it exactly once.
    """

    __slots__ = ("literals", "id", "age", "selected", "label", "origin", "num_vars", "weight", "_vkey")

    def __init__(self, literals, id: int, age: int = 0, label: str | None = None, origin=None):
        literals = tuple(literals)
        literals = _renumber(literals)
        self.literals = literals
        self.id = id
        self.age = age
        self.selected: tuple[int, ...] = ()
        self.label = label
        self.origin = origin
        self.num_vars = _count_vars(literals)
        self.weight = sum(lit.weight for lit in literals)
        self._vkey = None

    @property
    def empty(self) -> bool:
        return not self.literals

    def __len__(self):
        return len(self.literals)

    def variant_key(self):
        """A key equal for clauses that differ only by variable names.

        Literals are ordered by their variable-blind keys, then variables are
        renumbered in order of first occurrence along that ordering.  Rare
        permutation ties between variable-abstracted-equal literals may
        produce distinct keys for true variants; those duplicates are caught
        by subsumption instead.
        """
        if self._vkey is None:
            order = sorted(range(len(self.literals)), key=lambda i: self.literals[i].akey)
            mapping: dict[int, int] = {}
            self._vkey = tuple(_rekey(self.literals[i].skey, mapping) for i in order)
        return self._vkey

    def __repr__(self):
        if not self.literals:
            return "$false"
        return " | ".join(map(repr, self.literals))


def _rekey(key, mapping):
    if isinstance(key, tuple):
        return tuple(_rekey(k, mapping) for k in key)
    if isinstance(key, str) and key.startswith("?"):
        idx = mapping.setdefault(key, len(mapping))
        return "?%d" % idx
    return key


def _iter_vars(term: Term):
    if term.is_var:
        yield term.var
    else:
        for a in term.args:
            yield from _iter_vars(a)


def _renumber(literals):
    """Renumber variables to 0..k-1 in order of first occurrence."""
    mapping: dict[int, int] = {}
    for lit in literals:
        for a in lit.args:
            for v in _iter_vars(a):
                if v not in mapping:
                    mapping[v] = len(mapping)
    if all(k == v for k, v in mapping.items()):
        return literals
    sub = Substitution({v: mk_var(i) for v, i in mapping.items()})
    return tuple(sub.apply_literal(lit) for lit in literals)


def _count_vars(literals) -> int:
    seen: set[int] = set()
    for lit in literals:
        for a in lit.args:
            seen.update(a.var_counts)
    return len(seen)


class ClauseFactory:
    """Hands out monotonically increasing clause ids."""

    def __init__(self, next_id: int = 0):
        self._next = next_id

    def make(self, literals, age: int = 0, label: str | None = None, origin=None) -> Clause:
        c = Clause(literals, self._next, age=age, label=label, origin=origin)
        self._next += 1
        return c


class Substitution:
    """A finite map from variables to terms, applied simultaneously.

    Substitutions produced by ``mgu`` are idempotent: no bound variable
    occurs in any binding's value.
    """

    __slots__ = ("bindings",)

    def __init__(self, bindings: dict[int, Term] | None = None):
        self.bindings = bindings or {}

    def __bool__(self):
        return bool(self.bindings)

    def __eq__(self, other):
        return isinstance(other, Substitution) and self.bindings == other.bindings

    def __repr__(self):
        inner = ", ".join(f"X{v}->{t!r}" for v, t in sorted(self.bindings.items()))
        return "{" + inner + "}"

    def apply(self, t: Term) -> Term:
        if t.is_var:
            return self.bindings.get(t.var, t)
        if t.ground or not any(v in self.bindings for v in t.var_counts):
            return t
        return mk_app(t.sym, tuple(self.apply(a) for a in t.args))

    def apply_literal(self, lit: Literal) -> Literal:
        return Literal(lit.positive, lit.sym, tuple(self.apply(a) for a in lit.args))

    def apply_literals(self, literals):
        return tuple(self.apply_literal(lit) for lit in literals)


EMPTY_SUBST = Substitution({})


def _occurs(var: int, t: Term, subs: dict[int, Term]) -> bool:
    stack = [t]
    while stack:
        u = stack.pop()
        if u.is_var:
            if u.var == var:
                return True
            bound = subs.get(u.var)
            if bound is not None:
                stack.append(bound)
        else:
            stack.extend(a for a in u.args if a.var_counts)
    return False


def mgu_terms(a: Term, b: Term) -> Substitution | None:
    """Most general unifier of two terms, with occurs check; None if absent."""
    subs: dict[int, Term] = {}
    stack = [(a, b)]
    while stack:
        s, t = stack.pop()
        while s.is_var and s.var in subs:
            s = subs[s.var]
        while t.is_var and t.var in subs:
            t = subs[t.var]
        if s is t or s == t:
            continue
        if s.is_var:
            if _occurs(s.var, t, subs):
                return None
            subs[s.var] = t
        elif t.is_var:
            if _occurs(t.var, s, subs):
                return None
            subs[t.var] = s
        elif s.sym is t.sym:
            stack.extend(zip(s.args, t.args))
        else:
            return None
    return Substitution(_resolve(subs))


def _resolve(subs: dict[int, Term]) -> dict[int, Term]:
    memo: dict[Term, Term] = {}

    def deep(t: Term) -> Term:
        if t.ground:
            return t
        cached = memo.get(t)
        if cached is not None:
            return cached
        if t.is_var:
            bound = subs.get(t.var)
            out = t if bound is None else deep(bound)
        else:
            out = mk_app(t.sym, tuple(deep(a) for a in t.args))
        memo[t] = out
        return out

    return {v: deep(t) for v, t in subs.items()}


def mgu_atoms(l1: Literal, l2: Literal) -> Substitution | None:
    """Unify the atoms of two literals with the same predicate symbol.

    Equality atoms are unified in their stored orientation; callers that
    need both orientations try them explicitly.
    """
    if l1.sym is not l2.sym:
        return None
    subs: dict[int, Term] = {}
    stack = list(zip(l1.args, l2.args))
    while stack:
        s, t = stack.pop()
        while s.is_var and s.var in subs:
            s = subs[s.var]
        while t.is_var and t.var in subs:
            t = subs[t.var]
        if s is t or s == t:
            continue
        if s.is_var:
            if _occurs(s.var, t, subs):
                return None
            subs[s.var] = t
        elif t.is_var:
            if _occurs(t.var, s, subs):
                return None
            subs[t.var] = s
        elif s.sym is t.sym:
            stack.extend(zip(s.args, t.args))
        else:
            return None
    return Substitution(_resolve(subs))


def match_literal(pattern: Literal, target: Literal, bindings: dict[int, Term]) -> dict[int, Term] | None:
    """One-way matching: extend ``bindings`` so that pattern*bindings == target.

    Only variables of the pattern are bindable; the caller must have renamed
    the pattern apart from the target.  Equality atoms are tried in the given
    orientation only; callers try both.
    """
    if pattern.sym is not target.sym or pattern.positive != target.positive:
        return None
    out = dict(bindings)
    stack = list(zip(pattern.args, target.args))
    while stack:
        p, t = stack.pop()
        if p.is_var:
            bound = out.get(p.var)
            if bound is None:
                out[p.var] = t
            elif bound != t:
                return None
        elif t.is_var or p.sym is not t.sym:
            return None
        else:
            stack.extend(zip(p.args, t.args))
    return out


def shift_term(t: Term, offset: int) -> Term:
    if t.ground:
        return t
    if t.is_var:
        return mk_var(t.var + offset)
    return mk_app(t.sym, tuple(shift_term(a, offset) for a in t.args))


def shift_literal(lit: Literal, offset: int) -> Literal:
    if offset == 0:
        return lit
    return Literal(lit.positive, lit.sym, tuple(shift_term(a, offset) for a in lit.args))


def is_tautology(c: Clause) -> bool:
    """True iff the clause has a literal t = t or a complementary atom pair."""
    seen: dict = {}
    for lit in c.literals:
        if lit.is_eq and lit.positive and lit.args[0] == lit.args[1]:
            return True
        prev = seen.get(lit.atom_key)
        if prev is not None and prev != lit.positive:
            return True
        seen.setdefault(lit.atom_key, lit.positive)
    return False
