"""TPTP CNF reading and writing.

Accepts the cnf dialect only: ``cnf(name, role, (l1 | ... | ln)).`` plus
``include('file').``  Includes resolve relative to the including file first,
then against an optional include directory.  ``$false`` is accepted only as
the body of a whole clause (the empty clause).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .terms import EQ, EQUALITY, FUNCTION, PREDICATE, Clause, ClauseFactory, Literal, Symbol, mk_app, mk_var


class ParseError(Exception):
    def __init__(self, message: str, source: str = "<string>", line: int = 0, col: int = 0):
        super().__init__(f"{source}:{line}:{col}: {message}")
        self.source = source
        self.line = line
        self.col = col


class Signature:
    """Per-problem symbol table with arity checking.

    Function and predicate namespaces are separate in principle, but a name
    used both ways is rejected because it is invariably an input mistake.
    """

    def __init__(self):
        self.symbols: dict[tuple[str, str], Symbol] = {}
        self._kind_of: dict[str, str] = {}
        self._next_id = 1

    def intern(self, name: str, arity: int, kind: str) -> Symbol:
        if kind == EQUALITY:
            return EQ
        prior_kind = self._kind_of.get(name)
        if prior_kind is not None and prior_kind != kind:
            raise ValueError(f"'{name}' used as both {prior_kind} and {kind}")
        sym = self.symbols.get((name, kind))
        if sym is None:
            sym = Symbol(name, arity, kind, id=self._next_id)
            self._next_id += 1
            self.symbols[(name, kind)] = sym
            self._kind_of[name] = kind
        elif sym.arity != arity:
            raise ValueError(f"'{name}' used with arity {arity} after arity {sym.arity}")
        return sym

    def ordered(self) -> list[Symbol]:
        return sorted(self.symbols.values(), key=lambda s: s.id)


@dataclass
class Problem:
    name: str
    clauses: list[Clause]
    signature: Signature
    source_files: list[str] = field(default_factory=list)


_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>%[^\n]*|/\*.*?\*/)
    | (?P<neq>!=)
    | (?P<punct>[(),.|~=])
    | (?P<dollar>\$[a-z_]\w*)
    | (?P<upper>[A-Z]\w*)
    | (?P<lower>[a-z]\w*)
    | (?P<num>\d+)
    | (?P<quoted>'(?:[^'\\]|\\.)*')
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, source: str) -> list[_Token]:
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", source, line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, value, line, m.start() - line_start + 1))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + value.rfind("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, source: str, signature: Signature, factory: ClauseFactory):
        self.tokens = _tokenize(text, source)
        self.source = source
        self.i = 0
        self.signature = signature
        self.factory = factory
        self.clauses: list[Clause] = []
        self.includes: list[str] = []

    def error(self, message: str):
        tok = self.tokens[self.i]
        raise ParseError(message, self.source, tok.line, tok.col)

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self, text: str | None = None, kind: str | None = None) -> _Token:
        tok = self.tokens[self.i]
        if text is not None and tok.text != text:
            self.error(f"expected {text!r}, found {tok.text!r}")
        if kind is not None and tok.kind != kind:
            self.error(f"expected {kind}, found {tok.text!r}")
        self.i += 1
        return tok

    def intern(self, name: str, arity: int, kind: str) -> Symbol:
        try:
            return self.signature.intern(name, arity, kind)
        except ValueError as exc:
            self.error(str(exc))

    def parse_file(self):
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.text == "cnf":
                self.parse_cnf()
            elif tok.text == "include":
                self.parse_include()
            else:
                if tok.text in ("fof", "tff", "thf"):
                    self.error(f"only the cnf dialect is supported, found {tok.text!r} input")
                self.error(f"expected 'cnf' or 'include', found {tok.text!r}")

    def parse_include(self):
        self.take("include")
        self.take("(")
        name = self.take(kind="quoted").text[1:-1]
        self.take(")")
        self.take(".")
        self.includes.append(name)

    def parse_cnf(self):
        self.take("cnf")
        self.take("(")
        name_tok = self.take()
        if name_tok.kind not in ("lower", "quoted", "num"):
            self.error(f"bad clause name {name_tok.text!r}")
        name = name_tok.text.strip("'")
        self.take(",")
        # roles (axiom, hypothesis, negated_conjecture, even conjecture) are
        # all the same to cnf inputs: there is no negation step
        self.take(kind="lower")
        self.take(",")
        variables: dict[str, int] = {}
        literals = self.parse_clause_body(variables)
        self.take(")")
        self.take(".")
        self.clauses.append(self.factory.make(literals, age=0, label=name))

    def parse_clause_body(self, variables) -> list[Literal]:
        wrapped = self.peek().text == "("
        if wrapped:
            self.take("(")
        if self.peek().text == "$false":
            false_tok = self.take()
            if self.peek().text == "|":
                raise ParseError("'$false' is only allowed as a whole clause",
                                 self.source, false_tok.line, false_tok.col)
            literals = []
        else:
            literals = [self.parse_literal(variables)]
            while self.peek().text == "|":
                self.take("|")
                if self.peek().text == "$false":
                    self.error("'$false' is only allowed as a whole clause")
                literals.append(self.parse_literal(variables))
        if wrapped:
            self.take(")")
        return literals

    def parse_literal(self, variables) -> Literal:
        negated = False
        if self.peek().text == "~":
            self.take("~")
            negated = True
        operand = self.parse_operand(variables)
        op = self.peek().text
        if op in ("=", "!="):
            self.take(op)
            lhs = self.operand_to_term(operand)
            rhs = self.operand_to_term(self.parse_operand(variables))
            positive = (op == "=") != negated
            return Literal(positive, EQ, (lhs, rhs))
        if operand[0] == "var":
            raise ParseError("a variable cannot be an atom",
                             self.source, operand[2].line, operand[2].col)
        _, name, args, _tok = operand
        sym = self.intern(name, len(args), PREDICATE)
        return Literal(not negated, sym, tuple(args))

    def parse_operand(self, variables):
        """An atom-or-term whose head is not yet committed to a namespace."""
        tok = self.take()
        if tok.kind == "upper":
            idx = variables.setdefault(tok.text, len(variables))
            return ("var", mk_var(idx), tok)
        if tok.kind in ("lower", "num", "quoted"):
            name = tok.text.strip("'") if tok.kind == "quoted" else tok.text
            args = []
            if self.peek().text == "(":
                self.take("(")
                args.append(self.parse_term(variables))
                while self.peek().text == ",":
                    self.take(",")
                    args.append(self.parse_term(variables))
                self.take(")")
            return ("app", name, args, tok)
        raise ParseError(f"expected a term, found {tok.text!r}", self.source, tok.line, tok.col)

    def operand_to_term(self, operand):
        if operand[0] == "var":
            return operand[1]
        _, name, args, _tok = operand
        sym = self.intern(name, len(args), FUNCTION)
        return mk_app(sym, tuple(args))

    def parse_term(self, variables):
        operand = self.parse_operand(variables)
        return self.operand_to_term(operand)


def parse_problem_text(text: str, name: str = "<string>", include_dir: str | None = None,
                       _signature: Signature | None = None,
                       _factory: ClauseFactory | None = None,
                       _sources: list[str] | None = None) -> Problem:
    signature = _signature or Signature()
    factory = _factory or ClauseFactory()
    sources = _sources if _sources is not None else [name]
    parser = _Parser(text, name, signature, factory)
    parser.parse_file()
    clauses = list(parser.clauses)
    for inc in parser.includes:
        resolved = _resolve_include(inc, name, include_dir)
        if resolved is None:
            raise ParseError(f"cannot resolve include '{inc}'", name, 0, 0)
        sources.append(str(resolved))
        sub = parse_problem_text(resolved.read_text(), str(resolved), include_dir,
                                 _signature=signature, _factory=factory, _sources=sources)
        clauses.extend(sub.clauses)
    return Problem(name=name, clauses=clauses, signature=signature, source_files=sources)


def _resolve_include(name: str, including: str, include_dir: str | None) -> Path | None:
    base = Path(including).parent if including not in ("<string>",) else Path(".")
    for root in (base, Path(include_dir) if include_dir else None):
        if root is None:
            continue
        candidate = root / name
        if candidate.is_file():
            return candidate
    return None


def parse_problem_file(path, include_dir: str | None = None) -> Problem:
    path = Path(path)
    problem = parse_problem_text(path.read_text(), str(path), include_dir)
    problem.name = path.stem
    return problem


# --- printing ---------------------------------------------------------------

_PLAIN_NAME = re.compile(r"[a-z]\w*$|\d+$")


def _format_name(name: str) -> str:
    return name if _PLAIN_NAME.fullmatch(name) else f"'{name}'"


def format_term(t) -> str:
    if t.is_var:
        return f"X{t.var}"
    if not t.args:
        return _format_name(t.sym.name)
    return f"{_format_name(t.sym.name)}({','.join(format_term(a) for a in t.args)})"


def format_literal(lit: Literal) -> str:
    if lit.is_eq:
        op = "=" if lit.positive else "!="
        return f"{format_term(lit.args[0])} {op} {format_term(lit.args[1])}"
    atom = _format_name(lit.sym.name)
    if lit.args:
        atom += f"({','.join(format_term(a) for a in lit.args)})"
    return atom if lit.positive else "~" + atom


def format_clause(clause: Clause, name: str | None = None, role: str = "axiom") -> str:
    label = name or clause.label or f"c{clause.id}"
    body = " | ".join(format_literal(lit) for lit in clause.literals) or "$false"
    return f"cnf({_format_name(label)}, {role}, ({body}))."


def format_problem(problem: Problem) -> str:
    return "\n".join(format_clause(c) for c in problem.clauses) + "\n"
