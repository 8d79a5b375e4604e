import pytest

from litsel.terms import EQ, FUNCTION, PREDICATE, ClauseFactory, Literal, Symbol, mk_app, mk_var


class Sig:
    """A small fixed signature shared by most unit tests."""

    def __init__(self):
        self.p = Symbol("p", 1, PREDICATE)
        self.q = Symbol("q", 0, PREDICATE)
        self.q1 = Symbol("q1", 1, PREDICATE)
        self.r2 = Symbol("r2", 2, PREDICATE)
        self.p2 = Symbol("p2", 2, PREDICATE)
        self.f = Symbol("f", 1)
        self.g = Symbol("g", 1)
        self.h2 = Symbol("h2", 2)
        self.a = Symbol("a", 0)
        self.b = Symbol("b", 0)
        self.c = Symbol("c", 0)
        self.A = mk_app(self.a)
        self.B = mk_app(self.b)
        self.C = mk_app(self.c)
        self.x = mk_var(0)
        self.y = mk_var(1)
        self.z = mk_var(2)
        self.all_symbols = [self.p, self.q, self.q1, self.r2, self.p2,
                            self.f, self.g, self.h2, self.a, self.b, self.c]

    def F(self, t):
        return mk_app(self.f, (t,))

    def G(self, t):
        return mk_app(self.g, (t,))

    def P(self, t, positive=True):
        return Literal(positive, self.p, (t,))

    def Q(self, positive=True):
        return Literal(positive, self.q, ())

    def eq(self, lhs, rhs, positive=True):
        return Literal(positive, EQ, (lhs, rhs))


@pytest.fixture
def sig():
    return Sig()


@pytest.fixture
def factory():
    return ClauseFactory()
