"""litsel: a saturation-based first-order prover built around literal selection.

The library exposes the term/clause layer, the Knuth-Bendix ordering, the
generating calculus, the selection strategies (quality, completed, lookahead
and prover-inspired fixed rules), the given-clause loop and a benchmark
harness that ranks strategies over a problem corpus.
"""

from .calculus import (
    CalculusConfig,
    Inference,
    equality_factoring,
    equality_resolution,
    factoring,
    generate_all,
    resolution,
    superposition,
)
from .index import TermIndexSet, children_estimate
from .kbo import EQUAL, GREATER, INCOMPARABLE, LESS, KboParams, Order, compare_literals, compare_terms, maximal_literals
from .saturation import (
    PassiveSet,
    ProverConfig,
    RunStatistics,
    SaturationResult,
    Status,
    replay_proof,
    retention_test,
    saturate,
    subsumes,
)
from .selection import (
    KNOWN_STRATEGIES,
    QualityOrder,
    SelectionContext,
    SelectionOutcome,
    compare_quality,
    condition_one,
    select,
    select_completed,
    select_incomplete,
    select_lookahead,
)
from .terms import (
    EQ,
    Clause,
    ClauseFactory,
    Literal,
    Substitution,
    Symbol,
    Term,
    is_tautology,
    mgu_atoms,
    mgu_terms,
    mk_app,
    mk_var,
    var_measures,
    weight,
)
from .tptp import ParseError, Problem, format_clause, format_problem, parse_problem_file, parse_problem_text

__version__ = "0.1.0"
