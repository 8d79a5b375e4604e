"""Strategy-matrix benchmark runner.

Runs every (strategy, problem) pair as an isolated prover instance, tallies
solved/unique/u-score and the per-run statistics averages, and renders the
result as an aligned text table or CSV.  "Solved" means refuted; satisfiable
verdicts are tallied separately.
"""

from __future__ import annotations

import concurrent.futures
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .saturation import ProverConfig, Status, saturate
from .selection import COMPLETE_STRATEGIES, INCOMPLETE_STRATEGIES, is_incomplete_strategy
from .tptp import parse_problem_file

ALL_STRATEGIES = tuple(sorted(COMPLETE_STRATEGIES + INCOMPLETE_STRATEGIES))


@dataclass
class RunRecord:
    strategy: int
    problem: str
    status: Status
    time: float
    activations: int
    children: int
    selection_events: int
    violations: int

    @property
    def avg_children(self) -> Fraction:
        return Fraction(self.children, self.activations) if self.activations else Fraction(0)

    @property
    def pct_incomp(self) -> Fraction:
        if not self.selection_events:
            return Fraction(0)
        return Fraction(100 * self.violations, self.selection_events)


@dataclass
class StrategyRow:
    strategy: int
    solved: int
    satisfiable: int
    unique: int
    u_score: Fraction
    pct_total: Fraction
    child_solved: Fraction | None
    child_all: Fraction | None
    incomp_solved: Fraction | None
    incomp_all: Fraction | None


@dataclass
class MatrixResult:
    strategies: list[int]
    problems: list[str]
    runs: dict[tuple[int, str], RunRecord]
    errors: dict[tuple[int, str], str] = field(default_factory=dict)

    @property
    def solved_by(self) -> dict[int, set[str]]:
        out = {s: set() for s in self.strategies}
        for (strategy, problem), rec in self.runs.items():
            if rec.status == Status.UNSATISFIABLE:
                out[strategy].add(problem)
        return out

    @property
    def solved_any(self) -> set[str]:
        out: set[str] = set()
        for solved in self.solved_by.values():
            out |= solved
        return out

    def rows(self) -> list[StrategyRow]:
        solved_by = self.solved_by
        scores = compute_uscore(solved_by)
        total_solved = len(self.solved_any)
        solver_count = {p: sum(1 for s in self.strategies if p in solved_by[s])
                        for p in self.problems}
        rows = []
        for s in self.strategies:
            runs = [self.runs[(s, p)] for p in self.problems if (s, p) in self.runs]
            solved_runs = [r for r in runs if r.status == Status.UNSATISFIABLE]
            unique = sum(1 for p in solved_by[s] if solver_count[p] == 1)
            pct = Fraction(100 * len(solved_by[s]), total_solved) if total_solved else Fraction(0)
            incomplete = is_incomplete_strategy(s)
            rows.append(StrategyRow(
                strategy=s,
                solved=len(solved_by[s]),
                satisfiable=sum(1 for r in runs if r.status == Status.SATISFIABLE),
                unique=unique,
                u_score=scores[s],
                pct_total=pct,
                child_solved=_mean([r.avg_children for r in solved_runs]),
                child_all=_mean([r.avg_children for r in runs]),
                incomp_solved=_mean([r.pct_incomp for r in solved_runs]) if incomplete else None,
                incomp_all=_mean([r.pct_incomp for r in runs]) if incomplete else None,
            ))
        rows.sort(key=lambda r: (-r.solved, r.strategy))
        return rows


def _mean(values) -> Fraction | None:
    values = list(values)
    if not values:
        return None
    return sum(values, Fraction(0)) / len(values)


def compute_uscore(solved_by: dict[int, set[str]]) -> dict[int, Fraction]:
    """Per strategy, the sum over its solved problems of 1/#solvers.

    Exact rational arithmetic, so the scores sum to the number of problems
    solved by at least one strategy.
    """
    solvers: dict[str, int] = {}
    for solved in solved_by.values():
        for p in solved:
            solvers[p] = solvers.get(p, 0) + 1
    return {
        s: sum((Fraction(1, solvers[p]) for p in solved), Fraction(0))
        for s, solved in solved_by.items()
    }


def _run_one(args) -> tuple[int, str, dict]:
    strategy, path, cfg_kwargs = args
    problem = parse_problem_file(path)
    config = ProverConfig(selection=strategy, **cfg_kwargs)
    t0 = time.perf_counter()
    result, stats = saturate(problem.clauses, config)
    return strategy, problem.name, {
        "status": result.status.value,
        "time": time.perf_counter() - t0,
        "activations": stats.activations,
        "children": stats.children_generated,
        "selection_events": stats.selection_events,
        "violations": stats.incomplete_selections,
    }


def run_matrix(problems, strategies, time_limit: float = 10.0,
               max_activations: int | None = 300, jobs: int | None = None,
               flip: bool = False) -> MatrixResult:
    """Run every strategy against every problem file.

    ``problems`` is a directory or an iterable of file paths.  Each pair runs
    as its own prover instance; pairs run in parallel across processes when
    ``jobs`` exceeds one (default: CPU count).  Per-run crashes are recorded
    as errors, not solves.
    """
    paths = _problem_paths(problems)
    strategies = list(strategies)
    cfg_kwargs = {"time_limit": time_limit, "max_activations": max_activations, "flip": flip}
    tasks = [(s, str(p), cfg_kwargs) for s in strategies for p in paths]
    jobs = jobs or os.cpu_count() or 1

    results: dict[tuple[int, str], RunRecord] = {}
    errors: dict[tuple[int, str], str] = {}

    def record(task, payload):
        strategy, name, data = payload
        results[(strategy, name)] = RunRecord(
            strategy=strategy, problem=name, status=Status(data["status"]),
            time=data["time"], activations=data["activations"],
            children=data["children"], selection_events=data["selection_events"],
            violations=data["violations"])

    if jobs <= 1 or len(tasks) <= 1:
        for task in tasks:
            try:
                record(task, _run_one(task))
            except Exception as exc:  # per-run isolation
                errors[(task[0], Path(task[1]).stem)] = str(exc)
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_run_one, task): task for task in tasks}
            for future in concurrent.futures.as_completed(futures):
                task = futures[future]
                try:
                    record(task, future.result())
                except Exception as exc:
                    errors[(task[0], Path(task[1]).stem)] = str(exc)

    return MatrixResult(strategies=strategies, problems=[p.stem for p in paths],
                        runs=results, errors=errors)


def _problem_paths(problems) -> list[Path]:
    if isinstance(problems, (str, Path)):
        root = Path(problems)
        if not root.is_dir():
            raise ValueError(f"problem directory not found: {root}")
        paths = sorted(root.glob("*.p")) + sorted(root.glob("*.cnf"))
    else:
        paths = [Path(p) for p in problems]
    if not paths:
        raise ValueError("no problem files found")
    return paths


def bundled_problems_dir() -> Path:
    """Directory of the toy corpus shipped with the package."""
    return Path(resources.files("litsel.problems"))


# --- report rendering --------------------------------------------------------

_COLUMNS = ("selection", "#solved", "%total", "#unique", "u-score",
            "#child(s.o.)", "#child(all)", "%incomp(s.o.)", "%incomp(all)")


def _fmt(value: Fraction | None) -> str:
    return "" if value is None else f"{float(value):.1f}"


def _row_cells(row: StrategyRow) -> list[str]:
    return [
        str(row.strategy),
        str(row.solved),
        _fmt(row.pct_total),
        str(row.unique),
        _fmt(row.u_score),
        _fmt(row.child_solved),
        _fmt(row.child_all),
        _fmt(row.incomp_solved),
        _fmt(row.incomp_all),
    ]


def emit_table(result: MatrixResult, fmt: str = "text") -> str:
    """The strategy ranking, sorted by solved count then strategy number."""
    rows = result.rows()
    if fmt == "csv":
        lines = [",".join(_COLUMNS)]
        lines.extend(",".join(_row_cells(r)) for r in rows)
        return "\n".join(lines) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown table format {fmt!r}")
    cells = [list(_COLUMNS)] + [_row_cells(r) for r in rows]
    widths = [max(len(line[i]) for line in cells) for i in range(len(_COLUMNS))]
    sat_total = sum(1 for rec in result.runs.values() if rec.status == Status.SATISFIABLE)
    header = (f"% problems: {len(result.problems)}  strategies: {len(result.strategies)}  "
              f"solved by >=1: {len(result.solved_any)}  satisfiable verdicts: {sat_total}")
    lines = [header]
    for k, line in enumerate(cells):
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(line, widths)))
        if k == 0:
            lines.append("-" * len(lines[-1]))
    if result.errors:
        lines.append(f"% errors: {len(result.errors)}")
        for (strategy, problem), message in sorted(result.errors.items()):
            lines.append(f"%   {strategy} on {problem}: {message}")
    return "\n".join(lines) + "\n"
