"""Classical solvers for QUBO models and a side-by-side comparison harness.

All solvers share one result shape and one determinism contract: every
random decision flows from the explicit seed, restart ``r`` derives its own
stream from ``seed ^ r``, and two runs with equal inputs return identical
results.  Restarts never share state, so a parallel driver could fan them
out without changing any answer; the implementations here run them in
sequence, which is the reference order.

Ties between equally good assignments are broken by the smaller assignment
integer, reading bit i of ``x`` as the coefficient of 2**i.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from ._validation import as_binary_vector
from .constraints import suggest_penalty
from .errors import SolverGuardError
from .model import QuboModel, energy

# Hard cap for exhaustive enumeration: 2**25 assignments is desk-scale,
# anything beyond is refused rather than silently attempted.
EXHAUSTIVE_MAX_VARIABLES = 25

_ENUM_CHUNK = 1 << 16


def assignment_value(x) -> int:
    """Read an assignment as an integer, bit i weighted by 2**i."""
    xv = as_binary_vector(x)
    return int(xv @ (np.int64(1) << np.arange(xv.size, dtype=np.int64)))


@dataclass(frozen=True)
class SolveParams:
    """Knobs shared by the stochastic solvers.

    ``t_initial`` of ``None`` means "derive from the model": the same
    coefficient-mass scale :func:`~qubokit.constraints.suggest_penalty`
    uses, which upper-bounds any single-flip energy change.
    """

    seed: int = 0
    sweeps: int = 1000
    restarts: int = 10
    t_initial: float | None = None
    t_final: float = 1e-3

    def __post_init__(self) -> None:
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "sweeps", int(self.sweeps))
        object.__setattr__(self, "restarts", int(self.restarts))
        object.__setattr__(self, "t_final", float(self.t_final))
        if self.t_initial is not None:
            object.__setattr__(self, "t_initial", float(self.t_initial))
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if self.sweeps < 1:
            raise ValueError("sweeps must be at least 1")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.t_final <= 0.0:
            raise ValueError("t_final must be positive")
        if self.t_initial is not None:
            if self.t_initial <= 0.0:
                raise ValueError("t_initial must be positive")
            if not self.t_final < self.t_initial:
                raise ValueError("t_final must be below t_initial")

    def resolve_t_initial(self, model: QuboModel) -> float:
        if self.t_initial is not None:
            return float(self.t_initial)
        t0 = suggest_penalty(model)
        return t0 if t0 > self.t_final else self.t_final * 10.0


@dataclass(frozen=True, eq=False)
class SolveResult:
    """Outcome of one solver run.

    ``samples`` holds one (assignment, energy) pair per restart for the
    stochastic solvers and the single optimum for exhaustive search;
    ``best_energy`` never exceeds any sampled energy and always equals
    ``energy(model, best)`` recomputed from scratch.  The two timing fields
    are wall-clock measurements and are excluded from serialization so that
    persisted artifacts stay byte-identical across reruns.
    """

    solver: str
    best: np.ndarray
    best_energy: float
    selected_count: int
    samples: tuple = ()
    prep_seconds: float = 0.0
    solve_seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "solver": self.solver,
            "best": self.best.tolist(),
            "best_energy": self.best_energy,
            "selected_count": self.selected_count,
            "samples": [
                {"assignment": np.asarray(a).tolist(), "energy": e} for a, e in self.samples
            ],
        }


def _result(model: QuboModel, solver: str, best_x: np.ndarray, samples, prep: float, t0: float) -> SolveResult:
    best_x = best_x.astype(np.int64)
    best_x.setflags(write=False)
    return SolveResult(
        solver=solver,
        best=best_x,
        best_energy=energy(model, best_x),
        selected_count=int(best_x.sum()),
        samples=tuple(samples),
        prep_seconds=prep,
        solve_seconds=time.perf_counter() - t0,
    )


def _enumerate_bits(values: np.ndarray, n: int) -> np.ndarray:
    return ((values[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(float)


def solve_exhaustive(model: QuboModel, params: SolveParams | None = None) -> SolveResult:
    """Certify the global optimum by enumerating all 2**n assignments.

    Refuses models with more than ``EXHAUSTIVE_MAX_VARIABLES`` variables.
    ``params`` is accepted for registry uniformity and ignored.
    """
    n = model.n
    if n > EXHAUSTIVE_MAX_VARIABLES:
        raise SolverGuardError(
            f"exhaustive search supports at most {EXHAUSTIVE_MAX_VARIABLES} variables, got {n}"
        )
    t0 = time.perf_counter()
    b = model.linear
    q = model.quadratic
    prep = time.perf_counter() - t0

    best_energy = math.inf
    best_value = -1
    total = 1 << n
    for start in range(0, total, _ENUM_CHUNK):
        values = np.arange(start, min(start + _ENUM_CHUNK, total), dtype=np.int64)
        bits = _enumerate_bits(values, n)
        energies = model.offset + bits @ b + np.einsum("ij,ij->i", bits @ q, bits)
        idx = int(np.argmin(energies))  # first minimum, i.e. lowest assignment integer
        if energies[idx] < best_energy:
            best_energy = float(energies[idx])
            best_value = int(values[idx])
    best_x = ((best_value >> np.arange(n, dtype=np.int64)) & 1).astype(np.int64)
    best_x.setflags(write=False)
    exact = energy(model, best_x)
    return SolveResult(
        solver="exhaustive",
        best=best_x,
        best_energy=exact,
        selected_count=int(best_x.sum()),
        samples=((best_x, exact),),
        prep_seconds=prep,
        solve_seconds=time.perf_counter() - t0,
    )


def flip_delta(model: QuboModel, x, k: int) -> float:
    """Energy change from flipping bit ``k`` of ``x``, in closed form.

    Because x_i^2 = x_i, flipping bit k by d = 1 - 2 x_k changes the energy
    by d * (b_k + q_kk + sum_{j != k} (q_kj + q_jk) x_j).  The annealer
    maintains the bracketed term incrementally; this standalone version is
    the reference the incremental bookkeeping is tested against.
    """
    xv = as_binary_vector(x, model.n).astype(float)
    if not 0 <= k < model.n:
        raise ValueError(f"bit index {k} out of range for n={model.n}")
    q = model.quadratic
    coupled = float(q[k, :] @ xv + q[:, k] @ xv - 2.0 * q[k, k] * xv[k])
    return (1.0 - 2.0 * xv[k]) * (model.linear[k] + q[k, k] + coupled)


def _temperature_schedule(t_initial: float, t_final: float, sweeps: int) -> np.ndarray:
    if sweeps == 1:
        return np.array([t_initial])
    return t_initial * (t_final / t_initial) ** (np.arange(sweeps) / (sweeps - 1))


def solve_simulated_annealing(model: QuboModel, params: SolveParams | None = None) -> SolveResult:
    """Single-bit-flip Metropolis annealer with a geometric cooling schedule.

    Each restart starts from its own random assignment and performs
    ``sweeps`` full passes; within a pass every variable is proposed once in
    a random order.  Energies are tracked through incremental flip deltas
    (see :func:`flip_delta`); the reported optimum is re-evaluated from
    scratch, so drift in the running sum can never leak into the result.
    The walk only ever consults energy differences, which is why symmetric
    and upper-triangular rewrites of the same model follow identical
    trajectories under the same seed.
    """
    params = params or SolveParams()
    t0 = time.perf_counter()
    n = model.n
    t_initial = params.resolve_t_initial(model)
    if not params.t_final < t_initial:
        raise ValueError("t_final must be below the resolved t_initial")
    temperatures = _temperature_schedule(t_initial, params.t_final, params.sweeps)

    q = model.quadratic
    coupling = q + q.T
    np.fill_diagonal(coupling, 0.0)
    base = (model.linear + np.diag(q)).tolist()
    coupling_rows = [row.tolist() for row in coupling]
    prep = time.perf_counter() - t0

    samples = []
    best_x: np.ndarray | None = None
    best_energy = math.inf
    best_value = -1
    for restart in range(params.restarts):
        rng = np.random.default_rng(params.seed ^ restart)
        x = rng.integers(0, 2, size=n).tolist()
        local = [base[k] + sum(c * xi for c, xi in zip(coupling_rows[k], x)) for k in range(n)]
        current = 0.0  # energy relative to the starting assignment
        incumbent = 0.0
        incumbent_x = list(x)
        incumbent_value = assignment_value(np.array(x))
        for temperature in temperatures:
            order = rng.permutation(n)
            uniforms = rng.random(n)
            for step, k in enumerate(order):
                k = int(k)
                delta = (1.0 - 2.0 * x[k]) * local[k]
                if delta <= 0.0 or uniforms[step] < math.exp(-delta / temperature):
                    d = 1 - 2 * x[k]
                    x[k] += d
                    current += delta
                    row = coupling_rows[k]
                    for j in range(n):
                        local[j] += row[j] * d
                    if current < incumbent:
                        incumbent = current
                        incumbent_x = list(x)
                        incumbent_value = -1
                    elif current == incumbent:
                        value = assignment_value(np.array(x))
                        if incumbent_value < 0:
                            incumbent_value = assignment_value(np.array(incumbent_x))
                        if value < incumbent_value:
                            incumbent_x = list(x)
                            incumbent_value = value
        restart_x = np.array(incumbent_x, dtype=np.int64)
        restart_energy = energy(model, restart_x)
        restart_x.setflags(write=False)
        samples.append((restart_x, restart_energy))
        restart_value = assignment_value(restart_x)
        if restart_energy < best_energy or (
            restart_energy == best_energy and restart_value < best_value
        ):
            best_energy = restart_energy
            best_value = restart_value
            best_x = restart_x
    assert best_x is not None
    return _result(model, "simulated_annealing", best_x, samples, prep, t0)


def solve_random(model: QuboModel, params: SolveParams | None = None) -> SolveResult:
    """Best of ``sweeps * restarts`` uniform random assignments."""
    params = params or SolveParams()
    t0 = time.perf_counter()
    n = model.n
    b = model.linear
    q = model.quadratic
    prep = time.perf_counter() - t0

    samples = []
    best_x: np.ndarray | None = None
    best_energy = math.inf
    best_value = -1
    for restart in range(params.restarts):
        rng = np.random.default_rng(params.seed ^ restart)
        bits = rng.integers(0, 2, size=(params.sweeps, n)).astype(float)
        energies = model.offset + bits @ b + np.einsum("ij,ij->i", bits @ q, bits)
        low = float(energies.min())
        tied = np.flatnonzero(energies == low)
        values = bits[tied].astype(np.int64) @ (np.int64(1) << np.arange(n, dtype=np.int64))
        pick = int(tied[int(np.argmin(values))])
        restart_x = bits[pick].astype(np.int64)
        restart_energy = energy(model, restart_x)
        restart_x.setflags(write=False)
        samples.append((restart_x, restart_energy))
        restart_value = int(values.min())
        if restart_energy < best_energy or (
            restart_energy == best_energy and restart_value < best_value
        ):
            best_energy = restart_energy
            best_value = restart_value
            best_x = restart_x
    assert best_x is not None
    return _result(model, "random", best_x, samples, prep, t0)


SOLVERS: dict[str, object] = {
    "exhaustive": solve_exhaustive,
    "simulated_annealing": solve_simulated_annealing,
    "random": solve_random,
}


def register_solver(name: str, fn) -> None:
    """Add a solver to the registry; it must accept ``(model, params)``."""
    SOLVERS[name] = fn


def solve(model: QuboModel, solver: str = "simulated_annealing", params: SolveParams | None = None) -> SolveResult:
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}; registered: {sorted(SOLVERS)}")
    return SOLVERS[solver](model, params)


@dataclass(frozen=True, eq=False)
class ComparisonRow:
    solver: str
    result: SolveResult | None
    skipped: bool = False
    reason: str = ""
    gap: float | None = None


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    rows: tuple[ComparisonRow, ...]
    best_known: float

    def to_dict(self) -> dict:
        return {
            "best_known": self.best_known,
            "rows": [
                {
                    "solver": row.solver,
                    "skipped": row.skipped,
                    "reason": row.reason,
                    "gap_to_best_known": row.gap,
                    **({} if row.result is None else row.result.to_dict()),
                }
                for row in self.rows
            ],
        }


def compare_solvers(model: QuboModel, params: SolveParams | None = None, include=None) -> ComparisonReport:
    """Run every registered solver on one model and report gaps to the best.

    Exhaustive search joins only when the model is within its size guard;
    beyond that its row is marked skipped rather than failing the run.
    """
    names = list(include) if include is not None else list(SOLVERS)
    rows: list[ComparisonRow] = []
    for name in names:
        if name == "exhaustive" and model.n > EXHAUSTIVE_MAX_VARIABLES:
            rows.append(
                ComparisonRow(
                    solver=name,
                    result=None,
                    skipped=True,
                    reason=f"n={model.n} exceeds the {EXHAUSTIVE_MAX_VARIABLES}-variable guard",
                )
            )
            continue
        rows.append(ComparisonRow(solver=name, result=solve(model, name, params)))
    finished = [row.result.best_energy for row in rows if row.result is not None]
    if not finished:
        raise ValueError("no solver produced a result")
    best_known = min(finished)
    rows = [
        ComparisonRow(
            solver=row.solver,
            result=row.result,
            skipped=row.skipped,
            reason=row.reason,
            gap=None if row.result is None else row.result.best_energy - best_known,
        )
        for row in rows
    ]
    return ComparisonReport(tuple(rows), best_known)


_TIMING_LABELS = ("Preparation time", "Optimization time", "Total runtime")


def render_comparison_table(report: ComparisonReport, include_timing: bool = True) -> str:
    """Aligned text table, solvers as columns and quantities as rows.

    With ``include_timing=False`` the wall-clock rows render as "-" so the
    persisted table stays identical across reruns.
    """
    headers = [""] + [row.solver for row in report.rows]

    def fmt(row: ComparisonRow, quantity: str) -> str:
        if row.result is None:
            return "skipped"
        result = row.result
        if quantity == "Preparation time":
            return f"{result.prep_seconds:.3f} s" if include_timing else "-"
        if quantity == "Optimization time":
            return f"{result.solve_seconds:.3f} s" if include_timing else "-"
        if quantity == "Total runtime":
            total = result.prep_seconds + result.solve_seconds
            return f"{total:.3f} s" if include_timing else "-"
        if quantity == "Best value":
            return f"{result.best_energy:.6f}"
        if quantity == "# of features found":
            return str(result.selected_count)
        if quantity == "Gap to best known":
            return f"{row.gap:.6f}"
        raise ValueError(quantity)

    labels = list(_TIMING_LABELS) + ["Best value", "# of features found", "Gap to best known"]
    body = [[label] + [fmt(row, label) for row in report.rows] for label in labels]
    widths = [max(len(r[c]) for r in [headers] + body) for c in range(len(headers))]
    lines = []
    for record in [headers] + body:
        lines.append("  ".join(cell.ljust(width) for cell, width in zip(record, widths)).rstrip())
    return "\n".join(lines) + "\n"
