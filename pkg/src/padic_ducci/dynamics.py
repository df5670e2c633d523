"""Ducci dynamics: the classical integer map and two p-adic iteration modes.

The p-adic operator comes with two step semantics that genuinely differ:

* ``NORM_MODE`` applies the componentwise p-adic absolute value after each
  matrix product, so every state after the first lies on the power-of-p
  grid.  This is the operator exactly as defined.
* ``LINEAR_MODE`` iterates ``x -> D x`` and only monitors componentwise
  norms.  This is the recursion the convergence arguments actually
  manipulate.

Both are implemented; orbit runs classify the outcome exactly (termination
at the zero vector, a repeated state with its minimal period, a norm
threshold crossing, or budget exhaustion) and the experiment harness
reports where the two semantics disagree.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .linalg import Matrix, Vector, mat_vec_mul, matrix
from .padic import INF, Valuation, format_rational, is_prime, padic_abs, parse_rational, require_prime, vp

NORM_MODE = "norm"
LINEAR_MODE = "linear"
MODES = (NORM_MODE, LINEAR_MODE)

TERMINATED = "terminated"
CYCLE = "cycle"
NORM_DIVERGED = "norm_diverged"
UNRESOLVED = "unresolved"

DEFAULT_DIVERGENCE_EXPONENT = 50


@dataclass(frozen=True)
class DucciInstance:
    """A prime, an n x n rational matrix, a length-n seed, and a mode."""

    p: int
    matrix: Matrix
    seed: Vector
    mode: str

    def __post_init__(self):
        require_prime(self.p)
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        n = len(self.matrix)
        if len(self.seed) != n:
            raise ValueError(
                f"dimension mismatch: matrix is {n}x{n}, seed has length {len(self.seed)}"
            )

    @property
    def n(self) -> int:
        return len(self.matrix)

    def with_mode(self, mode: str) -> "DucciInstance":
        return replace(self, mode=mode)


@dataclass(frozen=True)
class OrbitLimits:
    """Budgets for an orbit run.

    ``divergence_threshold`` of None means the per-instance default
    p ** DEFAULT_DIVERGENCE_EXPONENT.
    """

    max_steps: int = 10_000
    max_stored_states: int = 1_000_000
    divergence_threshold: Fraction | None = None

    def __post_init__(self):
        if self.max_steps < 1 or self.max_stored_states < 1:
            raise ValueError("orbit limits must be positive")
        if self.divergence_threshold is not None and self.divergence_threshold <= 0:
            raise ValueError("divergence threshold must be > 0")

    def resolve_threshold(self, p: int) -> Fraction:
        if self.divergence_threshold is not None:
            return Fraction(self.divergence_threshold)
        return Fraction(p) ** DEFAULT_DIVERGENCE_EXPONENT


@dataclass(frozen=True)
class OrbitReport:
    """Outcome of an orbit run.

    ``valuation_trace[k]`` holds (min, max) componentwise valuations of
    state k; ``steps`` counts iterations actually taken.  ``step`` is set
    for terminated/diverged outcomes, ``preperiod``/``period`` for cycles.
    """

    outcome: str
    steps: int
    states_visited: int
    valuation_trace: tuple[tuple[Valuation, Valuation], ...]
    step: int | None = None
    preperiod: int | None = None
    period: int | None = None


def classical_step(x) -> tuple[int, ...]:
    """Cyclically adjacent absolute differences of a length-4 integer tuple."""
    if len(x) != 4:
        raise ValueError(f"classical step needs length 4, got {len(x)}")
    return tuple(abs(x[i] - x[(i + 1) % 4]) for i in range(4))


def classical_matrix(n: int = 4) -> Matrix:
    """The circulant difference matrix with rows (.., 1, -1, ..)."""
    return matrix(
        [[1 if j == i else (-1 if j == (i + 1) % n else 0) for j in range(n)] for i in range(n)]
    )


def linear_step(inst: DucciInstance, x: Vector) -> Vector:
    """One bare multiplication by the instance matrix."""
    return mat_vec_mul(inst.matrix, x)


def norm_step(inst: DucciInstance, x: Vector) -> Vector:
    """Matrix product followed by the componentwise p-adic absolute value."""
    return tuple(padic_abs(c, inst.p) for c in mat_vec_mul(inst.matrix, x))


def _min_max_valuations(x: Vector, p: int) -> tuple[Valuation, Valuation]:
    vals = [vp(c, p) for c in x]
    return min(vals), max(vals)


def _orbit_engine(step_fn, seed, *, max_steps, max_stored_states, threshold, p, guard_convergence):
    """Shared orbit loop: exact cycle detection plus norm monitoring.

    With ``p`` None (the classical map) no norms are tracked.  With
    ``guard_convergence`` the run stops early once every componentwise
    norm has dropped below 1/threshold while still shrinking: exact zero
    is unreachable for nonsingular contracting systems and the entries
    would otherwise grow without bound.
    """
    state = tuple(seed)
    seen: dict[tuple, int] = {}
    trace: list[tuple[Valuation, Valuation]] = []
    k = 0
    prev_min: Valuation | None = None
    while True:
        if p is not None:
            mn, mx = _min_max_valuations(state, p)
            trace.append((mn, mx))
        visited = len(seen) + (0 if state in seen else 1)
        if all(c == 0 for c in state):
            return OrbitReport(TERMINATED, k, visited, tuple(trace), step=k)
        first = seen.get(state)
        if first is not None:
            # Earlier states are pairwise distinct, so k - first is the
            # minimal period and first the minimal preperiod.
            return OrbitReport(CYCLE, k, visited, tuple(trace), preperiod=first, period=k - first)
        if p is not None:
            max_norm = Fraction(p) ** (-mn)  # mn is finite: state is nonzero
            if max_norm > threshold:
                return OrbitReport(NORM_DIVERGED, k, visited, tuple(trace), step=k)
            if (
                guard_convergence
                and prev_min is not None
                and mn > prev_min
                and max_norm * threshold < 1
            ):
                return OrbitReport(UNRESOLVED, k, visited, tuple(trace))
            prev_min = mn
        if k >= max_steps or len(seen) >= max_stored_states:
            return OrbitReport(UNRESOLVED, k, visited, tuple(trace))
        seen[state] = k
        state = step_fn(state)
        k += 1


def run_orbit(inst: DucciInstance, limits: OrbitLimits | None = None) -> OrbitReport:
    """Iterate the instance's step function to a classified outcome.

    Stops at the first of: zero vector (terminated), exact state
    repetition (cycle with minimal preperiod/period), componentwise norm
    above the divergence threshold (norm_diverged), or exhausted budgets
    (unresolved).  Deterministic in its inputs.
    """
    limits = limits or OrbitLimits()
    threshold = limits.resolve_threshold(inst.p)
    if inst.mode == NORM_MODE:
        step = lambda x: norm_step(inst, x)
    else:
        step = lambda x: linear_step(inst, x)
    return _orbit_engine(
        step,
        inst.seed,
        max_steps=limits.max_steps,
        max_stored_states=limits.max_stored_states,
        threshold=threshold,
        p=inst.p,
        guard_convergence=inst.mode == LINEAR_MODE,
    )


def classical_orbit(seed, limits: OrbitLimits | None = None) -> OrbitReport:
    """Run the classical integer map through the same orbit engine."""
    limits = limits or OrbitLimits()
    seed = tuple(int(c) for c in seed)
    if len(seed) != 4:
        raise ValueError(f"classical orbit needs length 4, got {len(seed)}")
    return _orbit_engine(
        classical_step,
        seed,
        max_steps=limits.max_steps,
        max_stored_states=limits.max_stored_states,
        threshold=None,
        p=None,
        guard_convergence=False,
    )


def classical_trajectory(seed, max_steps: int):
    """Yield successive classical states after each step (seed excluded)."""
    state = tuple(int(c) for c in seed)
    for _ in range(max_steps):
        state = classical_step(state)
        yield state
        if all(c == 0 for c in state):
            return


# ---------------------------------------------------------------------------
# instance / report serialization


def instance_to_dict(inst: DucciInstance) -> dict:
    return {
        "p": inst.p,
        "mode": inst.mode,
        "matrix": [[format_rational(e) for e in row] for row in inst.matrix],
        "seed": [format_rational(e) for e in inst.seed],
    }


def instance_from_dict(data: dict) -> DucciInstance:
    """Parse and validate the instance schema, naming the offending field."""
    if not isinstance(data, dict):
        raise ValueError("instance: expected a JSON object")
    for key in ("p", "mode", "matrix", "seed"):
        if key not in data:
            raise ValueError(f"{key}: missing field")
    p = data["p"]
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise ValueError(f"p: must be prime, got {p!r}")
    mode = data["mode"]
    if mode not in MODES:
        raise ValueError(f"mode: must be 'norm' or 'linear', got {mode!r}")
    raw_matrix = data["matrix"]
    if not isinstance(raw_matrix, list) or not raw_matrix:
        raise ValueError("matrix: expected a non-empty array of rows")
    n = len(raw_matrix)
    rows = []
    for i, row in enumerate(raw_matrix):
        if not isinstance(row, list) or len(row) != n:
            raise ValueError(f"matrix[{i}]: expected a row of length {n}")
        entries = []
        for j, cell in enumerate(row):
            try:
                entries.append(parse_rational(str(cell)))
            except ValueError as exc:
                raise ValueError(f"matrix[{i}][{j}]: {exc}") from None
        rows.append(tuple(entries))
    raw_seed = data["seed"]
    if not isinstance(raw_seed, list):
        raise ValueError("seed: expected an array")
    if len(raw_seed) != n:
        raise ValueError(f"seed: dimension mismatch (matrix is {n}x{n}, seed has length {len(raw_seed)})")
    seed = []
    for j, cell in enumerate(raw_seed):
        try:
            seed.append(parse_rational(str(cell)))
        except ValueError as exc:
            raise ValueError(f"seed[{j}]: {exc}") from None
    return DucciInstance(p=p, matrix=tuple(rows), seed=tuple(seed), mode=mode)


def _valuation_json(v: Valuation):
    return "inf" if v == INF else v


def report_to_dict(report: OrbitReport) -> dict:
    if report.outcome == TERMINATED:
        outcome = {"kind": TERMINATED, "step": report.step}
    elif report.outcome == CYCLE:
        outcome = {"kind": CYCLE, "preperiod": report.preperiod, "period": report.period}
    elif report.outcome == NORM_DIVERGED:
        outcome = {"kind": NORM_DIVERGED, "step": report.step}
    else:
        outcome = {"kind": UNRESOLVED, "steps_run": report.steps}
    return {
        "outcome": outcome,
        "preperiod": report.preperiod,
        "period": report.period,
        "steps": report.steps,
        "valuation_trace": [[_valuation_json(mn), _valuation_json(mx)] for mn, mx in report.valuation_trace],
    }
