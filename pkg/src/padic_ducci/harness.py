"""Seeded instance generation, prediction-vs-observation sweeps, reporting.

Every random draw is keyed by (rng_seed, profile index, instance index)
through a hash-derived child generator, so the sweep is reproducible and
order-independent: running with one worker or many produces byte-identical
reports.  A verdict of REFUTED is reserved for observations that logically
contradict the prediction; running out of budget is always UNRESOLVED.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .dynamics import (
    CYCLE,
    LINEAR_MODE,
    MODES,
    NORM_DIVERGED,
    NORM_MODE,
    TERMINATED,
    UNRESOLVED,
    DucciInstance,
    OrbitLimits,
    OrbitReport,
    instance_to_dict,
    report_to_dict,
    run_orbit,
)
from .padic import INF, format_rational, parse_rational, require_prime, vp
from .spectral import (
    CLAIM_NEVER_ZERO,
    CLAIM_NEVER_ZERO_PERIODIC,
    CLAIM_TERMINATES,
    CLAIM_UNBOUNDED,
    Prediction,
    predict_behavior,
    prediction_to_dict,
)

CONTRACTIVE_ENTRIES = "contractive_entries"
UNIT_TRIANGULAR = "unit_triangular"
PERMUTATION = "permutation"
DIAGONAL_RANDOM = "diagonal_random"
EXPANSIVE_DIAGONAL = "expansive_diagonal"
DENSE_RANDOM = "dense_random"
PROFILE_KINDS = (
    CONTRACTIVE_ENTRIES,
    UNIT_TRIANGULAR,
    PERMUTATION,
    DIAGONAL_RANDOM,
    EXPANSIVE_DIAGONAL,
    DENSE_RANDOM,
)

CONFIRMED = "CONFIRMED"
REFUTED = "REFUTED"
VERDICT_UNRESOLVED = "UNRESOLVED"


@dataclass(frozen=True)
class GeneratorProfile:
    kind: str
    n: int
    p: int
    value_bound: int = 9

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("profile dimension must be >= 1")
        require_prime(self.p)
        if self.value_bound < 1:
            raise ValueError("value_bound must be >= 1")


@dataclass(frozen=True)
class SweepConfig:
    profiles: tuple[GeneratorProfile, ...]
    instances_per_profile: int
    modes: tuple[str, ...] = (LINEAR_MODE, NORM_MODE)
    limits: OrbitLimits = OrbitLimits()
    rng_seed: int = 0

    def __post_init__(self):
        if self.instances_per_profile < 0:
            raise ValueError("instances_per_profile must be >= 0")
        for mode in self.modes:
            if mode not in MODES:
                raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class InstancePrediction:
    instance_id: str
    profile: str
    kind: str
    mode: str
    p: int
    n: int
    divergence_threshold: Fraction
    prediction: Prediction


@dataclass(frozen=True)
class InstanceObservation:
    instance_id: str
    mode: str
    report: OrbitReport


@dataclass(frozen=True)
class DiscrepancyRecord:
    instance_id: str
    profile: str
    kind: str
    mode: str
    p: int
    n: int
    prediction: Prediction
    report: OrbitReport
    verdict: str


@dataclass(frozen=True)
class SweepResult:
    records: tuple[DiscrepancyRecord, ...]
    summary: tuple[tuple[str, str, int, int, int], ...]
    instances: tuple[tuple[str, DucciInstance], ...]


def child_rng(master_seed: int, *path: int) -> random.Random:
    """Independent generator keyed by the master seed and an index path."""
    label = ":".join(str(x) for x in (master_seed, *path))
    digest = hashlib.sha256(label.encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _random_fraction(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _random_nonzero_fraction(rng: random.Random, bound: int) -> Fraction:
    while True:
        f = _random_fraction(rng, bound)
        if f != 0:
            return f


def _unit_part(f: Fraction, p: int) -> Fraction:
    """Strip all powers of p: the result has valuation exactly zero."""
    return f * Fraction(p) ** (-vp(f, p))


def gen_instance(profile: GeneratorProfile, rng: random.Random, mode: str = LINEAR_MODE) -> DucciInstance:
    """Deterministically generate an instance satisfying the profile predicate."""
    n, p, bound = profile.n, profile.p, profile.value_bound
    kind = profile.kind
    if kind == CONTRACTIVE_ENTRIES:
        rows = []
        for _ in range(n):
            row = []
            for _ in range(n):
                e = _random_fraction(rng, bound)
                if e != 0 and vp(e, p) < 1:
                    e *= Fraction(p) ** (1 - vp(e, p))
                row.append(e)
            rows.append(tuple(row))
        mat = tuple(rows)
    elif kind == UNIT_TRIANGULAR:
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                if j < i:
                    row.append(Fraction(0))
                elif j == i:
                    row.append(_unit_part(_random_nonzero_fraction(rng, bound), p))
                else:
                    row.append(_random_fraction(rng, bound))
            rows.append(tuple(row))
        mat = tuple(rows)
    elif kind == PERMUTATION:
        perm = list(range(n))
        rng.shuffle(perm)
        mat = tuple(
            tuple(Fraction(int(j == perm[i])) for j in range(n)) for i in range(n)
        )
    elif kind == DIAGONAL_RANDOM:
        mat = tuple(
            tuple(
                _random_nonzero_fraction(rng, bound) if i == j else Fraction(0)
                for j in range(n)
            )
            for i in range(n)
        )
    elif kind == EXPANSIVE_DIAGONAL:
        exp_bound = max(1, min(bound, 6))
        mat = tuple(
            tuple(
                _unit_part(_random_nonzero_fraction(rng, bound), p)
                * Fraction(1, p ** rng.randint(1, exp_bound))
                if i == j
                else Fraction(0)
                for j in range(n)
            )
            for i in range(n)
        )
    else:
        mat = tuple(tuple(_random_fraction(rng, bound) for _ in range(n)) for _ in range(n))
    while True:
        seed = tuple(_random_fraction(rng, bound) for _ in range(n))
        if any(c != 0 for c in seed):
            break
    inst = DucciInstance(p=p, matrix=mat, seed=seed, mode=mode)
    if not profile_predicate(profile, inst):
        raise AssertionError(f"generated instance violates profile {kind}")
    return inst


def profile_predicate(profile: GeneratorProfile, inst: DucciInstance) -> bool:
    """The defining predicate each generated instance must satisfy."""
    mat, p, n = inst.matrix, inst.p, inst.n
    if inst.n != profile.n or inst.p != profile.p:
        return False
    if all(c == 0 for c in inst.seed):
        return False
    kind = profile.kind
    if kind == CONTRACTIVE_ENTRIES:
        return all(vp(e, p) >= 1 for row in mat for e in row)
    if kind == UNIT_TRIANGULAR:
        lower_zero = all(mat[i][j] == 0 for i in range(n) for j in range(i))
        return lower_zero and all(vp(mat[i][i], p) == 0 for i in range(n))
    if kind == PERMUTATION:
        zero_one = all(e in (0, 1) for row in mat for e in row)
        rows_ok = all(sum(row) == 1 for row in mat)
        cols_ok = all(sum(col) == 1 for col in zip(*mat))
        return zero_one and rows_ok and cols_ok
    if kind == DIAGONAL_RANDOM:
        diag = all(mat[i][j] == 0 for i in range(n) for j in range(n) if i != j)
        return diag and all(mat[i][i] != 0 for i in range(n))
    if kind == EXPANSIVE_DIAGONAL:
        diag = all(mat[i][j] == 0 for i in range(n) for j in range(n) if i != j)
        return diag and all(vp(mat[i][i], p) < 0 for i in range(n))
    return True


# ---------------------------------------------------------------------------
# prediction vs observation


def _norm_settled_below(report: OrbitReport, p: int, threshold: Fraction) -> bool:
    """Did the run end with every componentwise norm below 1/threshold?"""
    if not report.valuation_trace:
        return False
    mn = report.valuation_trace[-1][0]
    if mn == INF:
        return True
    return Fraction(p) ** (-mn) * threshold < 1


def compare_prediction(pred: InstancePrediction, obs: InstanceObservation) -> DiscrepancyRecord:
    """Verdict per the comparison table.

    CONFIRMED when the observation matches the claim; REFUTED only on a
    logical contradiction (e.g. a nonzero cycle against a termination
    claim); everything else, including exhausted budgets and mere
    threshold crossings against qualitative claims, stays UNRESOLVED.
    """
    if pred.instance_id != obs.instance_id:
        raise ValueError(
            f"mismatched instance ids: {pred.instance_id!r} vs {obs.instance_id!r}"
        )
    if pred.mode != obs.mode:
        raise ValueError(f"mismatched modes: {pred.mode!r} vs {obs.mode!r}")
    verdict = _verdict(pred.prediction, obs.report, pred.p, pred.divergence_threshold)
    return DiscrepancyRecord(
        instance_id=pred.instance_id,
        profile=pred.profile,
        kind=pred.kind,
        mode=pred.mode,
        p=pred.p,
        n=pred.n,
        prediction=pred.prediction,
        report=obs.report,
        verdict=verdict,
    )


def _verdict(prediction: Prediction, report: OrbitReport, p: int, threshold: Fraction) -> str:
    claim = prediction.claim
    outcome = report.outcome
    if claim == CLAIM_TERMINATES:
        if outcome == TERMINATED:
            return CONFIRMED
        if outcome == CYCLE:
            return REFUTED
        if outcome == UNRESOLVED and _norm_settled_below(report, p, threshold):
            # Exact zero is unreachable for nonsingular systems; norms
            # settling below 1/threshold is the observable form of
            # convergence to zero.
            return CONFIRMED
        return VERDICT_UNRESOLVED
    if claim in (CLAIM_NEVER_ZERO, CLAIM_NEVER_ZERO_PERIODIC):
        if outcome == TERMINATED:
            # Termination at step 0 means the seed itself was zero, which
            # the claim does not cover.
            return VERDICT_UNRESOLVED if report.step == 0 else REFUTED
        if outcome == CYCLE:
            if claim == CLAIM_NEVER_ZERO:
                return CONFIRMED
            m = prediction.period_divides
            return CONFIRMED if m is not None and m % report.period == 0 else REFUTED
        return VERDICT_UNRESOLVED
    if claim == CLAIM_UNBOUNDED:
        if outcome == NORM_DIVERGED:
            return CONFIRMED
        if outcome in (TERMINATED, CYCLE):
            return REFUTED
        return VERDICT_UNRESOLVED
    return VERDICT_UNRESOLVED


def _run_one(inst: DucciInstance, limits: OrbitLimits) -> OrbitReport:
    return run_orbit(inst, limits)


def run_sweep(config: SweepConfig, workers: int = 1) -> SweepResult:
    """Generate, predict, run and compare every (instance, mode) pair.

    Results are merged in (profile, instance, mode) order regardless of
    worker scheduling, so reports are deterministic.
    """
    tasks = []
    instances = []
    for pi, profile in enumerate(config.profiles):
        for ii in range(config.instances_per_profile):
            rng = child_rng(config.rng_seed, pi, ii)
            base = gen_instance(profile, rng)
            instance_id = f"{pi:02d}-{profile.kind}-{ii:04d}"
            instances.append((instance_id, base))
            prediction = predict_behavior(base.matrix, base.p)
            threshold = config.limits.resolve_threshold(base.p)
            for mode in config.modes:
                inst = base.with_mode(mode)
                pred = InstancePrediction(
                    instance_id=instance_id,
                    profile=f"{pi:02d}-{profile.kind}",
                    kind=profile.kind,
                    mode=mode,
                    p=profile.p,
                    n=profile.n,
                    divergence_threshold=threshold,
                    prediction=prediction,
                )
                tasks.append((pred, inst))
    limits = config.limits
    if workers > 1 and tasks:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda t: _run_one(t[1], limits), tasks))
    else:
        reports = [_run_one(inst, limits) for _, inst in tasks]
    records = []
    for (pred, inst), report in zip(tasks, reports):
        obs = InstanceObservation(instance_id=pred.instance_id, mode=pred.mode, report=report)
        records.append(compare_prediction(pred, obs))
    return SweepResult(
        records=tuple(records),
        summary=_summarize(config, records),
        instances=tuple(instances),
    )


def _summarize(config: SweepConfig, records) -> tuple:
    counts: dict[tuple[str, str], list[int]] = {}
    order = []
    for pi, profile in enumerate(config.profiles):
        for mode in config.modes:
            key = (f"{pi:02d}-{profile.kind}", mode)
            counts[key] = [0, 0, 0]
            order.append(key)
    for rec in records:
        row = counts[(rec.profile, rec.mode)]
        if rec.verdict == CONFIRMED:
            row[0] += 1
        elif rec.verdict == REFUTED:
            row[1] += 1
        else:
            row[2] += 1
    return tuple((prof, mode, *counts[(prof, mode)]) for prof, mode in order)


# ---------------------------------------------------------------------------
# report files


def record_to_dict(rec: DiscrepancyRecord) -> dict:
    return {
        "instance": rec.instance_id,
        "profile": rec.profile,
        "kind": rec.kind,
        "mode": rec.mode,
        "p": rec.p,
        "n": rec.n,
        "prediction": prediction_to_dict(rec.prediction),
        "observed": report_to_dict(rec.report),
        "verdict": rec.verdict,
    }


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def render_records_jsonl(result: SweepResult) -> str:
    return "".join(_dumps(record_to_dict(rec)) + "\n" for rec in result.records)


def render_instances_jsonl(result: SweepResult) -> str:
    return "".join(
        _dumps({"instance": iid, **instance_to_dict(inst)}) + "\n"
        for iid, inst in result.instances
    )


def render_summary_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["profile", "mode", "confirmed", "refuted", "unresolved"])
    for row in result.summary:
        writer.writerow(row)
    return buf.getvalue()


def write_sweep_report(result: SweepResult, out_dir) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "records": out / "records.jsonl",
        "summary": out / "summary.csv",
        "instances": out / "instances.jsonl",
    }
    paths["records"].write_text(render_records_jsonl(result))
    paths["summary"].write_text(render_summary_csv(result))
    paths["instances"].write_text(render_instances_jsonl(result))
    return paths


def config_from_dict(data: dict) -> SweepConfig:
    """Parse the sweep-config schema, naming offending fields."""
    if not isinstance(data, dict):
        raise ValueError("config: expected a JSON object")
    raw_profiles = data.get("profiles")
    if not isinstance(raw_profiles, list):
        raise ValueError("profiles: expected an array")
    profiles = []
    for i, raw in enumerate(raw_profiles):
        if not isinstance(raw, dict):
            raise ValueError(f"profiles[{i}]: expected an object")
        try:
            profiles.append(
                GeneratorProfile(
                    kind=raw.get("kind"),
                    n=raw.get("n"),
                    p=raw.get("p"),
                    value_bound=raw.get("value_bound", 9),
                )
            )
        except (TypeError, ValueError) as exc:
            raise ValueError(f"profiles[{i}]: {exc}") from None
    count = data.get("instances_per_profile")
    if not isinstance(count, int) or count < 0:
        raise ValueError(f"instances_per_profile: expected a non-negative integer, got {count!r}")
    modes = tuple(data.get("modes", list(MODES)))
    raw_limits = data.get("limits")
    if raw_limits is None:
        limits = OrbitLimits()
    else:
        threshold = raw_limits.get("divergence_threshold")
        limits = OrbitLimits(
            max_steps=raw_limits.get("max_steps", 10_000),
            max_stored_states=raw_limits.get("max_stored_states", 1_000_000),
            divergence_threshold=None if threshold is None else parse_rational(str(threshold)),
        )
    rng_seed = data.get("rng_seed", 0)
    if not isinstance(rng_seed, int):
        raise ValueError(f"rng_seed: expected an integer, got {rng_seed!r}")
    try:
        return SweepConfig(
            profiles=tuple(profiles),
            instances_per_profile=count,
            modes=modes,
            limits=limits,
            rng_seed=rng_seed,
        )
    except ValueError as exc:
        raise ValueError(f"config: {exc}") from None


def config_to_dict(config: SweepConfig) -> dict:
    limits = {
        "max_steps": config.limits.max_steps,
        "max_stored_states": config.limits.max_stored_states,
        "divergence_threshold": None
        if config.limits.divergence_threshold is None
        else format_rational(config.limits.divergence_threshold),
    }
    return {
        "profiles": [
            {"kind": pr.kind, "n": pr.n, "p": pr.p, "value_bound": pr.value_bound}
            for pr in config.profiles
        ],
        "instances_per_profile": config.instances_per_profile,
        "modes": list(config.modes),
        "limits": limits,
        "rng_seed": config.rng_seed,
    }
