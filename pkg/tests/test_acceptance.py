"""End-to-end acceptance suite.

One test per criterion; each prints a PASS line when its assertions hold.
All checks are exact (Fraction equality, integer counts); there are no
floating-point tolerances anywhere.
"""

import random
from fractions import Fraction
from itertools import product

from oracles import diagonal_norm_cycle, random_upper_triangular
from padic_ducci import (
    CONFIRMED,
    CYCLE,
    EXPANSIVE,
    INF,
    LINEAR_MODE,
    NORM_DIVERGED,
    NORM_MODE,
    REFUTED,
    TERMINATED,
    DucciInstance,
    GeneratorProfile,
    OrbitLimits,
    SweepConfig,
    child_rng,
    classical_orbit,
    classify_spectrum,
    eigenvalue_valuations,
    gen_instance,
    linear_step,
    matrix,
    padic_abs,
    roots_of_unity_order,
    run_orbit,
    run_sweep,
    vector,
    vp,
    write_sweep_report,
)
from padic_ducci.harness import CONTRACTIVE_ENTRIES, DIAGONAL_RANDOM, PERMUTATION, UNIT_TRIANGULAR, render_records_jsonl

SHIFT4 = matrix([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]])


def test_criterion_1_expansive_example_exact():
    half = matrix([["1/2", "0"], ["0", "1/2"]])
    assert padic_abs(Fraction(1, 2), 2) == 2
    vals = eigenvalue_valuations(half, 2)
    assert vals == (-1, -1)
    assert classify_spectrum(vals) == EXPANSIVE

    # exact growth law: max-norm(x_k) == 2**k for k <= 60, zero tolerance
    inst = DucciInstance(p=2, matrix=half, seed=vector([1, 1]), mode=LINEAR_MODE)
    state = inst.seed
    for k in range(61):
        assert max(padic_abs(c, 2) for c in state) == Fraction(2) ** k
        state = linear_step(inst, state)

    report = run_orbit(inst, OrbitLimits(divergence_threshold=Fraction(2) ** 50))
    assert report.outcome == NORM_DIVERGED
    assert report.step == 51
    print("PASS  criterion 1: expansive 2x2 example reproduced exactly")


def test_criterion_2_contractive_family_confirmed():
    profiles = tuple(
        GeneratorProfile(kind=CONTRACTIVE_ENTRIES, n=n, p=p)
        for p in (2, 3, 5)
        for n in (1, 2, 3, 4)
    )
    config = SweepConfig(
        profiles=profiles,
        instances_per_profile=42,  # 12 profiles x 42 = 504 instances
        modes=(LINEAR_MODE,),
        limits=OrbitLimits(max_steps=60),
        rng_seed=20240601,
    )
    result = run_sweep(config)
    assert len(result.records) == 504
    for rec in result.records:
        assert rec.verdict == CONFIRMED, rec.instance_id
        trace = rec.report.valuation_trace
        mins = [mn for mn, _ in trace]
        for a, b in zip(mins, mins[1:]):
            assert b > a, rec.instance_id
        assert len(trace) - 1 <= 60
        assert mins[-1] > 50
    print("PASS  criterion 2: 504/504 contractive linear orbits confirmed, min valuation " ">50 within 60 steps")


def test_criterion_3_unit_spectrum_cycles():
    unity = roots_of_unity_order(SHIFT4)
    assert (unity.order, unity.certified) == (4, True)

    def check_instance(inst):
        u = roots_of_unity_order(inst.matrix)
        assert u is not None and u.certified
        report = run_orbit(inst)
        assert report.outcome == CYCLE
        assert u.order % report.period == 0
        assert all(mn != INF for mn, _ in report.valuation_trace)  # no zero state
        norms = sorted(padic_abs(c, inst.p) for c in inst.seed)
        state = inst.seed
        for _ in range(report.steps + 1):
            state = linear_step(inst, state)
            assert sorted(padic_abs(c, inst.p) for c in state) == norms
        return u.order

    inst = DucciInstance(p=5, matrix=SHIFT4, seed=vector([1, 2, 3, 4]), mode=LINEAR_MODE)
    check_instance(inst)

    rng = random.Random(333)
    for i in range(100):
        profile = GeneratorProfile(kind=PERMUTATION, n=rng.randint(1, 6), p=rng.choice([2, 3, 5]))
        check_instance(gen_instance(profile, child_rng(333, i)))
    print("PASS  criterion 3: cyclic shift and 100 random permutations cycle with period " "dividing the certified order")


def test_criterion_4_norm_mode_errata():
    config = SweepConfig(
        profiles=(
            GeneratorProfile(kind=DIAGONAL_RANDOM, n=1, p=2),
            GeneratorProfile(kind=DIAGONAL_RANDOM, n=2, p=2),
        ),
        instances_per_profile=500,  # 1000 diagonal instances in total
        modes=(NORM_MODE,),
        limits=OrbitLimits(max_steps=100),
        rng_seed=20240604,
    )
    result = run_sweep(config)
    assert len(result.records) == 1000
    instances = dict(result.instances)

    contractive_diagonal = 0
    for rec in result.records:
        inst = instances[rec.instance_id]
        assert rec.report.outcome == CYCLE, rec.instance_id
        assert rec.report.preperiod <= 1
        assert rec.report.period in (1, 2)
        # closed-form valuation recurrence oracle
        assert (rec.report.preperiod, rec.report.period) == diagonal_norm_cycle(inst)
        if all(vp(inst.matrix[i][i], inst.p) >= 1 for i in range(inst.n)):
            contractive_diagonal += 1
            # termination was predicted, a nonzero cycle was observed
            assert rec.prediction.claim == "terminates"
            assert rec.verdict == REFUTED
            assert rec.report.outcome != TERMINATED
    assert contractive_diagonal > 0
    print(
        f"PASS  criterion 4: 1000/1000 diagonal norm orbits short-cycle per the recurrence; "
        f"{contractive_diagonal} all-positive-valuation diagonals refute the termination claim"
    )


def test_criterion_5_classical_exhaustive():
    limits = OrbitLimits(max_steps=1000)
    for seed in product(range(16), repeat=4):
        report = classical_orbit(seed, limits)
        assert report.outcome == TERMINATED, seed
    print("PASS  criterion 5: all 65536 classical seeds in {0..15}^4 terminate")


def test_criterion_6_newton_polygon_vs_triangular_oracle():
    rng = random.Random(20240606)
    det_checked = 0
    for _ in range(1000):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 6)
        a = random_upper_triangular(rng, n)
        expected = sorted((vp(a[i][i], p) for i in range(n)), key=lambda v: (v == INF, v))
        assert list(eigenvalue_valuations(a, p)) == expected
        det = Fraction(1)
        for i in range(n):
            det *= a[i][i]
        if det != 0:
            det_checked += 1
            assert sum(eigenvalue_valuations(a, p)) == vp(det, p)
    assert det_checked > 0
    print(
        f"PASS  criterion 6: 1000 triangular matrices match the diagonal-valuation oracle; "
        f"determinant consistency on {det_checked} nonsingular samples"
    )


def test_criterion_7_sweep_determinism(tmp_path):
    config = SweepConfig(
        profiles=(
            GeneratorProfile(kind=PERMUTATION, n=4, p=5),
            GeneratorProfile(kind=DIAGONAL_RANDOM, n=2, p=2),
            GeneratorProfile(kind=CONTRACTIVE_ENTRIES, n=3, p=3),
            GeneratorProfile(kind=UNIT_TRIANGULAR, n=3, p=2),
        ),
        instances_per_profile=10,
        modes=(LINEAR_MODE, NORM_MODE),
        limits=OrbitLimits(max_steps=120),
        rng_seed=20240607,
    )
    runs = {}
    for label, workers in (("a", 1), ("b", 4), ("c", 1)):
        result = run_sweep(config, workers=workers)
        paths = write_sweep_report(result, tmp_path / label)
        runs[label] = {name: path.read_bytes() for name, path in paths.items()}
    assert runs["a"] == runs["b"] == runs["c"]
    assert render_records_jsonl(run_sweep(config, workers=4)) == runs["a"]["records"].decode()
    print("PASS  criterion 7: sweep reports are byte-identical across reruns and worker counts")
