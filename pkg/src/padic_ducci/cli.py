"""Command-line front end.

Subcommands: abs, orbit, spectrum, predict, sweep, classical.  Scalar
queries print plain text unless --json is given; structured reports are
always JSON.  Exit codes: 0 success, 1 usage error, 2 input validation
error, 3 I/O error.  A REFUTED verdict is a result, not a failure, and
still exits 0.
"""

from __future__ import annotations

import argparse
import json
import sys

from .dynamics import (
    CYCLE,
    TERMINATED,
    DucciInstance,
    OrbitLimits,
    classical_orbit,
    classical_trajectory,
    instance_from_dict,
    report_to_dict,
    run_orbit,
)
from .harness import (
    InstanceObservation,
    InstancePrediction,
    compare_prediction,
    config_from_dict,
    run_sweep,
    write_sweep_report,
)
from .padic import format_rational, padic_abs, parse_rational, require_prime
from .spectral import (
    DEFAULT_MAX_UNITY_ORDER,
    predict_behavior,
    prediction_to_dict,
    spectral_report,
    spectral_report_to_dict,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3

TRACE_CAP = 1000


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="padic-ducci", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_abs = sub.add_parser("abs", help="p-adic absolute value of a rational")
    p_abs.add_argument("--p", type=int, required=True)
    p_abs.add_argument("value", help="rational, e.g. 1/2 or -7")
    p_abs.add_argument("--json", action="store_true")

    p_orbit = sub.add_parser("orbit", help="run an orbit and print its report")
    p_orbit.add_argument("--instance", required=True)
    p_orbit.add_argument("--max-steps", type=int, default=None)
    p_orbit.add_argument("--max-states", type=int, default=None)
    p_orbit.add_argument("--threshold", default=None, help="divergence threshold as a rational")

    p_spec = sub.add_parser("spectrum", help="eigenvalue valuations and spectrum class")
    p_spec.add_argument("--instance", required=True)
    p_spec.add_argument("--max-order", type=int, default=DEFAULT_MAX_UNITY_ORDER)

    p_pred = sub.add_parser("predict", help="behavior prediction, optionally checked")
    p_pred.add_argument("--instance", required=True)
    p_pred.add_argument("--check", action="store_true", help="run the orbit and compare")
    p_pred.add_argument("--max-order", type=int, default=DEFAULT_MAX_UNITY_ORDER)
    p_pred.add_argument("--max-steps", type=int, default=None)
    p_pred.add_argument("--threshold", default=None)

    p_sweep = sub.add_parser("sweep", help="generate, run and compare instance families")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--workers", type=int, default=1)

    p_cls = sub.add_parser("classical", help="the integer four-number game")
    p_cls.add_argument("values", type=int, nargs=4, metavar="X")
    p_cls.add_argument("--trace", action="store_true")
    p_cls.add_argument("--max-steps", type=int, default=1000)
    p_cls.add_argument("--json", action="store_true")

    return parser


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON ({exc})") from None


def _load_instance(path: str) -> DucciInstance:
    return instance_from_dict(_load_json(path))


def _limits_from_args(args) -> OrbitLimits:
    kwargs = {}
    if args.max_steps is not None:
        kwargs["max_steps"] = args.max_steps
    if getattr(args, "max_states", None) is not None:
        kwargs["max_stored_states"] = args.max_states
    if args.threshold is not None:
        kwargs["divergence_threshold"] = parse_rational(args.threshold)
    return OrbitLimits(**kwargs)


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _cmd_abs(args) -> int:
    require_prime(args.p)
    value = parse_rational(args.value)
    result = format_rational(padic_abs(value, args.p))
    if args.json:
        _print_json({"p": args.p, "value": args.value, "abs": result})
    else:
        print(result)
    return EXIT_OK


def _cmd_orbit(args) -> int:
    inst = _load_instance(args.instance)
    report = run_orbit(inst, _limits_from_args(args))
    _print_json(report_to_dict(report))
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    inst = _load_instance(args.instance)
    report = spectral_report(inst.matrix, inst.p, args.max_order)
    _print_json(spectral_report_to_dict(report))
    return EXIT_OK


def _cmd_predict(args) -> int:
    inst = _load_instance(args.instance)
    prediction = predict_behavior(inst.matrix, inst.p, args.max_order)
    out = {
        "prediction": {
            **prediction_to_dict(prediction),
            "spectrum": prediction.spectrum,
            "period_divides": prediction.period_divides,
            "norm_mode_note": prediction.norm_mode_note,
        },
        "mode": inst.mode,
    }
    if args.check:
        limits = _limits_from_args(args)
        report = run_orbit(inst, limits)
        pred = InstancePrediction(
            instance_id="cli",
            profile="cli",
            kind="cli",
            mode=inst.mode,
            p=inst.p,
            n=inst.n,
            divergence_threshold=limits.resolve_threshold(inst.p),
            prediction=prediction,
        )
        obs = InstanceObservation(instance_id="cli", mode=inst.mode, report=report)
        record = compare_prediction(pred, obs)
        out["observed"] = report_to_dict(report)
        out["verdict"] = record.verdict
    _print_json(out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    config = config_from_dict(_load_json(args.config))
    if args.workers < 1:
        raise ValueError(f"workers: must be >= 1, got {args.workers}")
    result = run_sweep(config, workers=args.workers)
    paths = write_sweep_report(result, args.out)
    _print_json(
        {
            "records": str(paths["records"]),
            "summary": str(paths["summary"]),
            "instances": str(paths["instances"]),
            "total_records": len(result.records),
        }
    )
    return EXIT_OK


def _cmd_classical(args) -> int:
    limits = OrbitLimits(max_steps=args.max_steps)
    report = classical_orbit(args.values, limits)
    if report.outcome == TERMINATED:
        summary = f"terminated at step {report.step}"
    elif report.outcome == CYCLE:
        summary = f"cycle: preperiod {report.preperiod} period {report.period}"
    else:
        summary = f"unresolved after {report.steps} steps"
    if args.json:
        trace = list(classical_trajectory(args.values, report.steps)) if args.trace else None
        out = {"outcome": report_to_dict(report)["outcome"], "steps": report.steps}
        if trace is not None:
            out["trace"] = [list(state) for state in trace]
        _print_json(out)
        return EXIT_OK
    if args.trace:
        for i, state in enumerate(classical_trajectory(args.values, report.steps)):
            if i == TRACE_CAP:
                print(f"... ({report.steps - TRACE_CAP} more steps elided)")
                break
            print(" ".join(str(c) for c in state))
    print(summary)
    return EXIT_OK


_COMMANDS = {
    "abs": _cmd_abs,
    "orbit": _cmd_orbit,
    "spectrum": _cmd_spectrum,
    "predict": _cmd_predict,
    "sweep": _cmd_sweep,
    "classical": _cmd_classical,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"padic-ducci: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"padic-ducci: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
