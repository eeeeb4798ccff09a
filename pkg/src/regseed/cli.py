"""Command line entry point: gen, regularize, measure, schedule, verify, experiment."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .experiment import ExperimentConfig, result_csv, result_json, run_experiment
from .generators import generate, load_source, parse_source
from .graph import GraphError, WorkCapExceeded, random_partitionwise_map
from .io import dumps
from .oracle import DEFAULT_WORK_CAP, LEMMAS, verify
from .regularize import regularize_with_signatures
from .schedule import DEFAULT_DIGIT_CAP, ScheduleOverflow, TheoreticalSchedule
from .statistics import SamplingPlan, default_probes, regularity_report

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_VIOLATION = 0, 1, 2, 3
_MODES = {"mc": "monte_carlo", "monte_carlo": "monte_carlo", "exhaustive": "exhaustive", "auto": "auto"}


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _plan(args) -> SamplingPlan:
    return SamplingPlan(_MODES[args.mode], args.samples, args.work_cap, args.seed, args.eta_samples)


def _add_plan_flags(p) -> None:
    p.add_argument("--mode", choices=sorted(_MODES), default="auto")
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--eta-samples", type=int, default=None)
    p.add_argument("--work-cap", type=int, default=1_000_000)


def cmd_gen(args) -> int:
    spec = parse_source(args.graph, args.seed)
    if isinstance(spec, str):
        raise GraphError(f"not a generator source: {args.graph!r}")
    _emit(dumps(generate(spec)), args.out)
    return EXIT_OK


def cmd_regularize(args) -> int:
    g = load_source(args.graph, args.seed)
    phi = random_partitionwise_map(g.part_sizes, [args.m] * g.r, np.random.default_rng(args.seed))
    gstar, sigs = regularize_with_signatures(g, phi)
    _emit(dumps(gstar), args.out)
    if args.sidecar:
        doc = {"samples": [list(s) for s in phi.slots],
               "signatures": [[list(s) for s in part] for part in sigs]}
        Path(args.sidecar).write_text(json.dumps(doc, separators=(",", ":")) + "\n")
    return EXIT_OK


def cmd_measure(args) -> int:
    g = load_source(args.graph, args.seed)
    plan = _plan(args)
    probes = default_probes(g, args.h, args.probes, plan.rng("probes"))
    report = regularity_report(g, args.h, args.eps, probes, plan, args.M)
    _emit(json.dumps(report.to_dict(), sort_keys=True, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_schedule(args) -> int:
    sched = TheoreticalSchedule(args.r, args.h, (args.b1, args.b2), args.eps, args.digit_cap)
    _emit(json.dumps(sched.to_dict(args.n_max), indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = verify(args.lemma, args.instances, args.seed, args.work_cap)
    _emit(json.dumps(doc, indent=1) + "\n", args.out)
    return EXIT_VIOLATION if doc["violations"] else EXIT_OK


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig(args.graph, tuple(_ints(args.schedule)), args.h, args.eps, args.probes,
                           args.trials, _plan(args), args.seed, args.faithful, args.workers, args.M)
    doc = run_experiment(cfg)
    _emit(result_json(doc), args.out)
    if args.csv:
        Path(args.csv).write_text(result_csv(doc))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="regseed", description=__doc__, allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", allow_abbrev=False, help="write a generated graph")
    p.add_argument("--graph", required=True, help="half:N | mono:S | uniform:S:B1:B2 | planted:S:K:NOISE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("regularize", allow_abbrev=False, help="recolor vertices by signatures against m random samples")
    p.add_argument("--graph", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--sidecar", help="write samples and the signature behind each new color")
    p.set_defaults(func=cmd_regularize)

    p = sub.add_parser("measure", allow_abbrev=False, help="regularity report of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--eps", default="0.25")
    p.add_argument("--probes", type=int, default=4)
    p.add_argument("--M", type=int, default=None, help="override the sample budget for eta")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    _add_plan_flags(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("schedule", allow_abbrev=False, help="constants and m(n) of the theoretical schedule")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--b1", type=int, default=1)
    p.add_argument("--b2", type=int, default=2)
    p.add_argument("--eps", default="0.6")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--digit-cap", type=int, default=DEFAULT_DIGIT_CAP)
    p.add_argument("--out")
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("verify", allow_abbrev=False, help="exact lemma checks on random tiny instances")
    p.add_argument("--lemma", choices=LEMMAS + ("all",), default="all")
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--work-cap", type=int, default=DEFAULT_WORK_CAP)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", allow_abbrev=False, help="regularization sweep over a practical schedule")
    p.add_argument("--graph", required=True)
    p.add_argument("--schedule", default="0,1,2,4,8")
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--eps", default="0.25")
    p.add_argument("--probes", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--M", type=int, default=None)
    p.add_argument("--faithful", action="store_true", help="draw n per trial instead of sweeping")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--csv")
    _add_plan_flags(p)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (WorkCapExceeded, ScheduleOverflow) as exc:
        print(f"regseed: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphError, ValueError, OSError) as exc:
        print(f"regseed: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
