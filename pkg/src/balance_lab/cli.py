"""Command-line front end: analysis, certification, simulation, experiments.

Every subcommand is a thin adapter over the library; no algorithmic logic
lives here.  Exit codes: 0 success or absorbed, 1 usage, 2 input parse,
3 guard refusal, 4 max-steps exhaustion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from . import balance, chordal, dynamics, experiments
from .graphs import (
    AppraisalMatrix,
    EdgeListError,
    ego_network,
    format_edge_list,
    is_bilateral,
    is_sign_symmetric,
    read_edge_list,
    skeleton,
)
from .rng import derive_seed, stream

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_GUARD = 3
EXIT_NOT_ABSORBED = 4

THREADS_ENV = "BALANCE_LAB_THREADS"
PROB_SUM_TOL = 1e-9

# Sub-stream tags for single-run commands.
_TAG_GEN = 101
_TAG_RUN = 102
_TAG_OPINIONS = 103


class _Parser(argparse.ArgumentParser):
    """argparse reports usage problems with exit code 2; we want 1."""

    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _UsageError(Exception):
    pass


def _emit(payload: dict, out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)


def _workers() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        value = int(raw)
    except ValueError:
        raise _UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    cpus = os.cpu_count() or 1
    return max(1, min(value, cpus))


def _sih_params(args) -> dynamics.SihParams:
    given = [v for v in (args.p1, args.p2, args.p3) if v is not None]
    if not given:
        return dynamics.SihParams()
    if len(given) != 3:
        raise _UsageError("provide all of --p1 --p2 --p3 or none")
    if abs(args.p1 + args.p2 + args.p3 - 1.0) > PROB_SUM_TOL:
        raise _UsageError("--p1 --p2 --p3 must sum to 1 (no renormalization)")
    try:
        return dynamics.SihParams(args.p1, args.p2, args.p3)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _sioh_params(args) -> dynamics.SiohParams:
    sih = _sih_params(args)
    given = [v for v in (args.q1, args.q2, args.q3) if v is not None]
    if not given:
        return dynamics.SiohParams(sih=sih)
    if len(given) != 3:
        raise _UsageError("provide all of --q1 --q2 --q3 or none")
    if abs(args.q1 + args.q2 + args.q3 - 1.0) > PROB_SUM_TOL:
        raise _UsageError("--q1 --q2 --q3 must sum to 1 (no renormalization)")
    try:
        return dynamics.SiohParams(args.q1, args.q2, args.q3, sih=sih)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _load_or_generate(args) -> AppraisalMatrix:
    if args.input:
        return read_edge_list(args.input)
    if args.n is None or args.p is None:
        raise _UsageError("provide --input, or --n and --p to generate a graph")
    params = experiments.ErParams(args.n, args.p, args.p_neg if args.p_neg is not None else 0.0)
    return experiments.gen_er_signed(params, derive_seed(args.seed, _TAG_GEN))


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    x = read_edge_list(args.input)
    balanced, violations = balance.is_triad_wise_balanced(x)
    partition = balance.detect_two_faction(x)
    ego = {}
    for node in x.labels:
        _, sub = ego_network(x, node)
        ego[str(node)] = balance.detect_two_faction(sub) is not None
    report = {
        "n": x.n,
        "bilateral": is_bilateral(x),
        "sign_symmetric": is_sign_symmetric(x),
        "triad_wise_balanced": balanced,
        "violations": [
            {"kind": v.kind, "nodes": list(v.nodes)} for v in violations
        ],
        "two_faction": None
        if partition is None
        else {
            "kind": partition.kind,
            "v1": sorted(partition.v1),
            "v2": sorted(partition.v2),
        },
        "ego_two_faction": ego,
        "all_ego_two_faction": all(ego.values()),
        "conflict_ratio": experiments.conflict_ratio(x),
        "link_density": experiments.link_density(x),
        "triad_count": experiments.count_triads(x),
    }
    if args.all_cycles:
        try:
            report["all_cycles_positive"] = balance.all_cycles_positive(x, force=args.force)
        except ValueError as exc:
            sys.stderr.write(f"refused: {exc}\n")
            return EXIT_GUARD
    _emit(report, args.out)
    return EXIT_OK


def cmd_equivalence(args) -> int:
    x = read_edge_list(args.input)
    g = skeleton(x)
    try:
        ok, certificates = chordal.check_equivalence_conditions(g, force=args.force)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    report = {
        "n": g.n,
        "edges": sorted(list(e) for e in g.edges),
        "conditions_hold": ok,
        "subgraphs": [
            {
                "nodes": list(c.nodes),
                "certified": c.certified,
                "cycle": list(c.cycle) if c.cycle else None,
                "reason": c.reason,
            }
            for c in certificates
        ],
    }
    if args.verify_exhaustive:
        counterexample = chordal.equivalence_counterexample(g)
        report["exhaustive"] = {
            "equivalence_holds": counterexample is None,
            "counterexample": None
            if counterexample is None
            else sorted(
                [i, j, s] for i, j, s in counterexample.nonzero_links() if i < j
            ),
        }
    _emit(report, args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    x0 = _load_or_generate(args)
    run_seed = derive_seed(args.seed, _TAG_RUN)
    want_log = args.log is not None
    if args.engine == "sih":
        record = dynamics.run_sih(x0, _sih_params(args), run_seed, args.max_steps, log=want_log)
    elif args.engine == "sioh":
        draw = stream(args.seed, _TAG_OPINIONS)
        y0 = tuple(1 if draw.random() < 0.5 else -1 for _ in range(x0.n))
        state0 = dynamics.SiohState(x0, y0)
        record = dynamics.run_sioh(state0, _sioh_params(args), run_seed, args.max_steps, log=want_log)
    else:
        record = dynamics.constructive_sih_sequence(x0)
    payload = {
        "engine": args.engine,
        "absorbed": record.absorbed,
        "steps": record.steps,
        "n": record.final_x.n,
        "final_conflict_ratio": experiments.conflict_ratio(record.final_x),
        "final_opinions": list(record.final_y) if record.final_y else None,
    }
    if args.out:
        Path(args.out).write_text(format_edge_list(record.final_x), encoding="utf-8")
    if args.log:
        with open(args.log, "w", encoding="utf-8") as handle:
            for event in record.events or ():
                handle.write(json.dumps(event.to_dict(), sort_keys=True) + "\n")
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if record.absorbed else EXIT_NOT_ABSORBED


def cmd_experiment(args) -> int:
    if args.trials < 2:
        raise _UsageError("--trials must be at least 2")
    workers = _workers()
    params = _sih_params(args)
    if args.study == experiments.STUDY_C0:
        if args.p is None:
            raise _UsageError("study 'c0' fixes --p")
        records, reg = experiments.run_study_c0(
            args.n, args.p, args.trials, args.seed, params, args.max_steps, workers
        )
        fixed = {"n": args.n, "p": args.p, "p_neg": None}
    elif args.study == experiments.STUDY_DENSITY:
        if args.p_neg is None:
            raise _UsageError("study 'density' fixes --p-neg")
        records, reg = experiments.run_study_density(
            args.n, args.p_neg, args.trials, args.seed, params, args.max_steps, workers
        )
        fixed = {"n": args.n, "p": None, "p_neg": args.p_neg}
    else:
        if args.p is None or args.p_neg is None:
            raise _UsageError("study 'triads' fixes --p and --p-neg")
        records, reg = experiments.run_study_triads(
            args.n, args.p, args.p_neg, args.trials, args.seed, params, args.max_steps, workers
        )
        fixed = {"n": args.n, "p": args.p, "p_neg": args.p_neg}
    experiments.export_csv(records, args.out)
    summary = experiments.study_summary(args.study, records, reg, fixed)
    _emit(summary, args.summary)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser.
# ---------------------------------------------------------------------------


def _add_prob_flags(parser: argparse.ArgumentParser, names: tuple[str, ...]) -> None:
    for name in names:
        parser.add_argument(f"--{name}", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="balance-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    analyze = sub.add_parser("analyze", help="static balance report for one graph")
    analyze.add_argument("--input", required=True, help="edge-list file")
    analyze.add_argument("--all-cycles", action="store_true", help="also check cycle positivity")
    analyze.add_argument("--force", action="store_true", help="override size guards")
    analyze.add_argument("--out", default=None, help="also write the JSON report here")

    equivalence = sub.add_parser(
        "equivalence", help="certify equivalence of the two balance notions"
    )
    equivalence.add_argument("--input", required=True, help="edge-list file (signs ignored)")
    equivalence.add_argument("--verify-exhaustive", action="store_true")
    equivalence.add_argument("--force", action="store_true", help="override size guards")
    equivalence.add_argument("--out", default=None)

    simulate = sub.add_parser("simulate", help="run one trajectory to absorption")
    simulate.add_argument("--input", default=None, help="edge-list file")
    simulate.add_argument("--n", type=int, default=None)
    simulate.add_argument("--p", type=float, default=None)
    simulate.add_argument("--p-neg", type=float, default=None, dest="p_neg")
    simulate.add_argument("--engine", choices=("sih", "sioh", "constructive"), default="sih")
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--max-steps", type=int, default=dynamics.DEFAULT_MAX_STEPS)
    simulate.add_argument("--out", default=None, help="write the final state edge list here")
    simulate.add_argument("--log", default=None, help="write one JSON event per line here")
    _add_prob_flags(simulate, ("p1", "p2", "p3", "q1", "q2", "q3"))

    experiment = sub.add_parser("experiment", help="Monte-Carlo study batch")
    experiment.add_argument(
        "--study", choices=(experiments.STUDY_C0, experiments.STUDY_DENSITY, experiments.STUDY_TRIADS), required=True
    )
    experiment.add_argument("--n", type=int, default=8)
    experiment.add_argument("--p", type=float, default=None)
    experiment.add_argument("--p-neg", type=float, default=None, dest="p_neg")
    experiment.add_argument("--trials", type=int, default=3000)
    experiment.add_argument("--seed", type=int, default=0)
    experiment.add_argument("--max-steps", type=int, default=dynamics.DEFAULT_MAX_STEPS)
    experiment.add_argument("--out", required=True, help="CSV output path")
    experiment.add_argument("--summary", default=None, help="also write the JSON summary here")
    _add_prob_flags(experiment, ("p1", "p2", "p3"))

    return parser


_COMMANDS = {
    "analyze": cmd_analyze,
    "equivalence": cmd_equivalence,
    "simulate": cmd_simulate,
    "experiment": cmd_experiment,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except EdgeListError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except FileNotFoundError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except balance.GuardLimitError as exc:
        sys.stderr.write(f"refused: {exc}\n")
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
