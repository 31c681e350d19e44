# adjacency.py

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from core.context import Instance, SolverProfile, load_profile
from core.errors import AdjacencyError, InvariantViolation, UsageError
from core.graph import UnionMultigraph
from models import AnnealConfig, Mode, TourType
from modules.harness import RunPlan, render_table, run_experiment
from modules.instances import read_instance, serialize_witness
from modules.tools import console, log, set_verbosity, stdout

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2


class ArgParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> ArgParser:
    p = ArgParser(
        prog="adjacency",
        allow_abbrev=False,
        description="Test non-adjacency of TSP/ATSP polytope vertices by simulated annealing over cycle covers.",
    )
    p.add_argument("--N", type=int, nargs="+", help="number of vertices (one or more sizes)")
    p.add_argument("--times", type=int, help="number of trials per size")
    p.add_argument("--iterN", type=int, help="iterations per annealing run")
    p.add_argument("--stateCandidate", choices=[m.value for m in Mode], help="neighbor generation")
    p.add_argument("--exEdgesN", type=int, help="edges exchanged per move (random only)")
    p.add_argument("--ansN", type=int, help="multistart runs (random only)")
    p.add_argument("--fixEdgesN", type=int, help="size of the fixed-edge queue (match only)")
    p.add_argument("--directed", action="store_true", default=None, help="directed tours (ATSP)")
    p.add_argument("--tourType", choices=[t.value for t in TourType], help="instance family")
    p.add_argument("--initT", type=float, help="initial temperature (default N)")
    p.add_argument("--seed", type=int, help="base seed")
    p.add_argument("--input", type=Path, help="instance file (tu/td/gu/gd)")
    p.add_argument("--out", type=Path, help="CSV output file")
    p.add_argument("--log", type=Path, help="per-trial JSON log")
    p.add_argument("--oracleBound", type=int, help="largest N for exhaustive ground truth")
    p.add_argument("--profile", type=Path, help="profile YAML (default config/profiles.yaml)")
    p.add_argument("-v", "--verbose", action="store_true", help="per-iteration log on stderr")
    return p


def _pick(flag, fallback):
    return flag if flag is not None else fallback


def _check_flags(args: argparse.Namespace, mode: Mode) -> None:
    if mode == Mode.MATCH:
        used = [f"--{name}" for name in ("exEdgesN", "ansN") if getattr(args, name) is not None]
        if used:
            raise UsageError(f"{', '.join(used)} only apply to --stateCandidate=random")
    if mode == Mode.RANDOM and args.fixEdgesN is not None:
        raise UsageError("--fixEdgesN only applies to --stateCandidate=match")
    if args.input is not None:
        used = [f"--{name}" for name in ("N", "tourType", "directed") if getattr(args, name) is not None]
        if used:
            raise UsageError(f"{', '.join(used)} cannot be combined with --input")
    elif not args.N:
        raise UsageError("--N is required unless --input is given")


def _load_input(path: Path) -> Instance:
    parsed = read_instance(path)
    if isinstance(parsed, UnionMultigraph):
        return Instance.from_graph(parsed)
    return Instance.from_tours(*parsed)


def parse_args(argv: Optional[List[str]] = None, profile: Optional[SolverProfile] = None) -> RunPlan:
    args = build_parser().parse_args(argv)
    profile = profile or load_profile(args.profile)
    ann, exp = profile.annealing, profile.experiment

    mode = Mode(args.stateCandidate) if args.stateCandidate else ann.state_candidate
    _check_flags(args, mode)
    set_verbosity("high" if args.verbose else profile.logging.verbosity)

    try:
        cfg = AnnealConfig(
            init_t=_pick(args.initT, ann.init_t),
            iter_n=_pick(args.iterN, ann.iter_n),
            fix_edges_n=args.fixEdgesN,
            mode=mode,
            ex_edges_n=_pick(args.exEdgesN, ann.ex_edges_n),
            ans_n=_pick(args.ansN, ann.ans_n),
            random_attempts=ann.random_attempts,
            fix_edges_divisor=ann.fix_edges_divisor,
        )
        plan = RunPlan(
            sizes=args.N or exp.sizes,
            times=_pick(args.times, exp.times),
            directed=_pick(args.directed, exp.directed),
            tour_type=TourType(args.tourType) if args.tourType else exp.tour_type,
            seed=_pick(args.seed, exp.seed),
            config=cfg,
            out=args.out,
            log_path=args.log,
            oracle_bound=_pick(args.oracleBound, exp.oracle_bound),
            oracle_filter_attempts=exp.oracle_filter_attempts,
        )
    except ValidationError as e:
        raise UsageError(str(e)) from e

    if args.input is not None:
        plan.instance = _load_input(args.input)
        plan.directed = plan.instance.directed
        plan.sizes = [plan.instance.n]

    for n in plan.sizes:
        if n < 3:
            raise UsageError(f"--N must be at least 3, got {n}")
        if n == 3 and not plan.directed and plan.instance is None:
            raise UsageError("--N 3 without --directed has a single tour, no pair to test")
        if cfg.fix_edges_n is not None and cfg.fix_edges_n > 2 * n:
            raise UsageError(f"--fixEdgesN {cfg.fix_edges_n} exceeds the {2 * n} edges at N={n}")
    return plan


def main(argv: Optional[List[str]] = None) -> int:
    try:
        plan = parse_args(argv)
    except UsageError as e:
        console.print(f"usage error: {e}", markup=False)
        return EXIT_USAGE
    except (AdjacencyError, OSError) as e:
        log("cli", f"❌ {e}")
        return EXIT_USAGE

    log("cli", f"🧠 sizes={plan.sizes} times={plan.times} mode={plan.config.mode.value} seed={plan.seed}")
    try:
        rows, _, first_success = run_experiment(plan)
    except InvariantViolation as e:
        log("cli", f"❌ internal validation failure: {e}")
        return EXIT_VALIDATION
    except (AdjacencyError, OSError) as e:
        log("cli", f"❌ {e}")
        return EXIT_USAGE

    stdout.print(render_table(rows, plan.tour_type))
    if plan.instance is not None:
        if first_success is not None:
            stdout.print("💡 Final Answer: not adjacent", markup=False)
            stdout.print(serialize_witness(first_success.z, first_success.w), end="", markup=False)
        else:
            stdout.print("💡 Final Answer: probably adjacent", markup=False)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
