# modules/harness.py

import csv
import sys
from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field
from rich.table import Table
from tqdm import tqdm

from core.context import Instance
from core.errors import IdenticalTours, InvariantViolation
from core.graph import EdgeSubset
from core.session import solve
from models import CSV_COLUMNS, AnnealConfig, InstanceKind, InstanceSpec, StatsRow, Tour, TourType, Verdict
from modules.instances import random_pair
from modules.memory import TrialLog
from modules.oracle import find_complementary_exhaustive, require_witness
from modules.tools import derive_seed, log, make_rng

INSTANCE_STREAM = 1


class RunPlan(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    sizes: List[int] = [8]
    times: int = Field(default=50, ge=1)
    directed: bool = False
    tour_type: TourType = TourType.RANDOM
    seed: int = 0
    config: AnnealConfig = AnnealConfig()
    instance: Optional[Instance] = None
    out: Optional[Path] = None
    log_path: Optional[Path] = None
    oracle_bound: int = 12
    oracle_filter_attempts: int = 200
    progress: bool = True


def trial_spec(n: int, plan: RunPlan, seed: int) -> InstanceSpec:
    if plan.instance is not None and not plan.instance.has_tours:
        kind = InstanceKind.RAW_GRAPH
    elif plan.tour_type == TourType.PYRAMIDAL:
        kind = InstanceKind.PYRAMIDAL_TOURS
    else:
        kind = InstanceKind.RANDOM_TOURS
    return InstanceSpec(n=n, directed=plan.directed, kind=kind, seed=seed)


def draw_pair(spec: InstanceSpec, plan: RunPlan) -> Tuple[Tour, Tour, List[str]]:
    """Instance pair for one trial. Small pyramidal pairs are kept only when
    the oracle finds complementary tours, so accuracy has a ground truth."""
    if spec.kind == InstanceKind.RAW_GRAPH:
        raise InvariantViolation("raw graphs come from an input file, they are never drawn")
    n = spec.n
    tour_type = TourType.PYRAMIDAL if spec.kind == InstanceKind.PYRAMIDAL_TOURS else TourType.RANDOM
    rng = make_rng(spec.seed, INSTANCE_STREAM)
    if tour_type != TourType.PYRAMIDAL or n > plan.oracle_bound:
        x, y = random_pair(n, spec.directed, rng, tour_type)
        return x, y, []
    for _ in range(plan.oracle_filter_attempts):
        x, y = random_pair(n, spec.directed, rng, tour_type)
        if find_complementary_exhaustive(x, y, plan.oracle_bound) is not None:
            return x, y, ["oracle:condition holds"]
    log("harness", f"⚠️ N={n}: no oracle-confirmed pyramidal pair in {plan.oracle_filter_attempts} draws, using an unfiltered one")
    return x, y, ["oracle:unfiltered"]


def check_verdict(instance: Instance, verdict: Verdict) -> None:
    """A not-adjacent verdict must carry a witness that holds up on its own."""
    if not verdict.not_adjacent:
        return
    z = EdgeSubset.of(verdict.z_edges)
    w = EdgeSubset.of(verdict.w_edges)
    require_witness(instance.x, instance.y, z, w, instance.graph)


def run_trial(instance: Instance, cfg: AnnealConfig) -> Verdict:
    verdict = solve(instance, cfg)
    check_verdict(instance, verdict)
    return verdict


def run_size(n: int, plan: RunPlan, trial_log: TrialLog) -> Tuple[StatsRow, Optional[Verdict]]:
    found_ms: List[float] = []
    not_found_ms: List[float] = []
    first_success: Optional[Verdict] = None
    trials = tqdm(range(plan.times), desc=f"N={n}", file=sys.stderr, leave=False, disable=not plan.progress)
    for trial in trials:
        seed = derive_seed(plan.seed, n, trial)
        if plan.instance is not None:
            instance, tags = plan.instance, ["input"]
        else:
            x, y, tags = draw_pair(trial_spec(n, plan, seed), plan)
            instance = Instance.from_tours(x, y)
        verdict = run_trial(instance, plan.config.model_copy(update={"seed": seed}))
        if verdict.not_adjacent:
            found_ms.append(verdict.elapsed_ms)
            first_success = first_success or verdict
        else:
            not_found_ms.append(verdict.elapsed_ms)
        trial_log.add_verdict(
            n=n,
            trial=trial,
            seed=seed,
            directed=instance.directed,
            verdict=verdict,
            x=str(instance.x) if instance.x else None,
            y=str(instance.y) if instance.y else None,
            tags=tags,
        )
    row = StatsRow.from_times(n, found_ms, not_found_ms)
    log("harness", f"N={n}: {row.found}/{row.trials} found, T_avg={row.to_csv_row()['T_avg_ms']} ms")
    return row, first_success


def run_experiment(plan: RunPlan) -> Tuple[List[StatsRow], TrialLog, Optional[Verdict]]:
    """Run every configured size and write the CSV and the trial log."""
    trial_log = TrialLog(path=str(plan.log_path) if plan.log_path else None)
    sizes = [plan.instance.n] if plan.instance is not None else plan.sizes
    rows: List[StatsRow] = []
    first_success: Optional[Verdict] = None
    for n in sizes:
        if plan.instance is None and n == 3 and not plan.directed:
            raise IdenticalTours("N=3 undirected has a single tour, no pair to test")
        row, success = run_size(n, plan, trial_log)
        rows.append(row)
        first_success = first_success or success
    if plan.out is not None:
        write_csv(rows, plan.out)
        log("harness", f"💾 CSV written to {plan.out}")
    trial_log.flush()
    return rows, trial_log, first_success


# --- output ---

def write_csv(rows: List[StatsRow], path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row.to_csv_row())


def read_csv(path: Union[str, Path]) -> List[StatsRow]:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return [StatsRow.from_csv_row(r) for r in csv.DictReader(f)]


def accuracy_label(tour_type: TourType) -> str:
    return "Accuracy, %" if tour_type == TourType.PYRAMIDAL else "Percentage of found tours"


def render_table(rows: List[StatsRow], tour_type: TourType, title: Optional[str] = None) -> Table:
    table = Table(title=title)
    for name in ("N", "Trials", "Found", "Not found", "TNF_avg, ms", "TF_avg, ms", "T_avg, ms", accuracy_label(tour_type)):
        table.add_column(name, justify="right")
    for row in rows:
        cells = row.to_csv_row()
        table.add_row(*(cells[c] for c in CSV_COLUMNS))
    return table
