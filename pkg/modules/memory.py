# modules/memory.py

import json
import os
import time
import uuid
from datetime import datetime
from typing import Dict, List, Optional

from models import Outcome, TrialRecord, Verdict
from modules.tools import log


def new_run_id() -> str:
    today = datetime.now()
    return f"{today.year}/{today.month:02}/{today.day:02}/run-{int(time.time())}-{uuid.uuid4().hex[:6]}"


class TrialLog:
    """Per-trial records of one experiment (read/write/append)."""

    def __init__(self, path: Optional[str] = None, run_id: Optional[str] = None):
        self.path = path
        self.run_id = run_id or new_run_id()
        self.records: List[TrialRecord] = []

    def load(self) -> None:
        if self.path and os.path.exists(self.path):
            with open(self.path, "r", encoding="utf-8") as f:
                raw = json.load(f)
                self.run_id = raw.get("run_id", self.run_id)
                self.records = [TrialRecord(**item) for item in raw.get("trials", [])]
        else:
            self.records = []

    def save(self) -> None:
        if not self.path:
            return
        directory = os.path.dirname(self.path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(self.path, "w", encoding="utf-8") as f:
            raw = {"run_id": self.run_id, "trials": [r.model_dump(mode="json") for r in self.records]}
            json.dump(raw, f, indent=2)

    def add(self, record: TrialRecord) -> None:
        self.records.append(record)

    def add_verdict(
        self,
        n: int,
        trial: int,
        seed: int,
        directed: bool,
        verdict: Verdict,
        x: Optional[str] = None,
        y: Optional[str] = None,
        tags: Optional[List[str]] = None,
    ) -> TrialRecord:
        record = TrialRecord(
            n=n,
            trial=trial,
            seed=seed,
            directed=directed,
            x=x,
            y=y,
            outcome=verdict.outcome,
            iterations=verdict.iterations_used,
            elapsed_ms=verdict.elapsed_ms,
            z=str(verdict.z) if verdict.z else None,
            w=str(verdict.w) if verdict.w else None,
            tags=tags or [],
        )
        self.add(record)
        return record

    def for_n(self, n: int) -> List[TrialRecord]:
        return [r for r in self.records if r.n == n]

    def found_counts(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for r in self.records:
            counts.setdefault(r.n, 0)
            if r.outcome == Outcome.NOT_ADJACENT:
                counts[r.n] += 1
        return counts

    def flush(self) -> None:
        self.save()
        if self.path:
            log("memory", f"💾 {len(self.records)} trials written to {self.path}")

    def __len__(self) -> int:
        return len(self.records)
