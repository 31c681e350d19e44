# modules/tools.py

import datetime
from typing import Sequence

import numpy as np
from rich.console import Console
from rich.text import Text

# stderr carries the log; stdout is kept for results
console = Console(stderr=True, highlight=False)
stdout = Console(highlight=False)

_VERBOSITY = {"level": "low"}


def set_verbosity(level: str) -> None:
    _VERBOSITY["level"] = level


def is_verbose() -> bool:
    return _VERBOSITY["level"] == "high"


def log(stage: str, msg: str) -> None:
    """Simple timestamped console logger."""
    now = datetime.datetime.now().strftime("%H:%M:%S")
    # plain Text: brackets in stage names and pydantic messages are literal
    console.print(Text.assemble((f"[{now}]", "dim"), " ", (f"[{stage}]", "bold"), f" {msg}"), soft_wrap=True)


def debug(stage: str, msg: str) -> None:
    if is_verbose():
        log(stage, msg)


def derive_seed(*parts: int) -> int:
    """Stable 63-bit seed from a tuple of integers (base seed, N, trial, ...)."""
    state = np.random.SeedSequence([int(p) % 2**64 for p in parts]).generate_state(2, dtype=np.uint32)
    return int((int(state[0]) << 31) ^ int(state[1]))


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.default_rng([int(seed) % 2**64, int(stream) % 2**64])


def draw_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**62))


def pick(rng: np.random.Generator, items: Sequence):
    return items[int(rng.integers(len(items)))]
