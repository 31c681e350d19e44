# modules/instances.py

"""
Instance generators and the text format.

    # comment lines start with '#'
    tu 8              header: t(ours) or g(raph), u(ndirected) or d(irected), n
    1 2 4 7 6 8 5 3   t*: two permutation lines
    1 2 3 4 6 7 8 5
                      g*: 2n lines "u v" (tail head for gd)
"""

from pathlib import Path
from typing import Iterable, List, Tuple, Union

import numpy as np

from core.errors import IdenticalTours, InstanceError, ParseError
from core.graph import UnionMultigraph, build_multigraph, tour_from_permutation, union_multigraph
from models import Tour, TourType

HEADERS = {"tu": (True, False), "td": (True, True), "gu": (False, False), "gd": (False, True)}

TourPair = Tuple[Tour, Tour]
Parsed = Union[TourPair, UnionMultigraph]


# --- generators ---

def random_tour(n: int, directed: bool, rng: np.random.Generator) -> Tour:
    """Uniform over tours: a uniform permutation of 2..n after vertex 1."""
    rest = (rng.permutation(max(n - 1, 0)) + 2).tolist()
    return tour_from_permutation([1] + rest, directed)


def pyramidal_tour(n: int, ascending: Iterable[int], directed: bool = False) -> Tour:
    """(1, ascending..., n, descending...) with `ascending` a subset of 2..n-1."""
    up = sorted(set(ascending))
    if any(v < 2 or v > n - 1 for v in up):
        raise InstanceError(f"ascending labels must lie in 2..{n - 1}: {up}")
    down = sorted(set(range(2, n)) - set(up), reverse=True)
    return tour_from_permutation([1] + up + [n] + down, directed)


def random_pyramidal(n: int, directed: bool, rng: np.random.Generator) -> Tour:
    coins = rng.integers(0, 2, size=max(n - 2, 0)).tolist()
    return pyramidal_tour(n, [v for v, c in zip(range(2, n), coins) if c], directed)


def is_pyramidal(t: Tour) -> bool:
    order = t.order
    peak = order.index(t.n)
    up, down = order[: peak + 1], order[peak:]
    return all(a < b for a, b in zip(up, up[1:])) and all(a > b for a, b in zip(down, down[1:]))


def random_pair(
    n: int,
    directed: bool,
    rng: np.random.Generator,
    tour_type: TourType = TourType.RANDOM,
) -> TourPair:
    """Two distinct tours; y is redrawn until it differs from x."""
    if n == 3 and not directed:
        raise IdenticalTours("there is only one undirected tour on 3 vertices")
    draw = random_pyramidal if tour_type == TourType.PYRAMIDAL else random_tour
    x = draw(n, directed, rng)
    y = draw(n, directed, rng)
    while y == x:
        y = draw(n, directed, rng)
    return x, y


# --- text format ---

def _content_lines(text: str) -> List[Tuple[int, str]]:
    out = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line and not line.startswith("#"):
            out.append((number, line))
    return out


def _ints(number: int, line: str) -> List[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}", number) from None


def parse_instance(text: str) -> Parsed:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty instance file")
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] not in HEADERS:
        raise ParseError(f"header must be 'tu|td|gu|gd n', got {header!r}", number)
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError(f"vertex count must be an integer, got {parts[1]!r}", number) from None
    if n < 3:
        raise ParseError(f"vertex count must be at least 3, got {n}", number)
    is_tours, directed = HEADERS[parts[0]]
    body = lines[1:]
    expected = 2 if is_tours else 2 * n
    if len(body) != expected:
        at = body[expected][0] if len(body) > expected else None
        raise ParseError(f"expected {expected} data lines after the header, got {len(body)}", at)

    if is_tours:
        tours = []
        for number, line in body:
            perm = _ints(number, line)
            if sorted(perm) != list(range(1, n + 1)):
                raise ParseError(f"not a permutation of 1..{n}", number)
            tours.append(tour_from_permutation(perm, directed))
        x, y = tours
        union_multigraph(x, y)
        return x, y

    pairs = []
    for number, line in body:
        ends = _ints(number, line)
        if len(ends) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", number)
        if not all(1 <= v <= n for v in ends):
            raise ParseError(f"vertex out of range 1..{n}: {line!r}", number)
        pairs.append((ends[0] - 1, ends[1] - 1))
    return build_multigraph(n, directed, pairs)


def serialize_instance(obj: Parsed) -> str:
    if isinstance(obj, UnionMultigraph):
        head = "gd" if obj.directed else "gu"
        lines = [f"{head} {obj.n}"] + [f"{e.tail + 1} {e.head + 1}" for e in obj.edges]
    else:
        x, y = obj
        head = "td" if x.directed else "tu"
        lines = [f"{head} {x.n}", str(x), str(y)]
    return "\n".join(lines) + "\n"


def serialize_witness(z: Tour, w: Tour) -> str:
    return f"{z}\n{w}\n"


def read_instance(path: Union[str, Path]) -> Parsed:
    with open(path, "r", encoding="utf-8") as f:
        return parse_instance(f.read())


def write_instance(path: Union[str, Path], obj: Parsed) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(serialize_instance(obj))
