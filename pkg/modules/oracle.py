# modules/oracle.py

"""
Ground truth for small instances.

`find_complementary_*` is exact: it returns a pair of edge-disjoint
Hamiltonian tours covering the union, or None when no such pair exists.
None only says that this sufficient condition for non-adjacency fails, so
results are reported as "condition holds" / "condition fails", never as
"adjacent".
"""

from typing import List, Optional, Tuple

from core.errors import BoundExceeded, WitnessValidationError
from core.graph import (
    EdgeSubset,
    UnionMultigraph,
    is_hamiltonian,
    subset_equals_tour,
    union_multigraph,
)
from models import Tour
from modules.tools import debug

DEFAULT_BOUND = 12

Witness = Tuple[EdgeSubset, EdgeSubset]


def validate_witness(
    x: Optional[Tour],
    y: Optional[Tour],
    z: EdgeSubset,
    w: EdgeSubset,
    g: UnionMultigraph,
) -> bool:
    """z and w partition the edges, both are Hamiltonian, and (when tours
    are given) neither one is x or y."""
    if z.mask & w.mask or (z.mask | w.mask) != g.full_mask:
        return False
    if not (is_hamiltonian(z, g) and is_hamiltonian(w, g)):
        return False
    if x is None or y is None:
        return True
    return not any(subset_equals_tour(side, g, t) for side in (z, w) for t in (x, y))


def require_witness(
    x: Optional[Tour],
    y: Optional[Tour],
    z: EdgeSubset,
    w: EdgeSubset,
    g: UnionMultigraph,
) -> None:
    if not validate_witness(x, y, z, w, g):
        raise WitnessValidationError(f"invalid witness z={z.ids()} w={w.ids()} for n={g.n}")


class RollbackSets:
    """Union-find with undo: union by size and no path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.history: List[int] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self.history.append(-1)
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.history.append(rb)

    def undo(self) -> None:
        rb = self.history.pop()
        if rb == -1:
            return
        ra = self.parent[rb]
        self.size[ra] -= self.size[rb]
        self.parent[rb] = rb


class _Search:
    def __init__(self, g: UnionMultigraph, x: Optional[Tour], y: Optional[Tour]):
        self.g = g
        self.x, self.y = x, y
        n = g.n
        # edges sharing a low endpoint come together, so degree limits bite early
        self.order = sorted(range(len(g.edges)), key=lambda e: (min(g.edges[e].tail, g.edges[e].head), e))
        self.side = [0] * len(g.edges)
        self.out_deg = [[0] * n, [0] * n]
        self.in_deg = [[0] * n, [0] * n]
        self.count = [0, 0]
        self.closed = [False, False]
        self.sets = [RollbackSets(n), RollbackSets(n)]
        self.nodes = 0

    def _fits(self, eid: int, s: int) -> bool:
        e = self.g.edges[eid]
        if self.closed[s] or self.count[s] == self.g.n:
            return False
        if self.g.directed:
            if self.out_deg[s][e.tail] >= 1 or self.in_deg[s][e.head] >= 1:
                return False
        else:
            deg = self.out_deg[s]
            if deg[e.tail] >= 2 or deg[e.head] >= 2:
                return False
        sets = self.sets[s]
        ru, rv = sets.find(e.tail), sets.find(e.head)
        if ru == rv:
            # only the last edge of a side may close its cycle, and only a spanning one
            return sets.size[ru] == self.g.n and self.count[s] + 1 == self.g.n
        return True

    def _place(self, eid: int, s: int) -> None:
        e = self.g.edges[eid]
        self.side[eid] = s
        if self.g.directed:
            self.out_deg[s][e.tail] += 1
            self.in_deg[s][e.head] += 1
        else:
            self.out_deg[s][e.tail] += 1
            self.out_deg[s][e.head] += 1
        sets = self.sets[s]
        if sets.find(e.tail) == sets.find(e.head):
            self.closed[s] = True
        sets.union(e.tail, e.head)
        self.count[s] += 1

    def _unplace(self, eid: int, s: int) -> None:
        e = self.g.edges[eid]
        self.count[s] -= 1
        self.sets[s].undo()
        self.closed[s] = False
        if self.g.directed:
            self.out_deg[s][e.tail] -= 1
            self.in_deg[s][e.head] -= 1
        else:
            self.out_deg[s][e.tail] -= 1
            self.out_deg[s][e.head] -= 1

    def _leaf(self) -> Optional[Witness]:
        z = EdgeSubset.of(e for e, s in enumerate(self.side) if s == 0)
        w = z.complement(self.g)
        if validate_witness(self.x, self.y, z, w, self.g):
            return z, w
        return None

    def run(self, depth: int = 0) -> Optional[Witness]:
        self.nodes += 1
        if depth == len(self.order):
            return self._leaf()
        eid = self.order[depth]
        # z and w are interchangeable, so the first edge goes to z
        sides = (0,) if depth == 0 else (0, 1)
        for s in sides:
            if not self._fits(eid, s):
                continue
            self._place(eid, s)
            found = self.run(depth + 1)
            self._unplace(eid, s)
            if found is not None:
                return found
        return None


def find_complementary_in_graph(
    g: UnionMultigraph,
    x: Optional[Tour] = None,
    y: Optional[Tour] = None,
    bound: int = DEFAULT_BOUND,
) -> Optional[Witness]:
    """Exhaustive search for complementary tours in g. With x and y given,
    both tours of the answer must differ from them."""
    if g.n > bound:
        raise BoundExceeded(f"exhaustive search is limited to n <= {bound}, got n={g.n}")
    search = _Search(g, x, y)
    found = search.run()
    debug("oracle", f"🔎 n={g.n}: {condition_label(found)} after {search.nodes} nodes")
    return found


def find_complementary_exhaustive(x: Tour, y: Tour, bound: int = DEFAULT_BOUND) -> Optional[Witness]:
    if x.n > bound:
        raise BoundExceeded(f"exhaustive search is limited to n <= {bound}, got n={x.n}")
    return find_complementary_in_graph(union_multigraph(x, y), x, y, bound)


def condition_label(witness: Optional[Witness]) -> str:
    return "condition holds" if witness is not None else "condition fails"
