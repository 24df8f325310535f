"""Small simple labeled graphs and the families used throughout: stars,
paths, cycles, complete graphs and caterpillars.

Vertices are numbered 1..n. Vertex subsets cross the API boundary as
ordinary Python sets; internally they travel as bit masks (bit i-1 stands
for vertex i), which is what keeps the subset dynamic programming in
`assembly` cheap. Graphs never change after construction.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator

MAX_VERTICES = 64


def vertex_mask(vertices: Iterable[int]) -> int:
    """Pack 1-based vertex numbers into a bit mask."""
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def mask_vertices(mask: int) -> frozenset[int]:
    """Unpack a bit mask into 1-based vertex numbers."""
    return frozenset(iter_bits(mask))


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the 1-based positions of the set bits, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


class Graph:
    """Immutable simple undirected graph on vertices 1..n."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if not 1 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
        canonical = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u} is not allowed")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u},{v}) outside vertex range 1..{n}")
            canonical.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = tuple(sorted(canonical))
        adj = [0] * (n + 1)
        for u, v in self.edges:
            adj[u] |= 1 << (v - 1)
            adj[v] |= 1 << (u - 1)
        self._adj = tuple(adj)

    def vertices(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1))

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def adjacency_mask(self, v: int) -> int:
        """Neighborhood of v as a bit mask."""
        self._check_vertex(v)
        return self._adj[v]

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return mask_vertices(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self._adj[u] >> (v - 1) & 1)

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} outside range 1..{self.n}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)!r})"


def connected_mask(g: Graph, mask: int) -> bool:
    """Is the subgraph induced by the masked vertex set connected?"""
    if mask == 0:
        raise ValueError("empty vertex set")
    seen = mask & -mask
    frontier = seen
    while frontier:
        reach = 0
        for v in iter_bits(frontier):
            reach |= g._adj[v]
        frontier = reach & mask & ~seen
        seen |= frontier
    return seen == mask


def crossing_mask(g: Graph, a_mask: int, b_mask: int) -> bool:
    """Does any edge of g run between the two masked vertex sets?"""
    for v in iter_bits(a_mask):
        if g._adj[v] & b_mask:
            return True
    return False


def is_connected_induced(g: Graph, vertices: Iterable[int]) -> bool:
    """Does the given nonempty vertex set induce a connected subgraph?"""
    s = frozenset(vertices)
    if not s:
        raise ValueError("empty vertex set")
    for v in s:
        g._check_vertex(v)
    return connected_mask(g, vertex_mask(s))


def has_crossing_edge(g: Graph, a: Iterable[int], b: Iterable[int]) -> bool:
    """Does any edge of g join the two disjoint nonempty vertex sets?"""
    sa, sb = frozenset(a), frozenset(b)
    if not sa or not sb:
        raise ValueError("both vertex sets must be nonempty")
    overlap = sa & sb
    if overlap:
        raise ValueError(f"vertex sets overlap: {sorted(overlap)}")
    for v in sa | sb:
        g._check_vertex(v)
    return crossing_mask(g, vertex_mask(sa), vertex_mask(sb))


def star(total: int) -> Graph:
    """Star on `total` vertices: center 1 joined to leaves 2..total."""
    if total < 2:
        raise ValueError("a star needs at least 2 vertices")
    return Graph(total, [(1, v) for v in range(2, total + 1)])


def path(n: int) -> Graph:
    """Path 1 - 2 - ... - n."""
    if n < 1:
        raise ValueError("a path needs at least 1 vertex")
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    """Cycle 1 - 2 - ... - n - 1. Needs n >= 3; the 1- and 2-vertex
    "cycles" appearing as base cases of the counting recursions are values,
    not graphs."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def complete(n: int) -> Graph:
    """Complete graph on n vertices."""
    if n < 1:
        raise ValueError("a complete graph needs at least 1 vertex")
    return Graph(n, [(u, v) for u in range(1, n) for v in range(u + 1, n + 1)])


def caterpillar(spine: int, legs: Iterable[int]) -> Graph:
    """Path on `spine` vertices with legs[i] pendant vertices hanging off
    spine vertex i+1.

    Spine vertices are numbered first (1..spine), then pendants in spine
    order, so caterpillar(1, [k]) is star(k + 1) up to labels.
    """
    legs = list(legs)
    if spine < 1:
        raise ValueError("a caterpillar needs at least 1 spine vertex")
    if len(legs) != spine:
        raise ValueError(f"need one leg count per spine vertex, got {len(legs)} for spine {spine}")
    if any(c < 0 for c in legs):
        raise ValueError("leg counts must be nonnegative")
    edges = [(i, i + 1) for i in range(1, spine)]
    nxt = spine + 1
    for i, count in enumerate(legs, start=1):
        for _ in range(count):
            edges.append((i, nxt))
            nxt += 1
    return Graph(spine + sum(legs), edges)


def graph_to_json(g: Graph) -> str:
    """Serialize as {"n": ..., "edges": [[u, v], ...]} with sorted edges."""
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]}, separators=(",", ":"))


def graph_from_json(text: str) -> Graph:
    """Inverse of graph_to_json. Malformed input raises ValueError."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("n"), int):
        raise ValueError('graph JSON must be an object with an integer "n"')
    raw_edges = data.get("edges", [])
    if not isinstance(raw_edges, list):
        raise ValueError('"edges" must be a list of [u, v] pairs')
    edges = []
    for item in raw_edges:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, int) for x in item)
        ):
            raise ValueError(f"bad edge entry {item!r}; expected [u, v]")
        edges.append((item[0], item[1]))
    return Graph(data["n"], edges)
