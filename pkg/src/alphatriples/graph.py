"""Simple undirected graphs, the graph6 codec, line graphs and Euler circuits.

Vertices are the integers ``0..n-1``.  Every structure here is immutable once
built, so instances can be shared freely between worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

GRAPH6_HEADER = ">>graph6<<"
GRAPH6_MAX_N = 258047


class Graph6Error(ValueError):
    """Raised for malformed graph6 input or graphs outside the codec range."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]
    m: int = field(init=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError(f"adjacency has {len(self.adj)} rows, expected {self.n}")
        total = 0
        for u, nbrs in enumerate(self.adj):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"neighbors of {u} must be sorted and distinct")
            for v in nbrs:
                if v == u:
                    raise ValueError(f"self-loop at {u}")
                if not 0 <= v < self.n:
                    raise ValueError(f"vertex {v} out of range")
                if u not in self.adj[v]:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
            total += len(nbrs)
        object.__setattr__(self, "m", total // 2)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(() for _ in range(n)))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighborhoods as integer bitmasks (bit v set for each neighbor v)."""
        out = []
        for nbrs in self.adj:
            mask = 0
            for v in nbrs:
                mask |= 1 << v
            out.append(mask)
        return tuple(out)

    @cached_property
    def edge_index(self) -> "EdgeIndex":
        return EdgeIndex.of(self)

    def edges(self) -> list[tuple[int, int]]:
        return list(self.edge_index.edges)

    def subgraph_from_edges(self, edge_ids: Iterable[int]) -> "Graph":
        """Spanning subgraph keeping only the given edge ids."""
        edges = self.edge_index.edges
        return Graph.from_edges(self.n, (edges[i] for i in edge_ids))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class EdgeIndex:
    """Lexicographically ordered edge list with reverse lookup."""

    edges: tuple[tuple[int, int], ...]
    lookup: dict[tuple[int, int], int] = field(compare=False, repr=False)

    @classmethod
    def of(cls, g: Graph) -> "EdgeIndex":
        edges = tuple((u, v) for u in range(g.n) for v in g.adj[u] if u < v)
        return cls(edges, {e: i for i, e in enumerate(edges)})

    def id_of(self, u: int, v: int) -> int:
        return self.lookup[(u, v) if u < v else (v, u)]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class LineGraphMap:
    base: Graph
    lg: Graph
    idx: EdgeIndex

    def to_base_edges(self, vertices: Iterable[int]) -> list[tuple[int, int]]:
        return [self.idx.edges[i] for i in vertices]


def line_graph(g: Graph) -> LineGraphMap:
    """Line graph of ``g``; vertex ``i`` of the result is ``g.edges()[i]``."""
    if g.m == 0:
        raise ValueError("line graph of an edgeless graph is undefined")
    idx = g.edge_index
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(idx.edges):
        incident[u].append(i)
        incident[v].append(i)
    nbrs: list[set[int]] = [set() for _ in range(len(idx))]
    for ids in incident:
        for a in ids:
            for b in ids:
                if a != b:
                    nbrs[a].add(b)
    lg = Graph(len(idx), tuple(tuple(sorted(s)) for s in nbrs))
    return LineGraphMap(g, lg, idx)


def is_regular(g: Graph) -> Optional[int]:
    """Common degree of ``g`` if all degrees agree, else ``None``."""
    degs = set(g.degrees)
    if len(degs) == 1:
        return degs.pop()
    if g.n == 0:
        return 0
    return None


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for v in g.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    stack.append(v)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def euler_circuit(g: Graph, component: Iterable[int]) -> list[tuple[int, int]]:
    """Closed trail through every edge of ``component`` (Hierholzer).

    Returned as directed steps ``(u, v)``; each step starts where the previous
    one ended and the last step returns to the first vertex.  The walk always
    leaves a vertex through its smallest unused neighbor.
    """
    comp = sorted(set(component))
    if not comp:
        raise ValueError("empty component")
    members = set(comp)
    for v in comp:
        if len(g.adj[v]) % 2:
            raise ValueError(f"vertex {v} has odd degree {len(g.adj[v])}")
        if any(w not in members for w in g.adj[v]):
            raise ValueError(f"vertex {v} has neighbors outside the component")
    reach = set()
    stack = [comp[0]]
    while stack:
        u = stack.pop()
        if u in reach:
            continue
        reach.add(u)
        stack.extend(g.adj[u])
    if reach != members:
        raise ValueError("component is not connected")

    unused = {v: list(g.adj[v]) for v in comp}
    pos = {v: 0 for v in comp}
    used_edges: set[tuple[int, int]] = set()

    def next_neighbor(u: int) -> Optional[int]:
        nbrs = unused[u]
        i = pos[u]
        while i < len(nbrs):
            w = nbrs[i]
            if (min(u, w), max(u, w)) not in used_edges:
                pos[u] = i
                return w
            i += 1
        pos[u] = i
        return None

    circuit: list[int] = []
    stack = [comp[0]]
    while stack:
        u = stack[-1]
        w = next_neighbor(u)
        if w is None:
            circuit.append(stack.pop())
        else:
            used_edges.add((min(u, w), max(u, w)))
            stack.append(w)
    circuit.reverse()
    return list(zip(circuit, circuit[1:]))


# graph6 -------------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n < 0 or n > GRAPH6_MAX_N:
        raise Graph6Error(f"n={n} outside the supported graph6 range 0..{GRAPH6_MAX_N}")
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def write_graph6(g: Graph) -> str:
    """Encode ``g`` as a graph6 string (no header, no newline)."""
    bits = []
    for j in range(1, g.n):
        row = g.masks[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        body.append(chr(x + 63))
    return _encode_n(g.n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line.  A leading ``>>graph6<<`` header is ignored."""
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise Graph6Error("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside the graph6 range")
    data = [ord(ch) - 63 for ch in s]
    if data[0] < 63:
        n, body = data[0], data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        if n < 63:
            raise Graph6Error("long-form length field used for n < 63")
        body = data[4:]
    else:
        raise Graph6Error("malformed or unsupported length field")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(
            f"payload has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}"
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)
