"""Spanning subgraphs with degree constraints.

Covers the 2-factorization of even-regular graphs, exhaustive [a,b]-factor
search, the reduction of a [k-1,k]-factor to one with no two adjacent
degree-k vertices, the matching-based Delta <= 2 subgraph of cubic graphs,
and the exact path cover number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .graph import Graph, components, euler_circuit, is_regular
from .solver import maximum_matching

PATH_COVER_MAX_N = 16


@dataclass(frozen=True)
class FactorSubgraph:
    base: Graph
    edges: frozenset[int]
    degrees: tuple[int, ...]

    @classmethod
    def from_edges(cls, base: Graph, edge_ids: Iterable[int]) -> "FactorSubgraph":
        ids = frozenset(edge_ids)
        deg = [0] * base.n
        for i in ids:
            u, v = base.edge_index.edges[i]
            deg[u] += 1
            deg[v] += 1
        return cls(base, ids, tuple(deg))

    @classmethod
    def whole(cls, g: Graph) -> "FactorSubgraph":
        return cls.from_edges(g, range(g.m))

    def as_graph(self) -> Graph:
        return self.base.subgraph_from_edges(sorted(self.edges))

    def edge_pairs(self) -> list[tuple[int, int]]:
        return [self.base.edge_index.edges[i] for i in sorted(self.edges)]

    def is_consistent(self) -> bool:
        return FactorSubgraph.from_edges(self.base, self.edges).degrees == self.degrees

    def __len__(self) -> int:
        return len(self.edges)


# 2-factorization -----------------------------------------------------------

def _bipartite_perfect_matching(n: int, arcs: dict[int, list[int]]) -> dict[int, int]:
    """Kuhn's augmenting paths on out-copies (keys) vs in-copies."""
    match_in: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for w in arcs[u]:
            if w in seen:
                continue
            seen.add(w)
            if w not in match_in or augment(match_in[w], seen):
                match_in[w] = u
                return True
        return False

    for u in sorted(arcs):
        if not augment(u, set()):
            raise RuntimeError("regular bipartite graph without a perfect matching")
    return {u: w for w, u in match_in.items()}


def two_factorization(g: Graph) -> list[FactorSubgraph]:
    """Split a 2s-regular graph into s edge-disjoint 2-factors.

    Each component is oriented along an Euler circuit, so every vertex has s
    outgoing and s incoming arcs.  The out/in split graph is s-regular
    bipartite; each of its perfect matchings gives every vertex one arc out
    and one arc in, i.e. a 2-factor.
    """
    r = is_regular(g)
    if r is None or r == 0 or r % 2:
        raise ValueError("two_factorization needs an even-regular graph with r >= 2")
    s = r // 2
    out_arcs: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for comp in components(g):
        for u, v in euler_circuit(g, comp):
            out_arcs[u].append(v)
    factors = []
    idx = g.edge_index
    for _ in range(s):
        arcs = {u: sorted(ws) for u, ws in out_arcs.items()}
        pm = _bipartite_perfect_matching(g.n, arcs)
        ids = []
        for u, w in pm.items():
            out_arcs[u].remove(w)
            ids.append(idx.id_of(u, w))
        factors.append(FactorSubgraph.from_edges(g, ids))
    return factors


# [a,b]-factors -------------------------------------------------------------

def degree_constrained_factor(g: Graph, a: int, b: int) -> Optional[FactorSubgraph]:
    """Spanning subgraph with a <= deg <= b everywhere, or ``None``.

    Backtracks over edges in id order.  The search is exhaustive, so ``None``
    certifies that no such factor exists.  Cuts: degree caps, lower-bound
    reachability per vertex, and for a == b the parity of residual demand on
    every component of the undecided edges.
    """
    if not 0 <= a <= b:
        raise ValueError(f"need 0 <= a <= b, got a={a}, b={b}")
    n = g.n
    edges = g.edge_index.edges
    m = len(edges)
    if any(d < a for d in g.degrees):
        return None
    if a == b:
        for comp in components(g):
            if a * len(comp) % 2:
                return None
    deg = [0] * n
    left = list(g.degrees)  # undecided incident edges
    chosen: list[int] = []
    undecided = [True] * m
    incident: list[list[int]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        incident[u].append(i)
        incident[v].append(i)

    def parity_ok() -> bool:
        seen = [False] * n
        for s in range(n):
            if seen[s] or left[s] == 0:
                continue
            seen[s] = True
            stack = [s]
            demand = 0
            while stack:
                x = stack.pop()
                demand += a - deg[x]
                for e in incident[x]:
                    if undecided[e]:
                        y = edges[e][0] + edges[e][1] - x
                        if not seen[y]:
                            seen[y] = True
                            stack.append(y)
            if demand % 2:
                return False
        return True

    def rec(i: int) -> bool:
        if i == m:
            return all(a <= d <= b for d in deg)
        u, v = edges[i]
        undecided[i] = False
        left[u] -= 1
        left[v] -= 1
        if deg[u] < b and deg[v] < b:
            deg[u] += 1
            deg[v] += 1
            chosen.append(i)
            if _bounds_ok(u, v, deg, left, a) and (a != b or parity_ok()) and rec(i + 1):
                return True
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
        if _bounds_ok(u, v, deg, left, a) and (a != b or parity_ok()) and rec(i + 1):
            return True
        undecided[i] = True
        left[u] += 1
        left[v] += 1
        return False

    if rec(0):
        return FactorSubgraph.from_edges(g, chosen)
    return None


def _bounds_ok(u, v, deg, left, a) -> bool:
    return deg[u] + left[u] >= a and deg[v] + left[v] >= a


# reduced [k-1,k]-factors ---------------------------------------------------

def _check_factor_range(h: FactorSubgraph, k: int) -> None:
    if k < 1:
        raise ValueError("k must be at least 1")
    bad = [v for v, d in enumerate(h.degrees) if not k - 1 <= d <= k]
    if bad:
        raise ValueError(f"not a [{k - 1},{k}]-factor: vertex {bad[0]} has degree {h.degrees[bad[0]]}")


def reduce_factor(h: FactorSubgraph, k: int) -> FactorSubgraph:
    """Delete edges joining two degree-k vertices until none remain.

    Each round removes the smallest such edge id.
    """
    _check_factor_range(h, k)
    edges = h.base.edge_index.edges
    keep = set(h.edges)
    deg = list(h.degrees)
    changed = True
    while changed:
        changed = False
        for i in sorted(keep):
            u, v = edges[i]
            if deg[u] == k and deg[v] == k:
                keep.remove(i)
                deg[u] -= 1
                deg[v] -= 1
                changed = True
                break
    return FactorSubgraph.from_edges(h.base, keep)


@dataclass
class RFactorReport:
    k: int
    degrees_ok: bool
    no_adjacent_top: bool
    line_max_degree: int
    line_degree_ok: bool
    edge_count: int
    edge_lower_bound: int
    edge_count_ok: bool
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def validate_R_factor(h: FactorSubgraph, k: int) -> RFactorReport:
    n = h.base.n
    edges = h.edge_pairs()
    degrees_ok = all(k - 1 <= d <= k for d in h.degrees)
    no_adjacent = not any(h.degrees[u] == k and h.degrees[v] == k for u, v in edges)
    line_max = max((h.degrees[u] + h.degrees[v] - 2 for u, v in edges), default=0)
    lower = (n * (k - 1) + 1) // 2
    rep = RFactorReport(
        k=k,
        degrees_ok=degrees_ok,
        no_adjacent_top=no_adjacent,
        line_max_degree=line_max,
        line_degree_ok=line_max <= 2 * k - 3,
        edge_count=len(edges),
        edge_lower_bound=lower,
        edge_count_ok=len(edges) >= lower,
    )
    if not h.is_consistent():
        rep.failures.append("stored degrees disagree with the edge set")
    if not degrees_ok:
        rep.failures.append(f"degrees outside [{k - 1},{k}]")
    if not no_adjacent:
        rep.failures.append(f"two degree-{k} vertices are adjacent")
    if not rep.line_degree_ok:
        rep.failures.append(f"line graph max degree {line_max} > {2 * k - 3}")
    if not rep.edge_count_ok:
        rep.failures.append(f"{len(edges)} edges < {lower}")
    return rep


# cubic Delta <= 2 subgraph -------------------------------------------------

def cubic_degree2_subgraph(g: Graph) -> FactorSubgraph:
    """Subgraph of a cubic graph with max degree 2 and many edges.

    Removes a maximum matching, then one remaining edge (smallest id) at every
    vertex the matching missed.  Missed vertices are pairwise non-adjacent, so
    the deletions never collide and n/2 + |M| edges survive.
    """
    if is_regular(g) != 3:
        raise ValueError("cubic_degree2_subgraph needs a 3-regular graph")
    mm = maximum_matching(g)
    keep = set(range(g.m)) - set(mm.edges)
    covered = set()
    for i in mm.edges:
        covered.update(g.edge_index.edges[i])
    edges = g.edge_index.edges
    for v in range(g.n):
        if v in covered:
            continue
        drop = min(i for i in keep if v in edges[i])
        keep.remove(drop)
    return FactorSubgraph.from_edges(g, keep)


# path cover ----------------------------------------------------------------

@dataclass(frozen=True)
class PathCover:
    size: int
    paths: tuple[tuple[int, ...], ...]


def path_cover_number(g: Graph) -> PathCover:
    """Minimum number of vertex-disjoint paths covering every vertex.

    A depth-first search for a Hamiltonian path settles the common case.
    Otherwise a subset DP records, for every vertex set spanned by some path,
    which vertices can end such a path; a memoized partition search over
    those sets then finds the optimum, stopping early once it meets the
    component count of the uncovered vertices.
    """
    n = g.n
    if n > PATH_COVER_MAX_N:
        raise ValueError(f"path cover search is capped at n={PATH_COVER_MAX_N}, got {n}")
    if n == 0:
        return PathCover(0, ())
    nbr = g.masks
    full = (1 << n) - 1
    if len(components(g)) == 1:
        ham = _hamiltonian_path(nbr, n)
        if ham is not None:
            return PathCover(1, (_orient(ham),))

    # ends[mask]: bitmask of vertices that can end a path spanning mask.
    ends: dict[int, int] = {1 << v: 1 << v for v in range(n)}
    layer = list(ends)
    while layer:
        nxt = {}
        for mask in layer:
            e = ends[mask]
            while e:
                low = e & -e
                e ^= low
                ext = nbr[low.bit_length() - 1] & ~mask
                while ext:
                    lw = ext & -ext
                    ext ^= lw
                    m2 = mask | lw
                    nxt[m2] = nxt.get(m2, 0) | lw
        for m2, e2 in nxt.items():
            ends[m2] = ends.get(m2, 0) | e2
        layer = list(nxt)

    by_low: dict[int, list[int]] = {}
    for mask in ends:
        by_low.setdefault((mask & -mask).bit_length() - 1, []).append(mask)
    for masks in by_low.values():
        masks.sort(key=lambda m: -m.bit_count())

    def n_components(mask: int) -> int:
        count = 0
        rest = mask
        while rest:
            comp = rest & -rest
            frontier = comp
            while frontier:
                grow = 0
                while frontier:
                    lb = frontier & -frontier
                    frontier ^= lb
                    grow |= nbr[lb.bit_length() - 1]
                frontier = grow & rest & ~comp
                comp |= frontier
            rest &= ~comp
            count += 1
        return count

    memo: dict[int, tuple[int, tuple[int, ...]]] = {}

    def solve(mask: int) -> tuple[int, tuple[int, ...]]:
        if mask == 0:
            return 0, ()
        if mask in memo:
            return memo[mask]
        lower = n_components(mask)
        best: tuple[int, tuple[int, ...]] = (n + 1, ())
        for pm in by_low[(mask & -mask).bit_length() - 1]:
            if pm & ~mask:
                continue
            rest = mask & ~pm
            if rest and 1 + n_components(rest) >= best[0]:
                continue
            k, parts = solve(rest)
            if 1 + k < best[0]:
                best = (1 + k, (pm,) + parts)
                if best[0] == lower:
                    break
        memo[mask] = best
        return best

    size, parts = solve(full)
    paths = tuple(sorted(_orient(_unwind(ends, nbr, pm)) for pm in parts))
    return PathCover(size, paths)


def _hamiltonian_path(nbr, n: int, limit: int = 200000):
    """Plain DFS with a node budget; ``None`` means not found (not a proof)."""
    full = (1 << n) - 1
    budget = [limit]

    def dfs(path: list[int], used: int):
        if used == full:
            return list(path)
        budget[0] -= 1
        if budget[0] < 0:
            return None
        cand = nbr[path[-1]] & ~used
        order = []
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            order.append(((nbr[w] & ~used).bit_count(), w))
        for _, w in sorted(order):
            path.append(w)
            found = dfs(path, used | 1 << w)
            if found:
                return found
            path.pop()
        return None

    starts = sorted(range(n), key=lambda v: (nbr[v].bit_count(), v))
    for s in starts:
        found = dfs([s], 1 << s)
        if found or budget[0] < 0:
            return found
    return None


def _unwind(ends, nbr, mask: int) -> list[int]:
    v = (ends[mask] & -ends[mask]).bit_length() - 1
    path = [v]
    while mask != 1 << v:
        prev = mask ^ (1 << v)
        cand = ends[prev] & nbr[v]
        u = (cand & -cand).bit_length() - 1
        path.append(u)
        mask, v = prev, u
    return path


def _orient(path) -> tuple[int, ...]:
    path = tuple(path)
    return path if path[0] <= path[-1] else path[::-1]
