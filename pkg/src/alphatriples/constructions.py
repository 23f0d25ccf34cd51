"""Deterministic generators for the witness families and small named graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .graph import Graph


class Kind(str, Enum):
    SHARP_BIPARTITE = "SharpBipartite"
    FACTORLESS_REGULAR = "FactorlessRegular"
    P3_PACKING = "P3Packing"
    NAMED = "Named"


@dataclass(frozen=True)
class ConstructionRecipe:
    """How to rebuild a witness, plus the properties it is claimed to have."""

    kind: Kind
    params: tuple = ()
    expected: tuple[str, ...] = field(default=(), compare=False)

    def build(self) -> Graph:
        if self.kind is Kind.SHARP_BIPARTITE:
            return sharpness_bipartite(*self.params)
        if self.kind is Kind.FACTORLESS_REGULAR:
            return factorless_regular(*self.params)
        if self.kind is Kind.P3_PACKING:
            return p3_packing_graph(*self.params)
        return named_graph(*self.params)

    def label(self) -> str:
        args = ",".join(str(p) for p in self.params)
        return f"{self.kind.value}({args})"


def round_robin_one_factorization(order: int) -> list[list[tuple[int, int]]]:
    """Circle-method 1-factorization of K_order (order even)."""
    if order < 2 or order % 2:
        raise ValueError(f"1-factorization needs an even order >= 2, got {order}")
    last = order - 1
    rounds = []
    for i in range(last):
        pairs = [(min(i, last), max(i, last))]
        for k in range(1, order // 2):
            a = (i + k) % last
            b = (i - k) % last
            pairs.append((min(a, b), max(a, b)))
        rounds.append(sorted(pairs))
    return rounds


def sharpness_bipartite(r: int, p: int, t: int = 1) -> Graph:
    """r-regular graph whose side A is a p-independent set of size nr/(2r-p).

    Built from 2t copies of K_{r,r-p}: each copy contributes r vertices to A
    (degree r-p) and r-p vertices to B (degree r).  Copies are taken in pairs
    and the first p rounds of a 1-factorization of the paired A vertices
    lift every A vertex to degree r.  Layout per pair: A vertices of both
    copies first, then the B vertices of both copies.
    """
    if not 1 <= p < r:
        raise ValueError(f"need 1 <= p < r, got p={p}, r={r}")
    if t < 1:
        raise ValueError("t must be at least 1")
    b = r - p
    block = 2 * (r + b)
    matchings = round_robin_one_factorization(2 * r)[:p]
    edges = []
    for pair in range(t):
        base = pair * block
        a_side = [base + i for i in range(2 * r)]
        b_side = [base + 2 * r + i for i in range(2 * b)]
        for c in range(2):
            for x in a_side[c * r:(c + 1) * r]:
                for y in b_side[c * b:(c + 1) * b]:
                    edges.append((x, y))
        for mt in matchings:
            for x, y in mt:
                edges.append((a_side[x], a_side[y]))
    return Graph.from_edges(t * block, edges)


def sharpness_a_side(r: int, p: int, t: int = 1) -> list[int]:
    """The p-independent side A of ``sharpness_bipartite(r, p, t)``."""
    block = 2 * (2 * r - p)
    return [pair * block + i for pair in range(t) for i in range(2 * r)]


def factorless_regular(k: int) -> Graph:
    """Connected k-regular graph (k odd) on k(k+2)+1 vertices with no 2-factor.

    Each of k blocks is K_{k+2} minus a path a-c-b and minus a perfect
    matching on the remaining k-1 vertices, so c has degree k-1 and every
    other block vertex degree k.  A hub vertex (the last one) joins every c.
    Block j uses vertices j(k+2)..j(k+2)+k+1 with c first.
    """
    if k < 3 or k % 2 == 0:
        raise ValueError(f"factorless_regular needs odd k >= 3, got {k}")
    size = k + 2
    hub = k * size
    edges = []
    for j in range(k):
        off = j * size
        missing = {(0, 1), (0, 2)}
        for x in range(3, size, 2):
            missing.add((x, x + 1))
        for x in range(size):
            for y in range(x + 1, size):
                if (x, y) not in missing:
                    edges.append((off + x, off + y))
        edges.append((off, hub))
    return Graph.from_edges(hub + 1, edges)


def p3_packing_graph(x: int) -> Graph:
    """x disjoint copies of the path on three vertices."""
    if x < 1:
        raise ValueError("x must be at least 1")
    edges = []
    for i in range(x):
        edges += [(3 * i, 3 * i + 1), (3 * i + 1, 3 * i + 2)]
    return Graph.from_edges(3 * x, edges)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("a path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both sides need at least one vertex")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def prism_graph(k: int) -> Graph:
    """C_k x K_2."""
    if k < 3:
        raise ValueError("a prism needs k >= 3")
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)]
    return Graph.from_edges(2 * k, edges)


def perfect_matching_graph(pairs: int) -> Graph:
    """``pairs`` disjoint copies of K_2 (the 1-regular graphs)."""
    if pairs < 1:
        raise ValueError("need at least one edge")
    return Graph.from_edges(2 * pairs, [(2 * i, 2 * i + 1) for i in range(pairs)])


_NAMED = {
    "petersen": (petersen_graph, 0),
    "complete": (complete_graph, 1),
    "cycle": (cycle_graph, 1),
    "path": (path_graph, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "prism": (prism_graph, 1),
    "matching": (perfect_matching_graph, 1),
}

NAMED_GRAPHS = tuple(_NAMED)


def named_graph(name: str, *params: int) -> Graph:
    """Look up a named family, e.g. ``named_graph("cycle", 7)``."""
    try:
        fn, arity = _NAMED[name]
    except KeyError:
        raise ValueError(f"unknown graph name {name!r}; known: {', '.join(_NAMED)}") from None
    if len(params) != arity:
        raise ValueError(f"{name} takes {arity} size parameter(s), got {len(params)}")
    return fn(*params)
