"""Exact p-independence numbers, q-matching numbers and maximum matchings.

A set S is p-independent when every vertex of S has at most p neighbors in S.
``alpha_p_exact`` is a branch-and-bound search over bitmasks; the brute-force
routine is deliberately naive and exists only to cross-check it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Graph, line_graph

BRUTEFORCE_MAX_N = 28


@dataclass(frozen=True)
class IndependenceResult:
    value: int
    witness: tuple[int, ...]
    p: int
    stats: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class MatchingResult:
    size: int
    edges: tuple[int, ...]


def is_p_independent(g: Graph, vertices, p: int) -> bool:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return all((g.masks[v] & mask).bit_count() <= p for v in vertices)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _counting_bound(nbr, cand: int, cap: dict) -> int:
    # Each chosen t in T sends >= d(t) - cap(t) edges out of T, and the rest of
    # the candidates absorb at most sum of their degrees.  Take the longest
    # prefix of sorted weights d + (d - cap)^+ that fits into 2m(H).
    weights = []
    total = 0
    m = cand
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        d = (nbr[v] & cand).bit_count()
        total += d
        slack = d - cap[v]
        weights.append(d + slack if slack > 0 else d)
    weights.sort()
    k = 0
    acc = 0
    for w in weights:
        acc += w
        if acc > total:
            break
        k += 1
    return k


def _clique_bound(nbr, cand: int, cap: dict) -> int:
    # Greedy clique partition; a clique holds at most max(cap)+1 chosen vertices.
    bound = 0
    rest = cand
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        clique = low
        common = nbr[v] & rest
        top = cap[v]
        while common:
            lw = common & -common
            w = lw.bit_length() - 1
            clique |= lw
            common &= nbr[w]
            if cap[w] > top:
                top = cap[w]
        rest &= ~clique
        size = clique.bit_count()
        bound += size if size < top + 1 else top + 1
    return bound


def alpha_p_exact(g: Graph, p: int) -> IndependenceResult:
    """Maximum p-independent set by branch and bound.

    Branches include-first on an undecided vertex of largest degree among the
    undecided vertices (ties to the smallest id).  Candidates are kept
    feasible: a vertex stays undecided only while adding it would keep the
    chosen set p-independent.
    """
    if p < 0:
        raise ValueError("p must be non-negative")
    n = g.n
    if n == 0:
        return IndependenceResult(0, (), p, {"nodes": 0})
    nbr = g.masks
    full = (1 << n) - 1
    if p >= g.max_degree:
        return IndependenceResult(n, tuple(range(n)), p, {"nodes": 0})

    cnt = [0] * n
    best_size = 0
    best_mask = 0
    nodes = 0

    # Greedy warm start: repeatedly take the feasible vertex of fewest
    # candidate neighbors.
    chosen = 0
    cand = full
    gcnt = [0] * n
    while cand:
        v = min(_bits(cand), key=lambda x: ((nbr[x] & cand).bit_count(), x))
        chosen, cand = _include(nbr, gcnt, p, chosen, cand, v)
    best_size, best_mask = chosen.bit_count(), chosen

    def rec(chosen: int, cand: int) -> None:
        nonlocal best_size, best_mask, nodes
        nodes += 1
        size = chosen.bit_count()
        if not cand:
            if size > best_size or (size == best_size and _lex_less(chosen, best_mask)):
                best_size, best_mask = size, chosen
            return
        if size + cand.bit_count() <= best_size:
            return
        cap = {v: p - cnt[v] for v in _bits(cand)}
        if size + _counting_bound(nbr, cand, cap) <= best_size:
            return
        if size + _clique_bound(nbr, cand, cap) <= best_size:
            return
        v = -1
        dv = -1
        m = cand
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            du = (nbr[u] & cand).bit_count()
            if du > dv:
                v, dv = u, du
        saved = cnt[:]
        new_chosen, new_cand = _include(nbr, cnt, p, chosen, cand, v)
        rec(new_chosen, new_cand)
        cnt[:] = saved
        rec(chosen, cand & ~(1 << v))

    rec(0, full)
    witness = tuple(_bits(best_mask))
    return IndependenceResult(best_size, witness, p, {"nodes": nodes})


def _lex_less(a: int, b: int) -> bool:
    return _bits(a) < _bits(b)


def _include(nbr, cnt, p, chosen, cand, v):
    """Add ``v`` to ``chosen`` and drop candidates that became infeasible."""
    chosen |= 1 << v
    cand &= ~(1 << v)
    m = nbr[v]
    drop = 0
    while m:
        low = m & -m
        w = low.bit_length() - 1
        m ^= low
        cnt[w] += 1
        if chosen & low:
            if cnt[w] == p:
                drop |= nbr[w]
        elif cnt[w] > p:
            drop |= low
    if cnt[v] >= p:
        drop |= nbr[v]
    return chosen, cand & ~drop


def alpha_p_bruteforce(g: Graph, p: int) -> IndependenceResult:
    """Enumerate every p-independent set in vertex order.

    Only two cutoffs are used: a branch stops extending once its set is no
    longer p-independent (supersets cannot become p-independent again), and
    a branch is abandoned when even taking all remaining vertices would not
    beat the best set seen.
    """
    if p < 0:
        raise ValueError("p must be non-negative")
    if g.n > BRUTEFORCE_MAX_N:
        raise ValueError(f"brute force is capped at n={BRUTEFORCE_MAX_N}, got {g.n}")
    n = g.n
    nbr = g.masks
    best = [0, ()]
    nodes = 0

    def ok(members: list[int], mask: int) -> bool:
        return all((nbr[u] & mask).bit_count() <= p for u in members)

    def rec(i: int, members: list[int], mask: int) -> None:
        nonlocal nodes
        nodes += 1
        if len(members) + (n - i) <= best[0]:
            return
        if i == n:
            best[0], best[1] = len(members), tuple(members)
            return
        members.append(i)
        if ok(members, mask | 1 << i):
            rec(i + 1, members, mask | 1 << i)
        members.pop()
        rec(i + 1, members, mask)

    rec(0, [], 0)
    return IndependenceResult(best[0], best[1], p, {"nodes": nodes})


def mu_q(g: Graph, q: int) -> IndependenceResult:
    """Maximum q-matching of ``g``, solved as alpha_q of its line graph.

    The witness lists edge ids of ``g`` (its lexicographic edge order).
    """
    lm = line_graph(g)
    return alpha_p_exact(lm.lg, q)


def maximum_matching(g: Graph) -> MatchingResult:
    """Edmonds' blossom algorithm, O(n^3)."""
    n = g.n
    adj = g.adj
    match = [-1] * n
    for u in range(n):
        if match[u] == -1:
            for v in adj[u]:
                if match[v] == -1:
                    match[u], match[v] = v, u
                    break

    def find_path(root: int) -> tuple[int, list[int]]:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v: int, b: int, child: int, blossom: list) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to, parent
                    used[match[to]] = True
                    queue.append(match[to])
        return -1, parent

    for root in range(n):
        if match[root] != -1:
            continue
        v, parent = find_path(root)
        while v != -1:
            pv = parent[v]
            nxt = match[pv]
            match[v], match[pv] = pv, v
            v = nxt

    edges = sorted(g.edge_index.id_of(u, match[u]) for u in range(n) if match[u] > u)
    return MatchingResult(len(edges), tuple(edges))


def upper_bound_alpha_p(n: int, r: int, p: int) -> Fraction:
    """nr/(2r-p): the counting bound on alpha_p for r-regular graphs."""
    _check_regular_params(n, r, p)
    return Fraction(n * r, 2 * r - p)


def upper_bound_alpha_p_below_r(n: int, r: int, p: int) -> Fraction:
    """nr/(r+1), valid whenever p < r."""
    _check_regular_params(n, r, p)
    if p >= r:
        raise ValueError("the nr/(r+1) bound needs p < r")
    return Fraction(n * r, r + 1)


def _check_regular_params(n: int, r: int, p: int) -> None:
    if r < 1:
        raise ValueError("r must be at least 1")
    if not 0 <= p <= r:
        raise ValueError(f"need 0 <= p <= r, got p={p}, r={r}")
    if n < r + 1:
        raise ValueError(f"an r-regular graph needs n >= r+1, got n={n}, r={r}")


def lower_bound_matching(n: int, r: int) -> Fraction:
    """((r^3 - r^2 - 2)n - 2r + 2) / (2(r^3 - 3r)) for odd r >= 3.

    At r = 3 this is (4n - 1)/9.
    """
    if r < 3 or r % 2 == 0:
        raise ValueError(f"matching lower bound needs odd r >= 3, got r={r}")
    return Fraction((r**3 - r**2 - 2) * n - 2 * r + 2, 2 * (r**3 - 3 * r))
