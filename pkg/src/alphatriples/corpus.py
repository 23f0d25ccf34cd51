"""Desk-scale corpora of regular graphs.

Graphs come either from the internal enumerator (n <= 12) or from graph6
files.  Isomorphic duplicates are removed through ``canonical_form``.
"""

from __future__ import annotations

import logging
import re
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

from .graph import Graph, Graph6Error, is_connected, is_regular, parse_graph6, write_graph6

log = logging.getLogger(__name__)

CANON_MAX_N = 12
ENUM_MAX_N = 12


@dataclass(frozen=True)
class CorpusSpec:
    r: int
    n_min: int
    n_max: int
    connected_only: bool = True
    path: Optional[str] = None

    @property
    def source(self) -> str:
        return "file" if self.path else "enumerate"

    @classmethod
    def parse(cls, text: str, r: Optional[int] = None) -> "CorpusSpec":
        """Parse ``enum:r=R,n=A..B[,connected]`` or ``file:PATH``.

        For files the regularity is taken from ``r`` (``-1`` if unknown).
        """
        if text.startswith("file:"):
            return cls(r=-1 if r is None else r, n_min=0, n_max=0,
                       connected_only=False, path=text[5:])
        m = re.fullmatch(r"enum:r=(\d+),n=(\d+)(?:\.\.(\d+))?(,connected)?", text.strip())
        if not m:
            raise ValueError(f"cannot parse corpus spec {text!r}")
        lo = int(m.group(2))
        hi = int(m.group(3)) if m.group(3) else lo
        return cls(int(m.group(1)), lo, hi, bool(m.group(4)))

    def __str__(self) -> str:
        if self.path:
            return f"file:{self.path}"
        tail = ",connected" if self.connected_only else ""
        return f"enum:r={self.r},n={self.n_min}..{self.n_max}{tail}"


# canonical form ------------------------------------------------------------

def _refine(adj, color: list[int]) -> list[int]:
    """Color refinement to a stable coloring.

    New colors are ranks of (old color, sorted neighbor colors), so the
    result depends only on the isomorphism type of the colored graph.
    """
    k = len(set(color))
    while True:
        sig = [(color[v], tuple(sorted(color[w] for w in nbrs))) for v, nbrs in enumerate(adj)]
        rank = {s: i for i, s in enumerate(sorted(set(sig)))}
        if len(rank) == k:
            return [rank[s] for s in sig]
        color = [rank[s] for s in sig]
        k = len(rank)


def _leaf_code(masks, order: list[int]) -> int:
    # Upper triangle, row-major, of the relabeled adjacency matrix.
    n = len(order)
    code = 0
    for i, v in enumerate(order):
        row = masks[v]
        for j in range(i + 1, n):
            code = (code << 1) | (row >> order[j] & 1)
    return code


def _canonical_labeling(g: Graph) -> tuple[int, list[int]]:
    masks = g.masks
    adj = g.adj
    n = g.n
    best: list = [None, None]
    autos: list[list[int]] = []

    def orbit_reps(cell: list[int], fixed: list[int]) -> set[int]:
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in autos:
            if all(a[v] == v for v in fixed):
                for v in range(n):
                    ra, rb = find(v), find(a[v])
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
        seen = set()
        reps = set()
        for v in cell:
            root = find(v)
            if root not in seen:
                seen.add(root)
                reps.add(v)
        return reps

    def search(color: list[int], fixed: list[int]) -> None:
        color = _refine(adj, color)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(color):
            cells.setdefault(c, []).append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            order = sorted(range(n), key=color.__getitem__)
            code = _leaf_code(masks, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            elif code == best[0]:
                # order -> best order is an automorphism.
                auto = [0] * n
                for a, b in zip(order, best[1]):
                    auto[a] = b
                autos.append(auto)
            return
        cell = cells[target]
        base = [2 * c + 1 for c in color]
        explored = 0
        for v in cell:
            if explored and autos and v not in orbit_reps(cell, fixed):
                continue
            explored += 1
            child = base[:]
            child[v] -= 1
            search(child, fixed + [v])

    search([g.degree(v) for v in range(n)], [])
    return best[0] if best[0] is not None else 0, best[1] or []


def canonical_form(g: Graph) -> bytes:
    """Isomorphism certificate: equal for two graphs iff they are isomorphic."""
    if g.n > CANON_MAX_N:
        raise ValueError(f"canonical form is capped at n={CANON_MAX_N}, got {g.n}")
    code, _ = _canonical_labeling(g)
    nbits = g.n * (g.n - 1) // 2
    return bytes([g.n]) + code.to_bytes((nbits + 7) // 8, "big")


def canonical_relabel(g: Graph) -> Graph:
    """The representative of ``g``'s isomorphism class that the certificate encodes."""
    _, order = _canonical_labeling(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


class CanonicalStore:
    """Thread-safe insert-if-absent set of certificates."""

    def __init__(self):
        self._seen: set[bytes] = set()
        self._lock = threading.Lock()

    def add(self, cert: bytes) -> bool:
        with self._lock:
            if cert in self._seen:
                return False
            self._seen.add(cert)
            return True

    def __len__(self) -> int:
        return len(self._seen)


# enumeration ---------------------------------------------------------------

def _labeled_regular(n: int, r: int, connected: bool) -> Iterator[list[int]]:
    """Backtrack over adjacency rows in vertex order.

    Unprocessed vertices that look identical to every processed row are
    interchangeable, so within such a class only a prefix may be chosen.
    """
    adj = [0] * n
    deg = [0] * n

    def rec(i: int) -> Iterator[list[int]]:
        if i == n:
            yield adj[:]
            return
        need = r - deg[i]
        if connected and i > 0 and deg[i] == 0:
            return
        if need == 0:
            yield from rec(i + 1)
            return
        low = (1 << i) - 1
        classes: dict[int, list[int]] = {}
        for j in range(i + 1, n):
            if deg[j] < r:
                classes.setdefault(adj[j] & low, []).append(j)
        groups = list(classes.values())

        def choose(gi: int, left: int, picked: list[int]) -> Iterator[list[int]]:
            if left == 0:
                for j in picked:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
                    deg[j] += 1
                deg[i] = r
                if _feasible(i, n, r, deg):
                    yield from rec(i + 1)
                deg[i] = r - need
                for j in picked:
                    adj[i] &= ~(1 << j)
                    adj[j] &= ~(1 << i)
                    deg[j] -= 1
                return
            if gi == len(groups):
                return
            grp = groups[gi]
            for t in range(min(left, len(grp)), -1, -1):
                yield from choose(gi + 1, left - t, picked + grp[:t])

        yield from choose(0, need, [])

    yield from rec(0)


def _vertex_invariants(rows: list[int]) -> list[tuple[int, int]]:
    # (2 * triangles at v, 4-cycles through v)
    n = len(rows)
    out = []
    for v in range(n):
        nv = rows[v]
        tri = 0
        m = nv
        while m:
            low = m & -m
            m ^= low
            tri += (rows[low.bit_length() - 1] & nv).bit_count()
        quad = 0
        for u in range(n):
            if u != v:
                c = (rows[u] & nv).bit_count()
                quad += c * (c - 1) // 2
        out.append((tri, quad))
    return out


def _leading_pair_ok(rows: list[int]) -> bool:
    """Cheap symmetry cut applied to finished labelings.

    The row-prefix rule lets any vertex take label 0 and any of its
    neighbors take label 1, so it is enough to keep labelings where 0 has
    the largest invariant overall and 1 the largest among 0's neighbors.
    """
    inv = _vertex_invariants(rows)
    if inv[0] != max(inv):
        return False
    if rows[0] & 2:
        top = max(inv[w] for w in range(len(rows)) if rows[0] >> w & 1)
        return inv[1] == top
    return True


def _feasible(i: int, n: int, r: int, deg: list[int]) -> bool:
    room = n - i - 2
    total = 0
    for j in range(i + 1, n):
        d = r - deg[j]
        if d > room:
            return False
        total += d
    return total % 2 == 0


def enumerate_regular(spec: CorpusSpec) -> Iterator[Graph]:
    """One graph per isomorphism class of r-regular graphs in the order range.

    Graphs are yielded in canonical labeling, sorted by (n, certificate) so
    repeated runs agree.
    """
    if spec.path:
        raise ValueError("file corpora are read with ingest_graph6_file")
    if spec.n_max > ENUM_MAX_N:
        raise ValueError(
            f"internal enumeration is capped at n={ENUM_MAX_N}; use a graph6 file instead"
        )
    r = spec.r
    for n in range(max(spec.n_min, 1), spec.n_max + 1):
        if r >= n:
            continue
        if n * r % 2:
            log.info("skipping n=%d: n*r is odd for r=%d", n, r)
            continue
        found: dict[bytes, Graph] = {}
        for rows in _labeled_regular(n, r, spec.connected_only):
            if not _leading_pair_ok(rows):
                continue
            g = Graph(n, tuple(tuple(v for v in range(n) if row >> v & 1) for row in rows))
            if spec.connected_only and not is_connected(g):
                continue
            cert = canonical_form(g)
            if cert not in found:
                found[cert] = g
        for cert in sorted(found):
            yield canonical_relabel(found[cert])


def ingest_graph6_file(path, strict: bool = True) -> Iterator[Graph]:
    """Graphs of a graph6 file in file order.

    In strict mode the first bad line raises ``Graph6Error`` naming its line
    number; otherwise bad lines are logged and skipped.  Blank lines are
    ignored.
    """
    with open(path, encoding="ascii", errors="replace") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            try:
                yield parse_graph6(text)
            except Graph6Error as exc:
                if strict:
                    raise Graph6Error(f"{path}:{lineno}: {exc}") from exc
                log.warning("%s:%d: skipped: %s", path, lineno, exc)


def write_graph6_file(graphs, path) -> int:
    count = 0
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for g in graphs:
            fh.write(write_graph6(g) + "\n")
            count += 1
    return count


def load_corpus(spec: CorpusSpec) -> list[Graph]:
    """Materialize a corpus; file corpora are filtered by regularity if known."""
    if not spec.path:
        return list(enumerate_regular(spec))
    graphs = list(ingest_graph6_file(Path(spec.path)))
    if spec.r >= 0:
        bad = [i for i, g in enumerate(graphs) if is_regular(g) != spec.r]
        if bad:
            raise ValueError(
                f"{spec.path}: graph #{bad[0] + 1} is not {spec.r}-regular"
            )
    return graphs
