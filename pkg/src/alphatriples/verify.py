"""Triple classification, corpus verification, counterexample search, reports.

A triple (p, q, r) is valid when alpha_p(G) <= alpha_q(L(G)) for every
r-regular G.  ``classify_triple`` encodes what is known; the other entry
points check those claims against exact computations on concrete graphs.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .constructions import ConstructionRecipe, Kind
from .corpus import CorpusSpec, load_corpus
from .factors import PATH_COVER_MAX_N, cubic_degree2_subgraph, path_cover_number
from .graph import Graph, is_connected, is_regular, line_graph, parse_graph6, write_graph6
from .solver import (
    alpha_p_exact,
    lower_bound_matching,
    maximum_matching,
    upper_bound_alpha_p,
    upper_bound_alpha_p_below_r,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = "alphatriples.report/1"
# Exact solves on line graphs larger than this are treated as out of range.
DEFAULT_MAX_LINE_VERTICES = 40
K_RANGE = range(5)


class Status(str, Enum):
    VALID = "ValidByTheorem"
    INVALID = "InvalidWithWitnessFamily"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class TripleVerdict:
    p: int
    q: int
    r: int
    status: Status
    provenance: str
    witness: Optional[ConstructionRecipe] = None
    note: str = ""

    def witness_graph6(self) -> Optional[str]:
        return write_graph6(self.witness.build()) if self.witness else None

    def as_row(self, with_graph6: bool = True) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "r": self.r,
            "status": self.status.value,
            "provenance": self.provenance,
            "witness": self.witness.label() if self.witness else "",
            "witness_graph6": (self.witness_graph6() or "") if with_graph6 else "",
            "note": self.note,
        }


# classification ------------------------------------------------------------

_OPEN_Q2_NOTE = (
    "holds if the linear arboricity conjecture or the path-cover conjecture "
    "holds for r; the threshold used is 17(p+1)/16 (one passage of the source "
    "prints 17(p+1)/6)"
)


def _dense_witness(r: int, p: int) -> ConstructionRecipe:
    """Witness whose p-independence number is far above n/2 or 2n/3."""
    if 1 <= p < r:
        return ConstructionRecipe(Kind.SHARP_BIPARTITE, (r, p, 1), ("regular", "alpha_p=nr/(2r-p)"))
    return ConstructionRecipe(Kind.NAMED, ("complete", r + 1), ("regular", "alpha_p=n"))


def classify_triple(p: int, q: int, r: int) -> TripleVerdict:
    """Decide (p, q, r) from the known results, in a fixed rule order."""
    if p < 0 or q < 0 or r < 1:
        raise ValueError(f"need p, q >= 0 and r >= 1, got ({p}, {q}, {r})")

    def verdict(status, provenance, witness=None, note=""):
        return TripleVerdict(p, q, r, status, provenance, witness, note)

    if r == 1:
        if p == 0:
            return verdict(Status.VALID, "r=1: disjoint edges, alpha_0(G) = alpha_q(L(G)) = n/2")
        return verdict(
            Status.INVALID,
            "r=1: alpha_p(G) = n while L(G) is n/2 isolated vertices",
            ConstructionRecipe(Kind.NAMED, ("matching", 1), ("1-regular",)),
        )
    if q == 0:
        if p == 0:
            return verdict(Status.VALID, "q=0: alpha(G) <= mu(G) for regular G")
        return verdict(
            Status.INVALID,
            "q=0: alpha_p = nr/(2r-p) > n/2 >= mu on the sharp counting-bound graphs",
            _dense_witness(r, p),
        )
    if q >= 3:
        return verdict(Status.VALID, "q>=3: a reduced [2,3]-factor has >= n edges and line degree <= 3")
    if q == 2 and r % 2 == 0:
        return verdict(Status.VALID, "q=2, r even: a 2-factor gives n edges of line degree 2")
    if p <= q:
        return verdict(Status.VALID, "p<=q<=2: Hall matching extends a maximum p-independent set")
    if q == 2:
        # r odd >= 3, p >= 3
        if 16 * r >= 17 * (p + 1):
            return verdict(
                Status.VALID,
                "q=2, r odd, 16r >= 17(p+1): nr/(2r-p) <= (17n-2)/18 <= alpha_2(L(G))",
            )
        if r <= p:
            return verdict(
                Status.INVALID,
                "q=2, r odd, r <= p: alpha_p = n but alpha_2(L(G)) < n without a 2-factor",
                ConstructionRecipe(Kind.FACTORLESS_REGULAR, (r,), ("regular", "no 2-factor")),
            )
        return verdict(Status.UNKNOWN, "open: q=2, r odd, p+1 <= r < 17(p+1)/16", note=_OPEN_Q2_NOTE)
    # q == 1, p >= 2, r >= 2
    if r == 2:
        return verdict(
            Status.INVALID,
            "q=1, r=2: alpha_p(C_n) = n while alpha_1(L(C_n)) < n",
            ConstructionRecipe(Kind.NAMED, ("cycle", 4), ("2-regular",)),
        )
    if 2 * p > r:
        return verdict(
            Status.INVALID,
            "q=1, 2p > r: nr/(2r-p) > 2n/3 >= alpha_1(L(G))",
            _dense_witness(r, p),
        )
    if 2 * p == r and (2 * r - p) % 3:
        # With 2p = r, 2r - p = 3p, so this branch is unreachable; kept to
        # mirror the published boundary rule exactly.
        return verdict(
            Status.INVALID,
            "q=1, 2p = r, 3 does not divide 2r-p: 2n/3 is not an integer",
            _dense_witness(r, p),
        )
    return verdict(Status.UNKNOWN, "open: q=1, p>=2, r>=3, 2p <= r")


def verdict_table(p_max: int = 4, q_max: int = 4, r_max: int = 8) -> list[TripleVerdict]:
    return [
        classify_triple(p, q, r)
        for r in range(1, r_max + 1)
        for p in range(p_max + 1)
        for q in range(q_max + 1)
    ]


@dataclass(frozen=True)
class WitnessCheck:
    graph6: str
    alpha_p: Optional[int]
    alpha_q_line: Optional[int]
    checked: bool
    violated: bool


def confirm_witness(
    verdict: TripleVerdict, max_line_vertices: int = DEFAULT_MAX_LINE_VERTICES
) -> Optional[WitnessCheck]:
    """Rebuild the verdict's witness and re-solve both sides exactly.

    Returns ``None`` when the verdict carries no witness; ``checked`` is
    false when the witness is beyond desk-scale solving.
    """
    if verdict.witness is None:
        return None
    g = verdict.witness.build()
    g6 = write_graph6(g)
    if g.m > max_line_vertices:
        return WitnessCheck(g6, None, None, False, False)
    a = alpha_p_exact(g, verdict.p).value
    b = alpha_p_exact(line_graph(g).lg, verdict.q).value
    return WitnessCheck(g6, a, b, True, a > b)


# corpus verification -------------------------------------------------------

@dataclass
class TripleCorpusReport:
    p: int
    q: int
    r: int
    corpus: str
    graphs: int = 0
    violations: list[dict] = field(default_factory=list)
    min_slack: Optional[int] = None
    tight: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_row(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "r": self.r,
            "corpus": self.corpus,
            "graphs": self.graphs,
            "violations": len(self.violations),
            "min_slack": "" if self.min_slack is None else self.min_slack,
            "violating_graph6": " ".join(v["graph6"] for v in self.violations),
        }


def _pair_values(args) -> tuple[str, int, int]:
    g6, p, q = args
    g = parse_graph6(g6)
    return g6, alpha_p_exact(g, p).value, alpha_p_exact(line_graph(g).lg, q).value


def _map(fn, items: list, jobs: int) -> list:
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


CorpusLike = Union[CorpusSpec, Sequence[Graph]]


def _resolve(corpus: CorpusLike) -> tuple[list[Graph], str]:
    if isinstance(corpus, CorpusSpec):
        return load_corpus(corpus), str(corpus)
    graphs = list(corpus)
    return graphs, f"list[{len(graphs)}]"


def verify_triple_on_corpus(p: int, q: int, r: int, corpus: CorpusLike, jobs: int = 1) -> TripleCorpusReport:
    """Check alpha_p(G) <= alpha_q(L(G)) on every graph of the corpus."""
    if isinstance(corpus, CorpusSpec) and corpus.r >= 0 and corpus.r != r:
        raise ValueError(f"corpus regularity {corpus.r} does not match r={r}")
    graphs, label = _resolve(corpus)
    for g in graphs:
        if is_regular(g) != r:
            raise ValueError(f"corpus graph {write_graph6(g)} is not {r}-regular")
    report = TripleCorpusReport(p, q, r, label)
    results = _map(_pair_values, [(write_graph6(g), p, q) for g in graphs], jobs)
    for g6, a, b in sorted(results):
        report.graphs += 1
        slack = b - a
        if report.min_slack is None or slack < report.min_slack:
            report.min_slack = slack
        if slack == 0:
            report.tight.append(g6)
        if slack < 0:
            report.violations.append({"graph6": g6, "alpha_p": a, "alpha_q_line": b})
    return report


# counterexample search -----------------------------------------------------

@dataclass
class SearchResult:
    p: int
    q: int
    r: int
    witness: Optional[str] = None
    source: str = ""
    alpha_p: Optional[int] = None
    alpha_q_line: Optional[int] = None
    log: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.witness is not None


def _family_candidates(p: int, r: int) -> list[ConstructionRecipe]:
    out = []
    if 1 <= p < r:
        out.append(ConstructionRecipe(Kind.SHARP_BIPARTITE, (r, p, 1)))
    if r % 2 == 1 and r >= 3:
        out.append(ConstructionRecipe(Kind.FACTORLESS_REGULAR, (r,)))
    if r == 1:
        out.append(ConstructionRecipe(Kind.NAMED, ("matching", 1)))
    if r == 2:
        out += [ConstructionRecipe(Kind.NAMED, ("cycle", k)) for k in (3, 4, 5)]
    out.append(ConstructionRecipe(Kind.NAMED, ("complete", r + 1)))
    return out


def search_counterexample(
    p: int,
    q: int,
    r: int,
    corpus: Optional[CorpusLike] = None,
    max_line_vertices: int = DEFAULT_MAX_LINE_VERTICES,
) -> SearchResult:
    """First graph with alpha_p(G) > alpha_q(L(G)), trying families first.

    Without an explicit corpus, connected r-regular graphs up to n = 10 are
    enumerated.  Candidates whose line graph exceeds ``max_line_vertices``
    are skipped and logged.
    """
    res = SearchResult(p, q, r)
    candidates: list[tuple[str, Graph]] = [
        (rec.label(), rec.build()) for rec in _family_candidates(p, r)
    ]
    if corpus is None:
        corpus = CorpusSpec(r, r + 1, 10, True)
    graphs, label = _resolve(corpus)
    candidates += [(f"{label}#{i}", g) for i, g in enumerate(graphs)]
    tried = skipped = 0
    for source, g in candidates:
        if is_regular(g) != r:
            res.log.append(f"{source}: not {r}-regular, ignored")
            continue
        if g.m > max_line_vertices:
            skipped += 1
            res.log.append(f"{source}: line graph has {g.m} vertices, skipped")
            continue
        tried += 1
        a = alpha_p_exact(g, p).value
        b = alpha_p_exact(line_graph(g).lg, q).value
        if a > b:
            res.witness, res.source = write_graph6(g), source
            res.alpha_p, res.alpha_q_line = a, b
            res.log.append(f"{source}: alpha_{p}={a} > alpha_{q}(L)={b}")
            break
    res.log.append(f"searched {tried} graphs, skipped {skipped}")
    return res


# bound reports -------------------------------------------------------------

CHECK_NAMES = (
    "alpha_monotone",
    "counting_bound",
    "counting_bound_below_r",
    "alpha_le_mu",
    "matching_agrees",
    "one_matching_cap",
    "two_matching_even",
    "two_matching_floor",
    "cubic_degree2_subgraph",
    "matching_floor_cubic",
    "matching_floor_odd",
    "alpha_p_le_line_alpha_p",
    "path_cover_conjecture",
    "path_cover_edges",
)

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class BoundReport:
    graph6: str
    n: int
    r: Optional[int]
    alpha: list[Optional[int]] = field(default_factory=list)
    alpha_line: list[Optional[int]] = field(default_factory=list)
    mu: Optional[int] = None
    rho: Optional[int] = None
    checks: dict[str, str] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return FAIL not in self.checks.values()

    def as_row(self) -> dict:
        row = {"graph6": self.graph6, "n": self.n, "r": "" if self.r is None else self.r}
        for k in K_RANGE:
            row[f"alpha_{k}"] = _cell(self.alpha[k] if self.alpha else None)
        for k in K_RANGE:
            row[f"alpha_line_{k}"] = _cell(self.alpha_line[k] if self.alpha_line else None)
        row["mu"] = _cell(self.mu)
        row["rho"] = _cell(self.rho)
        for name in CHECK_NAMES:
            row[name] = self.checks.get(name, "")
        row["passed"] = self.passed
        row["failures"] = "; ".join(f"{k}: {self.details[k]}" for k in CHECK_NAMES if self.checks.get(k) == FAIL)
        return row


def _cell(x):
    return "" if x is None else x


def bound_report(g: Graph, max_line_vertices: int = DEFAULT_MAX_LINE_VERTICES) -> BoundReport:
    """Every applicable bound comparison for one graph."""
    n = g.n
    r = is_regular(g)
    rep = BoundReport(write_graph6(g), n, r)
    if g.m == 0 or g.m > max_line_vertices:
        rep.checks = {name: SKIP for name in CHECK_NAMES}
        return rep

    rep.alpha = [alpha_p_exact(g, k).value for k in K_RANGE]
    lg = line_graph(g).lg
    rep.alpha_line = [alpha_p_exact(lg, k).value for k in K_RANGE]
    rep.mu = maximum_matching(g).size
    if n <= PATH_COVER_MAX_N:
        rep.rho = path_cover_number(g).size
    a, al, mu = rep.alpha, rep.alpha_line, rep.mu

    def put(name: str, ok: bool, detail: str) -> None:
        rep.checks[name] = PASS if ok else FAIL
        rep.details[name] = detail

    put(
        "alpha_monotone",
        all(a[k] <= a[k + 1] for k in range(4)) and all(al[k] <= al[k + 1] for k in range(4)),
        f"alpha={a} alpha_line={al}",
    )
    put("matching_agrees", mu == al[0], f"blossom={mu} alpha_0(L)={al[0]}")
    put("one_matching_cap", al[1] <= 2 * n // 3, f"alpha_1(L)={al[1]} cap={2 * n // 3}")
    if rep.rho is not None:
        put("path_cover_edges", al[2] >= n - rep.rho, f"alpha_2(L)={al[2]} n-rho={n - rep.rho}")
    if r is None:
        return rep

    ks = [k for k in K_RANGE if k <= r]
    caps = {k: math.floor(upper_bound_alpha_p(n, r, k)) for k in ks}
    put(
        "counting_bound",
        all(a[k] <= caps[k] for k in ks),
        " ".join(f"alpha_{k}={a[k]}<={caps[k]}" for k in ks),
    )
    below = [k for k in ks if k < r]
    if below:
        cap = math.floor(upper_bound_alpha_p_below_r(n, r, 0))
        put(
            "counting_bound_below_r",
            all(a[k] <= cap for k in below),
            f"max alpha_k (k<r) = {max(a[k] for k in below)} cap={cap}",
        )
    put("alpha_le_mu", a[0] <= mu, f"alpha_0={a[0]} mu={mu}")
    floor17 = math.ceil(Fraction(17 * n - 2, 18))
    if r >= 2 and r % 2 == 0:
        put("two_matching_even", al[2] == n, f"alpha_2(L)={al[2]} n={n}")
    if r >= 3:
        put("two_matching_floor", al[2] >= floor17, f"alpha_2(L)={al[2]} floor={floor17}")
    if r == 3:
        h = cubic_degree2_subgraph(g)
        put(
            "cubic_degree2_subgraph",
            len(h) >= floor17 and max(h.degrees) <= 2 and al[2] >= len(h),
            f"|E(H)|={len(h)} maxdeg={max(h.degrees)} floor={floor17}",
        )
        lb = lower_bound_matching(n, 3)
        put("matching_floor_cubic", mu >= lb, f"mu={mu} bound={lb}")
    if r >= 3 and r % 2 == 1 and is_connected(g):
        lb = lower_bound_matching(n, r)
        put("matching_floor_odd", mu >= lb, f"mu={mu} bound={lb}")
    if r >= 2:
        put(
            "alpha_p_le_line_alpha_p",
            all(a[k] <= al[k] for k in K_RANGE),
            " ".join(f"{a[k]}<={al[k]}" for k in K_RANGE),
        )
    if rep.rho is not None and r <= 6:
        cap = n // (r + 1)
        put("path_cover_conjecture", rep.rho <= cap, f"rho={rep.rho} cap={cap}")
    return rep


def _bound_report_g6(args) -> BoundReport:
    g6, limit = args
    return bound_report(parse_graph6(g6), limit)


def check_bounds_suite(
    corpus: CorpusLike, jobs: int = 1, max_line_vertices: int = DEFAULT_MAX_LINE_VERTICES
) -> list[BoundReport]:
    graphs, _ = _resolve(corpus)
    items = [(write_graph6(g), max_line_vertices) for g in graphs]
    reports = _map(_bound_report_g6, items, jobs)
    return sorted(reports, key=lambda rep: rep.graph6)


# report output -------------------------------------------------------------

_COLUMNS = {
    "bounds": ["graph6", "n", "r"]
    + [f"alpha_{k}" for k in K_RANGE]
    + [f"alpha_line_{k}" for k in K_RANGE]
    + ["mu", "rho", *CHECK_NAMES, "passed", "failures"],
    "verdicts": ["p", "q", "r", "status", "provenance", "witness", "witness_graph6", "note"],
    "triples": ["p", "q", "r", "corpus", "graphs", "violations", "min_slack", "violating_graph6"],
}


def _kind_of(item) -> str:
    if isinstance(item, BoundReport):
        return "bounds"
    if isinstance(item, TripleVerdict):
        return "verdicts"
    if isinstance(item, TripleCorpusReport):
        return "triples"
    raise TypeError(f"cannot report {type(item).__name__}")


def _sort_key(kind: str, row: dict):
    if kind == "bounds":
        return (row["graph6"],)
    return (row["r"], row["p"], row["q"])


def render_report(reports: Iterable, fmt: str = "json", kind: Optional[str] = None) -> str:
    items = list(reports)
    if kind is None:
        kind = _kind_of(items[0]) if items else "bounds"
    rows = sorted((x.as_row() for x in items), key=lambda row: _sort_key(kind, row))
    columns = _COLUMNS[kind]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "json":
        payload = {"schema": SCHEMA_VERSION, "kind": kind, "columns": columns, "rows": rows}
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def emit_report(reports: Iterable, fmt: str = "json", out=None, kind: Optional[str] = None) -> str:
    """Render reports as CSV or JSON; write to ``out`` (path or file) if given."""
    text = render_report(reports, fmt, kind)
    if out is None:
        return text
    if hasattr(out, "write"):
        out.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
