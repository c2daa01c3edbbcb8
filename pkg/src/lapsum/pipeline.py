"""Chunked verification pipeline with an ordered single writer.

Graphs are cut into chunks of bit rows.  Each chunk goes through the batch
kernel once (spectrum, edge count, threshold flag, clique number); Brouwer
and Nordhaus-Gaddum verdicts are then computed column-wise in numpy, while
the auxiliary bounds and identities run per graph.  Chunks may be processed
on a process pool, but results are consumed in submission order, so the
output does not depend on the worker count.
"""

from __future__ import annotations

import csv
import json
import math
import multiprocessing
import time
from collections import deque
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field
from os import PathLike
from typing import IO, Callable, Iterable, Iterator, Sequence

import numpy as np

from lapsum import _kernels
from lapsum.families import (
    complete_split,
    cone_over,
    infinity_graph,
    nested_split_graph,
    spider,
    theta_graph,
    two_dominator_graph,
)
from lapsum.graph import (
    MAX_VERTICES,
    Graph,
    GraphError,
    all_labeled_pairs,
    complement,
    disjoint_union,
    empty_graph,
    graph6_from_rows,
    join,
    parse_graph6,
    write_graph6,
)
from lapsum.spectra import laplacian_spectrum, top_sum
from lapsum.streams import LABELED_CAP, enumerate_threshold, labeled_count, read_graph6_file
from lapsum.verify import TOL_EQ, bound_report

MODES = ("labeled", "threshold", "graph6", "family", "stream")
CHECKS = ("brouwer", "ng", "bounds", "identities")
FORMATS = ("jsonl", "csv")
COLUMNS = (
    "index", "graph6", "n", "m", "check", "k", "s_k", "bound", "slack",
    "class", "threshold", "omega", "consistent",
)
CLASS_NAMES = ("Strict", "Equality", "Violation")
STRICT, EQUALITY, VIOLATION = 0, 1, 2
CHUNK_SIZE = 8192
MAX_WITNESSES = 1000


@dataclass(frozen=True)
class RunConfig:
    mode: str
    n: int | None = None
    path: str | None = None
    family: tuple[str, tuple[str, ...]] | None = None
    ks: tuple[int, ...] | None = None  # None selects every valid k
    checks: tuple[str, ...] = ("brouwer",)
    tol_eq: float = TOL_EQ
    jobs: int = 1
    out: str | None = None
    fmt: str = "jsonl"
    labeled_cap: int = LABELED_CAP
    chunk_size: int = CHUNK_SIZE
    max_witnesses: int = MAX_WITNESSES

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt!r}")
        bad = [c for c in self.checks if c not in CHECKS]
        if bad or not self.checks:
            raise ValueError(f"unknown or empty checks {bad or self.checks}; expected a subset of {CHECKS}")
        if self.ks is not None and any(k < 1 for k in self.ks):
            raise ValueError("k values must be >= 1")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be >= 1")
        if self.mode == "labeled":
            if self.n is None or not 1 <= self.n <= self.labeled_cap:
                raise ValueError(f"labeled mode needs 1 <= n <= {self.labeled_cap}, got {self.n}")
        elif self.mode == "threshold":
            if self.n is None or not 1 <= self.n <= MAX_VERTICES:
                raise ValueError(f"threshold mode needs 1 <= n <= {MAX_VERTICES}, got {self.n}")
        elif self.mode == "graph6" and not self.path:
            raise ValueError("graph6 mode needs a path")
        elif self.mode == "family" and not self.family:
            raise ValueError("family mode needs a family name and parameters")


@dataclass(frozen=True)
class Witness:
    index: int
    graph6: str
    check: str
    k: int


@dataclass
class RunSummary:
    graphs: int = 0
    records: int = 0
    violations: int = 0
    anomalies: int = 0
    equalities: int = 0
    witnesses: list[Witness] = field(default_factory=list)
    wall_clock: float = 0.0

    @property
    def clean(self) -> bool:
        return self.violations == 0 and self.anomalies == 0

    def as_dict(self) -> dict:
        return {
            "graphs": self.graphs,
            "records": self.records,
            "violations": self.violations,
            "anomalies": self.anomalies,
            "equalities": self.equalities,
            "witnesses": [w.__dict__ for w in self.witnesses],
            "wall_clock": round(self.wall_clock, 3),
        }

    def format(self) -> str:
        lines = [
            f"graphs      {self.graphs}",
            f"records     {self.records}",
            f"violations  {self.violations}",
            f"anomalies   {self.anomalies}",
            f"equalities  {self.equalities}",
            f"wall clock  {self.wall_clock:.2f}s",
        ]
        shown = self.witnesses[:20]
        for w in shown:
            lines.append(f"  equality  {w.check:<8} k={w.k:<3} #{w.index}  {w.graph6}")
        if self.equalities > len(shown):
            lines.append(f"  ... {self.equalities - len(shown)} more equality instances")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# families by name
# ---------------------------------------------------------------------------

FAMILY_ARITY: dict[str, tuple[int, int | None]] = {
    "csplit": (2, 2),
    "gkrs": (2, None),
    "gst": (2, 2),
    "tni": (2, 2),
    "infinity": (3, 3),
    "theta": (3, 3),
    "cone": (2, 2),
}


def build_family(name: str, params: Sequence[str]) -> Graph:
    """Family graph from textual parameters.

    csplit n k | gkrs k r [a1 a2 ...] | gst s t | tni n i |
    infinity p l q | theta p l q | cone <graph6> q
    """
    if name not in FAMILY_ARITY:
        raise GraphError(f"unknown family {name!r}; expected one of {sorted(FAMILY_ARITY)}")
    lo, hi = FAMILY_ARITY[name]
    if len(params) < lo or (hi is not None and len(params) > hi):
        raise GraphError(f"{name} takes {lo}{'' if hi == lo else '+'} parameters, got {len(params)}")
    if name == "cone":
        return cone_over(parse_graph6(params[0]), _int(params[1]))
    ints = [_int(p) for p in params]
    if name == "csplit":
        return complete_split(*ints)
    if name == "gkrs":
        return nested_split_graph(ints[0], ints[1], ints[2:])
    if name == "gst":
        return two_dominator_graph(*ints)
    if name == "tni":
        return spider(*ints)
    if name == "infinity":
        return infinity_graph(*ints)
    return theta_graph(*ints)


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise GraphError(f"expected an integer parameter, got {text!r}") from None


# ---------------------------------------------------------------------------
# chunk processing (runs in workers)
# ---------------------------------------------------------------------------


@dataclass
class Block:
    """Column-oriented verdict records for one check over part of a chunk."""

    check: str
    local: np.ndarray  # graph position inside the chunk
    k: np.ndarray
    s_k: np.ndarray
    bound: np.ndarray  # NaN where a check has no bound column
    slack: np.ndarray
    cls: np.ndarray
    consistent: np.ndarray


@dataclass
class ChunkResult:
    start: int
    rows: np.ndarray
    ns: np.ndarray
    m: np.ndarray
    threshold: np.ndarray
    omega: np.ndarray
    blocks: list[Block]


def _selected_ks(n: int, ks: tuple[int, ...] | None) -> np.ndarray:
    full = np.arange(1, n, dtype=np.int64)
    if ks is None:
        return full
    return full[np.isin(full, np.asarray(ks, dtype=np.int64))]


def _classify(slack: np.ndarray, comb_eq: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    cls = np.where(slack < -tol, VIOLATION, np.where(comb_eq, EQUALITY, STRICT)).astype(np.int8)
    consistent = (np.abs(slack) <= tol) == comb_eq
    return cls, consistent


def _brouwer_block(local, n, mu, m, thr, omega, ok, ks, tol) -> Block:
    s = np.cumsum(mu[:, :n], axis=1)[:, ks - 1]
    bound = m[:, None] + (ks * (ks + 1) // 2)[None, :]
    slack = bound - s
    comb_eq = thr[:, None] & (omega[:, None] == ks[None, :] + 1)
    cls, consistent = _classify(slack, comb_eq, tol)
    return _flatten("brouwer", local, ks, s, bound, slack, cls, consistent & ok[:, None])


def _ng_block(local, n, mu, m, thr, omega, ok, ks, tol) -> Block:
    prefix = np.concatenate([np.zeros((mu.shape[0], 1)), np.cumsum(mu[:, :n], axis=1)], axis=1)
    s = prefix[:, ks]
    # complement spectrum is n - mu_{n-1}, ..., n - mu_1, 0
    s_co = ks[None, :] * n - (prefix[:, n - 1][:, None] - prefix[:, n - 1 - ks])
    lhs = s + s_co
    bound = np.broadcast_to(n * (n - 1) // 2 + ks * (ks + 1), lhs.shape)
    slack = bound - lhs
    comb_eq = (n == 2 * ks[None, :] + 1) & thr[:, None] & (omega[:, None] == ks[None, :] + 1)
    cls, consistent = _classify(slack, comb_eq, tol)
    return _flatten("ng", local, ks, lhs, bound, slack, cls, consistent & ok[:, None])


def _flatten(check, local, ks, s, bound, slack, cls, consistent) -> Block:
    count, width = s.shape
    return Block(
        check=check,
        local=np.repeat(local, width),
        k=np.tile(ks, count),
        s_k=s.reshape(-1).astype(float),
        bound=np.asarray(bound, dtype=float).reshape(-1),
        slack=slack.reshape(-1).astype(float),
        cls=cls.reshape(-1),
        consistent=consistent.reshape(-1),
    )


def _bounds_records(g: Graph, ks: np.ndarray, tol: float) -> list[tuple]:
    """Per k: tightest of the degree and edge-count bounds, and whether any bound fails."""
    out = []
    for k in ks:
        rep = bound_report(g, int(k))
        uppers = [b for b in (rep.grone_merris, rep.wang, rep.zhou) if b is not None]
        bound = float(min(uppers))
        slack = bound - rep.s_k
        if rep.failures(tol):
            cls = VIOLATION
        elif abs(slack) <= tol:
            cls = EQUALITY
        else:
            cls = STRICT
        out.append((int(k), rep.s_k, bound, slack, cls, True))
    return out


def _identity_records(g: Graph, ks: np.ndarray, tol: float) -> list[tuple]:
    """Per k: the largest residual among the duality, cone and isolated-vertex identities."""
    n = g.n
    spec = laplacian_spectrum(g)
    co = laplacian_spectrum(complement(g))
    coned = laplacian_spectrum(join(g, empty_graph(1)))
    padded = laplacian_spectrum(disjoint_union(g, empty_graph(1)))
    out = []
    for k in ks:
        k = int(k)
        residuals = [
            abs(top_sum(coned, k) - (n + k + top_sum(spec, k - 1))),
            abs(top_sum(padded, k) - top_sum(spec, k)),
        ]
        if 2 * k <= n - 1:
            j = n - k - 1
            lhs = top_sum(spec, k) + top_sum(co, k)
            rhs = top_sum(spec, j) + top_sum(co, j) - (n - 2 * k - 1) * n
            residuals.append(abs(lhs - rhs))
        if k == n - 1:
            residuals.append(abs(top_sum(padded, n) - top_sum(spec, n - 1)))
            residuals.append(abs(top_sum(coned, n) - (2 * n + top_sum(spec, n - 1))))
        worst = max(residuals)
        cls = EQUALITY if worst <= tol else VIOLATION
        out.append((k, top_sum(spec, k), math.nan, -worst, cls, True))
    return out


def _per_graph_block(check: str, graphs: list[tuple[int, Graph]], ks_of, fn, tol) -> Block:
    cols: list[list] = [[] for _ in range(7)]
    for local, g in graphs:
        for rec in fn(g, ks_of(g.n), tol):
            cols[0].append(local)
            for c, v in zip(cols[1:], rec):
                c.append(v)
    return Block(
        check=check,
        local=np.asarray(cols[0], dtype=np.int64),
        k=np.asarray(cols[1], dtype=np.int64),
        s_k=np.asarray(cols[2], dtype=float),
        bound=np.asarray(cols[3], dtype=float),
        slack=np.asarray(cols[4], dtype=float),
        cls=np.asarray(cols[5], dtype=np.int8),
        consistent=np.asarray(cols[6], dtype=bool),
    )


def process_chunk(task: tuple) -> ChunkResult:
    """Profile one chunk through the batch kernel and evaluate the selected checks."""
    kind, start, payload, checks, ks, tol = task
    if kind == "labeled":
        n, lo, hi = payload
        pairs = all_labeled_pairs(n)
        pu = np.array([u for u, _ in pairs], dtype=np.int64)
        pv = np.array([v for _, v in pairs], dtype=np.int64)
        rows = _kernels.rows_from_masks(np.arange(lo, hi, dtype=np.uint64), n, pu, pv)
        ns = np.full(hi - lo, n, dtype=np.int64)
    else:
        rows, ns = payload
    count, width = rows.shape
    mu = np.zeros((count, width))
    m = np.zeros(count, dtype=np.int64)
    thr = np.zeros(count, dtype=np.bool_)
    omega = np.zeros(count, dtype=np.int64)
    ok = np.zeros(count, dtype=np.bool_)
    _kernels.profile_batch(rows, ns, mu, m, thr, omega, ok)

    blocks: list[Block] = []
    for check in checks:
        if check in ("brouwer", "ng"):
            build = _brouwer_block if check == "brouwer" else _ng_block
            for n in np.unique(ns):
                local = np.flatnonzero(ns == n)
                sel = _selected_ks(int(n), ks)
                if len(local) == 0 or len(sel) == 0:
                    continue
                blocks.append(
                    build(local, int(n), mu[local], m[local], thr[local], omega[local], ok[local], sel, tol)
                )
        else:
            graphs = [
                (i, Graph(int(ns[i]), tuple(int(r) for r in rows[i, : ns[i]])))
                for i in range(count)
            ]
            fn = _bounds_records if check == "bounds" else _identity_records
            blocks.append(_per_graph_block(check, graphs, lambda n: _selected_ks(n, ks), fn, tol))
    # non-converged spectra are anomalies for the graph as a whole
    for b in blocks:
        b.consistent &= ok[b.local]
    return ChunkResult(start, rows, ns, m, thr, omega, blocks)


# ---------------------------------------------------------------------------
# producer, pool, writer
# ---------------------------------------------------------------------------


def _rows_payload(graphs: list[Graph]) -> tuple[np.ndarray, np.ndarray]:
    width = max(g.n for g in graphs)
    rows = np.zeros((len(graphs), width), dtype=np.uint64)
    for i, g in enumerate(graphs):
        rows[i, : g.n] = g.bit_rows
    return rows, np.array([g.n for g in graphs], dtype=np.int64)


def _graph_source(cfg: RunConfig, graphs: Iterable[Graph] | None) -> Iterator[Graph]:
    if cfg.mode == "stream":
        if graphs is None:
            raise ValueError("stream mode needs an explicit graph iterable")
        return iter(graphs)
    if cfg.mode == "threshold":
        return enumerate_threshold(cfg.n)
    if cfg.mode == "graph6":
        return (g for _, g in read_graph6_file(cfg.path))
    name, params = cfg.family
    return iter([build_family(name, params)])


def _tasks(cfg: RunConfig, graphs: Iterable[Graph] | None) -> Iterator[tuple]:
    common = (cfg.checks, cfg.ks, cfg.tol_eq)
    if cfg.mode == "labeled":
        total = labeled_count(cfg.n)
        for lo in range(0, total, cfg.chunk_size):
            hi = min(lo + cfg.chunk_size, total)
            yield ("labeled", lo, (cfg.n, lo, hi)) + common
        return
    start = 0
    chunk: list[Graph] = []
    for g in _graph_source(cfg, graphs):
        chunk.append(g)
        if len(chunk) == cfg.chunk_size:
            yield ("rows", start, _rows_payload(chunk)) + common
            start += len(chunk)
            chunk = []
    if chunk:
        yield ("rows", start, _rows_payload(chunk)) + common


def _ordered_results(tasks: Iterator[tuple], jobs: int) -> Iterator[ChunkResult]:
    if jobs == 1:
        for task in tasks:
            yield process_chunk(task)
        return
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
        yield from _bounded_map(pool, tasks, 2 * jobs)


def _bounded_map(pool: Executor, tasks: Iterator[tuple], depth: int) -> Iterator[ChunkResult]:
    pending: deque = deque()
    for task in tasks:
        pending.append(pool.submit(process_chunk, task))
        if len(pending) >= depth:
            yield pending.popleft().result()
    while pending:
        yield pending.popleft().result()


def _ordered_records(res: ChunkResult) -> Iterator[dict]:
    """Records of a chunk in (graph, check, k) order."""
    if not res.blocks:
        return
    order_keys = np.concatenate([b.local for b in res.blocks])
    which = np.concatenate([np.full(len(b.local), i) for i, b in enumerate(res.blocks)])
    offset = np.concatenate([np.arange(len(b.local)) for b in res.blocks])
    g6_cache: dict[int, str] = {}
    for pos in np.argsort(order_keys, kind="stable"):
        b = res.blocks[which[pos]]
        j = offset[pos]
        local = int(b.local[j])
        n = int(res.ns[local])
        if local not in g6_cache:
            g6_cache = {local: graph6_from_rows(res.rows[local], n)}
        bound = float(b.bound[j])
        yield {
            "index": res.start + local,
            "graph6": g6_cache[local],
            "n": n,
            "m": int(res.m[local]),
            "check": b.check,
            "k": int(b.k[j]),
            "s_k": float(b.s_k[j]),
            "bound": None if math.isnan(bound) else bound,
            "slack": float(b.slack[j]),
            "class": CLASS_NAMES[b.cls[j]],
            "threshold": bool(res.threshold[local]),
            "omega": int(res.omega[local]),
            "consistent": bool(b.consistent[j]),
        }


class RecordWriter:
    """Single owner of the output stream."""

    def __init__(self, fh: IO[str], fmt: str):
        self.fh = fh
        self.fmt = fmt
        self._csv = None
        if fmt == "csv":
            self._csv = csv.DictWriter(fh, fieldnames=COLUMNS, lineterminator="\n")
            self._csv.writeheader()

    def write(self, record: dict) -> None:
        if self._csv is not None:
            row = {k: ("" if v is None else str(v).lower() if isinstance(v, bool) else v) for k, v in record.items()}
            self._csv.writerow(row)
        else:
            self.fh.write(json.dumps(record) + "\n")


def _absorb(summary: RunSummary, res: ChunkResult, cap: int) -> None:
    summary.graphs += len(res.ns)
    for b in res.blocks:
        summary.records += len(b.k)
        summary.violations += int(np.count_nonzero(b.cls == VIOLATION))
        summary.anomalies += int(np.count_nonzero(~b.consistent))
        if b.check not in ("brouwer", "ng"):
            continue
        hits = np.flatnonzero(b.cls == EQUALITY)
        summary.equalities += len(hits)
        for j in hits[: max(0, cap - len(summary.witnesses))]:
            local = int(b.local[j])
            g6 = graph6_from_rows(res.rows[local], int(res.ns[local]))
            summary.witnesses.append(Witness(res.start + local, g6, b.check, int(b.k[j])))
    summary.witnesses.sort(key=lambda w: (w.index, CHECKS.index(w.check), w.k))


def run_verification(
    cfg: RunConfig,
    graphs: Iterable[Graph] | None = None,
    sink: IO[str] | None = None,
    on_chunk: Callable[[ChunkResult], None] | None = None,
) -> RunSummary:
    """Stream graphs through the selected checks; write records in input order.

    Records go to ``sink`` if given, else to ``cfg.out`` if set.  ``on_chunk``
    sees every chunk result in order, for callers that want the raw columns.
    """
    t0 = time.perf_counter()
    summary = RunSummary()
    fh = sink
    owned = None
    if fh is None and cfg.out:
        owned = fh = open(cfg.out, "w", newline="")
    try:
        writer = RecordWriter(fh, cfg.fmt) if fh is not None else None
        for res in _ordered_results(_tasks(cfg, graphs), cfg.jobs):
            _absorb(summary, res, cfg.max_witnesses)
            if on_chunk is not None:
                on_chunk(res)
            if writer is not None:
                for rec in _ordered_records(res):
                    writer.write(rec)
    finally:
        if owned is not None:
            owned.close()
    summary.wall_clock = time.perf_counter() - t0
    return summary


def write_graph6_lines(graphs: Iterable[Graph], path: str | PathLike) -> int:
    count = 0
    with open(path, "w") as fh:
        for g in graphs:
            fh.write(write_graph6(g) + "\n")
            count += 1
    return count
