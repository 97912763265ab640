"""Brute-force verification of the closed-form metrics.

Adjacency here is assembled only from :func:`symtopo.topology.neighbors`, one
node at a time, and distances come from plain breadth-first search. Nothing
in this module shares code with the closed-form distance path it checks.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import sparse

from . import config
from .errors import CapacityError, DisconnectedGraphError, DomainError
from .lattice import TopologySpec, all_coords, index_of, label_of_index, node_count
from .metrics import pairwise_distances
from .topology import edge_upper_bound, max_degree, min_degree, neighbors


@lru_cache(maxsize=8)
def neighbor_adjacency(spec: TopologySpec) -> sparse.csr_matrix:
    """Adjacency matrix (row indices) built by calling ``neighbors`` on every node."""
    nu = node_count(spec)
    rows: list[int] = []
    cols: list[int] = []
    for i in range(nu):
        for kappa in neighbors(label_of_index(i, spec), spec):
            rows.append(i)
            cols.append(index_of(kappa, spec))
    data = np.ones(len(rows), dtype=np.int8)
    return sparse.csr_matrix((data, (rows, cols)), shape=(nu, nu))


def _bfs(adj: sparse.csr_matrix, source: int) -> np.ndarray:
    """Level-synchronous BFS; -1 marks unreached nodes."""
    dist = np.full(adj.shape[0], -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source])
    level = 0
    while frontier.size:
        level += 1
        reached = np.unique(adj[frontier].indices)
        frontier = reached[dist[reached] < 0]
        dist[frontier] = level
    return dist


def _check_enumerable(spec: TopologySpec, budget_edges: int | None) -> None:
    limit = config.budget_edges(budget_edges)
    if edge_upper_bound(spec) > limit:
        raise CapacityError(f"{spec}: too many edges to enumerate (budget {limit}); try a smaller spec")


def bfs_distances(source: int, spec: TopologySpec, *, budget_edges: int | None = None) -> dict[int, int]:
    """Shortest-path distance (in edges) from label ``source`` to every node label."""
    _check_enumerable(spec, budget_edges)
    neighbors(source, spec)  # validates the source label
    dist = _bfs(neighbor_adjacency(spec), index_of(source, spec))
    unreached = np.flatnonzero(dist < 0)
    if unreached.size:
        raise DisconnectedGraphError(
            f"{spec}: {unreached.size} nodes unreachable from {source}, e.g. label {label_of_index(int(unreached[0]), spec)}"
        )
    return {label_of_index(i, spec): int(d) for i, d in enumerate(dist.tolist())}


@dataclass
class OracleReport:
    spec: TopologySpec
    pairs_checked: int = 0
    mismatches: list[tuple[int, int, int, int]] = field(default_factory=list)
    max_degree_seen: int = 0
    min_degree_seen: int = 0
    expected_max: int | None = None
    expected_min: int | None = None
    degree_violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return not self.mismatches

    @property
    def ok(self) -> bool:
        return self.certified and not self.degree_violations

    def render(self) -> str:
        nu = node_count(self.spec)
        lines = [
            f"spec            {self.spec}",
            f"nodes           {nu}",
            f"pairs_checked   {self.pairs_checked}",
            f"mismatches      {len(self.mismatches)}",
            f"degree_max      {self.max_degree_seen} (expected: {self.expected_max})",
            f"degree_min      {self.min_degree_seen} (expected: {self.expected_min})",
        ]
        for v in self.degree_violations:
            lines.append(f"violation       {v}")
        for note in self.notes:
            lines.append(f"note            {note}")
        for a, b, cf, bfs in self.mismatches[:10]:
            lines.append(f"mismatch        {a} {b} closed_form={cf} bfs={bfs}")
        lines.append(f"result          {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def mismatches_csv(self) -> str:
        buf = io.StringIO()
        buf.write("kappa_a,kappa_b,closed_form,bfs\n")
        for row in self.mismatches:
            buf.write(",".join(str(x) for x in row) + "\n")
        return buf.getvalue()


def _fill_degrees(report: OracleReport, adj: sparse.csr_matrix) -> None:
    deg = np.diff(adj.indptr)
    report.max_degree_seen = int(deg.max())
    report.min_degree_seen = int(deg.min())
    spec = report.spec
    if spec.is_symplectic:
        n = spec.n
        report.expected_max = 2 * n * n
        report.expected_min = n * (n + 1) // 2
        if spec.M == 1:
            # the M = 1 box is too narrow for the full root star; report what is attained
            report.notes.append(
                f"M=1: attained max degree {report.max_degree_seen} < 2n^2 = {report.expected_max}"
            )
            if report.max_degree_seen != max_degree(spec):
                report.degree_violations.append(
                    f"max degree {report.max_degree_seen} != M=1 closed form {max_degree(spec)}"
                )
        elif report.max_degree_seen != report.expected_max:
            report.degree_violations.append(f"max degree {report.max_degree_seen} != {report.expected_max}")
    else:
        report.expected_max = max_degree(spec)
        report.expected_min = min_degree(spec)
        if report.max_degree_seen != report.expected_max:
            report.degree_violations.append(f"max degree {report.max_degree_seen} != {report.expected_max}")
    if report.min_degree_seen != report.expected_min:
        report.degree_violations.append(f"min degree {report.min_degree_seen} != {report.expected_min}")


def verify_degree_bounds(spec: TopologySpec, *, budget_edges: int | None = None) -> OracleReport:
    _check_enumerable(spec, budget_edges)
    report = OracleReport(spec)
    _fill_degrees(report, neighbor_adjacency(spec))
    return report


def verify_distances(
    spec: TopologySpec,
    *,
    budget_nodes: int | None = None,
    threads: int = 1,
) -> OracleReport:
    """All-pairs BFS against the closed-form distance, plus degree extrema."""
    limit = config.budget_verify_nodes(budget_nodes)
    nu = node_count(spec)
    if nu > limit:
        raise CapacityError(f"{spec}: {nu} nodes exceeds the verification budget {limit}; try a smaller spec")
    if threads < 1:
        raise DomainError(f"threads must be >= 1, got {threads}")
    adj = neighbor_adjacency(spec)
    coords = all_coords(spec)

    def check(source: int) -> list[tuple[int, int, int, int]]:
        bfs = _bfs(adj, source)
        if (bfs < 0).any():
            raise DisconnectedGraphError(f"{spec}: BFS from row {source} did not reach every node")
        closed = pairwise_distances(coords[source : source + 1], coords, spec)[0]
        bad = np.flatnonzero(closed[source + 1 :] != bfs[source + 1 :]) + source + 1
        a = label_of_index(source, spec)
        return [(a, label_of_index(int(j), spec), int(closed[j]), int(bfs[j])) for j in bad]

    report = OracleReport(spec, pairs_checked=nu * (nu - 1) // 2)
    if threads == 1:
        parts = map(check, range(nu))
        for part in parts:
            report.mismatches.extend(part)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(check, range(nu)):
                report.mismatches.extend(part)
    _fill_degrees(report, adj)
    return report
