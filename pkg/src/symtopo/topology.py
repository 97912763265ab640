"""Neighbour enumeration, edges and adjacency matrices.

A generator step is valid when every coordinate of the resulting address
stays inside ``[0, mu - 1]``. Checking only that the new *label* stays in
``[0, mu**n - 1]`` is not enough: on ``mesh:mu=3,n=2`` the node ``(2, 0)``
(label 2) plus ``mu**0`` gives label 3 = ``(0, 1)``, which is not adjacent.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np
from scipy import sparse

from . import config
from .errors import CapacityError, DomainError, InadmissibleNodeError
from .lattice import (
    NodeAddress,
    TopologySpec,
    all_coords,
    is_admissible,
    label,
    node_count,
    place_values,
    unlabel,
)
from .roots import all_roots, positive_roots


class NodeClass(enum.Enum):
    BOSONIC = "bosonic"
    FERMIONIC = "fermionic"


@dataclass(frozen=True)
class Edge:
    """Undirected edge ``u < v`` (labels); ``generator`` is the step from ``u`` to ``v``."""

    u: int
    v: int
    generator: tuple[int, ...]

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)


@lru_cache(maxsize=None)
def _generators(spec: TopologySpec) -> tuple[tuple[int, ...], ...]:
    if spec.is_symplectic:
        return tuple(r.components for r in all_roots(spec.n))
    steps = []
    for i in range(spec.n):
        for s in (1, -1):
            v = [0] * spec.n
            v[i] = s
            steps.append(tuple(v))
    return tuple(sorted(steps))


def generators(spec: TopologySpec) -> list[tuple[int, ...]]:
    """All edge-generating steps: ``±e_i`` for mesh/hypercube, every root for symplectic."""
    return list(_generators(spec))


def positive_generators(spec: TopologySpec) -> list[tuple[int, ...]]:
    """One representative of each ``±g`` pair (first non-zero component positive)."""
    if spec.is_symplectic:
        return [r.components for r in positive_roots(spec.n)]
    return [g for g in _generators(spec) if next(c for c in g if c) > 0]


def _address_of(kappa: int, spec: TopologySpec) -> NodeAddress:
    return unlabel(kappa, spec)


def neighbors(kappa: int, spec: TopologySpec) -> frozenset[int]:
    """Labels one generator step away from ``kappa``."""
    address = _address_of(kappa, spec)
    out = set()
    for g in _generators(spec):
        nxt = tuple(a + b for a, b in zip(address, g))
        if all(0 <= c < spec.mu for c in nxt):
            out.add(label(nxt, spec).kappa)
    return frozenset(out)


def degree(kappa: int, spec: TopologySpec) -> int:
    return len(neighbors(kappa, spec))


def classify(address: Sequence[int], spec: TopologySpec | None = None) -> NodeClass:
    """Bosonic (all coordinates even) or fermionic (a positive even number odd).

    When ``spec`` is given the address is range-checked against it as well.
    """
    coords = tuple(int(c) for c in address)
    if spec is not None:
        if not spec.is_symplectic:
            raise DomainError(f"node classes only exist for symplectic specs, not {spec}")
        if not is_admissible(coords, spec):
            raise InadmissibleNodeError(f"{coords} has an odd number of odd coordinates")
    odd = sum(c & 1 for c in coords)
    if odd % 2:
        raise InadmissibleNodeError(f"{coords} has an odd number of odd coordinates")
    return NodeClass.BOSONIC if odd == 0 else NodeClass.FERMIONIC


def edge_upper_bound(spec: TopologySpec) -> int:
    return node_count(spec) * len(positive_generators(spec))


def _check_edge_budget(spec: TopologySpec, budget: int | None) -> None:
    limit = config.budget_edges(budget)
    bound = edge_upper_bound(spec)
    if bound > limit:
        raise CapacityError(
            f"{spec}: up to {bound} edges exceeds the edge budget {limit}; "
            "use the closed-form metrics or path_length_histogram_sampled instead"
        )


def edge_arrays(spec: TopologySpec, *, budget: int | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised edge list as row indices.

    Returns ``(rows_u, rows_v, gen)`` with ``rows_u < rows_v`` sorted
    lexicographically, and ``gen`` indexing :func:`positive_generators`;
    the step from ``u`` to ``v`` is ``+g`` or ``-g`` (see :func:`edges`).
    Row indices are labels, or weight indices ``p`` for symplectic specs.
    """
    _check_edge_budget(spec, budget)
    coords = all_coords(spec).astype(np.int64)
    places = place_values(spec)
    src_idx = np.arange(coords.shape[0], dtype=np.int64)
    shift = 1 if spec.is_symplectic else 0
    us, vs, gs = [], [], []
    for k, g in enumerate(positive_generators(spec)):
        g_arr = np.asarray(g, dtype=np.int64)
        target = coords + g_arr
        ok = np.all((target >= 0) & (target < spec.mu), axis=1)
        src = src_idx[ok]
        dst = src + ((g_arr @ places) >> shift)
        us.append(np.minimum(src, dst))
        vs.append(np.maximum(src, dst))
        gs.append(np.full(src.shape[0], k, dtype=np.int64))
    if not us:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty, empty
    u = np.concatenate(us)
    v = np.concatenate(vs)
    gen = np.concatenate(gs)
    order = np.lexsort((v, u))
    return u[order], v[order], gen[order]


def edges(spec: TopologySpec, *, budget: int | None = None) -> Iterator[Edge]:
    """Each undirected edge once, ordered by ``(min endpoint, max endpoint)``."""
    u, v, gen = edge_arrays(spec, budget=budget)
    pos = positive_generators(spec)
    places = place_values(spec)
    shift = 1 if spec.is_symplectic else 0
    for a, b, k in zip(u.tolist(), v.tolist(), gen.tolist()):
        g = pos[k]
        step_up = (int(np.dot(g, places)) >> shift) > 0
        step = g if step_up else tuple(-c for c in g)
        yield Edge(a << shift, b << shift, step)


def edge_count(spec: TopologySpec, *, budget: int | None = None) -> int:
    return int(edge_arrays(spec, budget=budget)[0].shape[0])


def adjacency_matrix(spec: TopologySpec, *, budget: int | None = None) -> sparse.csr_matrix:
    """Symmetric 0/1 ``nu x nu`` matrix in CSR form (int8)."""
    u, v, _ = edge_arrays(spec, budget=budget)
    nu = node_count(spec)
    rows = np.concatenate([u, v])
    cols = np.concatenate([v, u])
    data = np.ones(rows.shape[0], dtype=np.int8)
    return sparse.csr_matrix((data, (rows, cols)), shape=(nu, nu))


def degrees(spec: TopologySpec, *, budget: int | None = None) -> np.ndarray:
    """Degree of every node, indexed by row index."""
    u, v, _ = edge_arrays(spec, budget=budget)
    nu = node_count(spec)
    return np.bincount(u, minlength=nu) + np.bincount(v, minlength=nu)


def max_degree(spec: TopologySpec) -> int:
    """Largest node degree, in closed form.

    For symplectic ``M = 1`` the centre of the box is too narrow for long
    roots in both directions, so ``2n**2`` is never reached. There every
    coordinate is 0, 1 or 2; a node with ``k`` (even) coordinates equal to
    1 has ``n - k`` long steps and short steps counted per axis pair:
    4 for (1, 1), 2 for (1, end), 1 for (end, end).
    """
    n = spec.n
    if spec.is_symplectic:
        if spec.M >= 2:
            return 2 * n * n
        best = 0
        for k in range(0, n + 1, 2):
            e = n - k
            best = max(best, e + 4 * (k * (k - 1) // 2) + 2 * k * e + e * (e - 1) // 2)
        return best
    if spec.mu == 2:
        return n
    return 2 * n


def min_degree(spec: TopologySpec) -> int:
    """Smallest node degree, attained at the corner ``(0, ..., 0)``."""
    n = spec.n
    if spec.is_symplectic:
        return n * (n + 1) // 2
    return n
