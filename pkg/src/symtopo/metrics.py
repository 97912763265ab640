"""Closed-form distances, diameters, densities and path-length histograms.

Mesh and hypercube distances are the taxicab distance between addresses;
symplectic distances are half of it, since every root step changes the
taxicab norm by exactly two.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import config
from .errors import CapacityError, DomainError, InadmissibleNodeError
from .lattice import (
    Family,
    TopologySpec,
    all_coords,
    coords_of_labels,
    is_admissible,
    labels_of_indices,
    node_count,
)
from .topology import degrees, max_degree, min_degree

# source rows per exact-histogram work unit; fixed so results never depend on thread count
_EXACT_BLOCK_ELEMENTS = 1 << 22
# pairs per sampled work unit; each unit owns an independent RNG substream
SAMPLE_CHUNK = 1 << 16
RNG_ALGORITHM = "numpy.PCG64/SeedSequence(seed).spawn per 65536-pair chunk"


def distance(a: Sequence[int], b: Sequence[int], spec: TopologySpec) -> int:
    for addr in (a, b):
        if not is_admissible(addr, spec):
            raise InadmissibleNodeError(f"{tuple(addr)} is not a node of {spec}")
    taxicab = sum(abs(int(x) - int(y)) for x, y in zip(a, b))
    if spec.is_symplectic:
        if taxicab % 2:
            raise AssertionError(f"odd taxicab distance {taxicab} between symplectic nodes {a}, {b}")
        return taxicab // 2
    return taxicab


def pairwise_distances(coords_a: np.ndarray, coords_b: np.ndarray, spec: TopologySpec) -> np.ndarray:
    """Closed-form distance matrix between two stacks of valid node coordinates."""
    a = np.asarray(coords_a, dtype=np.int32)
    b = np.asarray(coords_b, dtype=np.int32)
    d = np.abs(a[:, None, :] - b[None, :, :]).sum(axis=2, dtype=np.int64)
    if spec.is_symplectic:
        return d >> 1
    return d


def rowwise_distances(coords_a: np.ndarray, coords_b: np.ndarray, spec: TopologySpec) -> np.ndarray:
    """Closed-form distance between ``coords_a[k]`` and ``coords_b[k]`` for each ``k``."""
    d = np.abs(np.asarray(coords_a, dtype=np.int32) - np.asarray(coords_b, dtype=np.int32)).sum(
        axis=1, dtype=np.int64
    )
    if spec.is_symplectic:
        return d >> 1
    return d


def diameter(spec: TopologySpec) -> int:
    if spec.family is Family.SYMPLECTIC:
        return spec.M * spec.n
    return (spec.mu - 1) * spec.n


def density(spec: TopologySpec) -> float:
    """Nodes per unit of graph volume, ``nu / L**n``."""
    L = diameter(spec)
    if spec.n == 0 or L == 0:
        raise DomainError(f"density undefined for {spec}")
    # int / int is correctly rounded even when either side exceeds float range
    return node_count(spec) / L**spec.n


def density_ratio(a: TopologySpec, b: TopologySpec) -> float:
    return density(a) / density(b)


def hypercube_mesh_density_ratio(mu: int, n: int) -> float:
    """``rho_h / rho_m`` at equal dimension: ``[2 (1 - 1/mu)]**n``."""
    return (2 * (1 - 1 / mu)) ** n


def symplectic_hypercube_density_ratio(M: int, n: int) -> float:
    """``rho_s / rho_h`` at equal rank/dimension: ``((2M+1)**n + 1) / (2 (2M)**n)``."""
    return 0.5 * ((2 * M + 1) ** n + 1) / (2 * M) ** n


def symplectic_mesh_density_ratio(mu: int, n: int) -> float:
    """``rho_s / rho_m`` with ``M = mu - 1`` (equal diameter and dimension).

    Equals ``2**(n-1) * ((1 - 1/(2 mu))**n + (2 mu)**-n)``.
    """
    return 2 ** (n - 1) * ((1 - 1 / (2 * mu)) ** n + (2 * mu) ** (-n))


@dataclass(frozen=True)
class TopologySummary:
    spec: TopologySpec
    nu: int
    L: int
    eps_max: int
    eps_min: int
    rho: float

    def as_dict(self) -> dict:
        return {
            "spec": str(self.spec),
            "nu": self.nu,
            "L": self.L,
            "eps_max": self.eps_max,
            "eps_min": self.eps_min,
            "rho": self.rho,
        }


def summary(spec: TopologySpec, *, crosscheck_limit: int = 10**4) -> TopologySummary:
    eps_max = max_degree(spec)
    if spec.is_symplectic and spec.M == 1 and node_count(spec) <= crosscheck_limit:
        seen = int(degrees(spec).max())
        if seen != eps_max:
            raise AssertionError(f"{spec}: enumerated max degree {seen} != closed form {eps_max}")
    return TopologySummary(
        spec=spec,
        nu=node_count(spec),
        L=diameter(spec),
        eps_max=eps_max,
        eps_min=min_degree(spec),
        rho=density(spec),
    )


@dataclass(frozen=True)
class PathLengthHistogram:
    """Counts of unordered distinct node pairs per distance ``d = 1..L``."""

    spec: TopologySpec
    counts: dict[int, int]
    total_pairs: int
    mode: str  # "exact" or "sampled"
    seed: int | None = None
    sample_size: int | None = None
    metadata: dict[str, str] = field(default_factory=dict)

    @property
    def mean(self) -> float:
        return mean_path_length(self)

    @property
    def diameter(self) -> int:
        return max(self.counts) if self.counts else 0

    def support(self) -> list[int]:
        return [d for d, c in sorted(self.counts.items()) if c > 0]

    def fractions(self) -> dict[int, float]:
        return {d: c / self.total_pairs for d, c in sorted(self.counts.items())}

    def variance(self) -> float:
        m = self.mean
        return sum(c * (d - m) ** 2 for d, c in self.counts.items()) / self.total_pairs

    def std_error(self) -> float:
        """Standard error of the mean, treating the pairs as a sample."""
        return math.sqrt(self.variance() / self.total_pairs)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# spec={self.spec}\n")
        buf.write(f"# mode={self.mode}\n")
        if self.mode == "sampled":
            buf.write(f"# seed={self.seed}\n")
            buf.write(f"# sample_size={self.sample_size}\n")
        for key, value in self.metadata.items():
            buf.write(f"# {key}={value}\n")
        buf.write(f"# total_pairs={self.total_pairs}\n")
        buf.write(f"# mean={self.mean!r}\n")
        buf.write("distance,count,fraction\n")
        for d, c in sorted(self.counts.items()):
            buf.write(f"{d},{c},{c / self.total_pairs!r}\n")
        return buf.getvalue()

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(self.to_csv())

    @classmethod
    def from_csv(cls, text: str) -> PathLengthHistogram:
        meta: dict[str, str] = {}
        counts: dict[int, int] = {}
        header_seen = False
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key] = value
            elif not header_seen:
                if line.strip() != "distance,count,fraction":
                    raise DomainError(f"unexpected histogram header {line!r}")
                header_seen = True
            elif line.strip():
                d, c, _ = line.split(",")
                counts[int(d)] = int(c)
        spec = TopologySpec.parse(meta.pop("spec"))
        mode = meta.pop("mode")
        seed = int(meta.pop("seed")) if "seed" in meta else None
        sample_size = int(meta.pop("sample_size")) if "sample_size" in meta else None
        total = int(meta.pop("total_pairs"))
        meta.pop("mean", None)
        return cls(spec, counts, total, mode, seed, sample_size, meta)


def mean_path_length(h: PathLengthHistogram) -> float:
    if h.total_pairs < 1 or sum(h.counts.values()) == 0:
        raise DomainError("mean of an empty histogram")
    return sum(d * c for d, c in h.counts.items()) / h.total_pairs


def _counts_dict(bins: np.ndarray, L: int) -> dict[int, int]:
    if bins.shape[0] > L + 1 and bins[L + 1 :].any():
        raise AssertionError("distance beyond the diameter")
    if bins[0]:
        raise AssertionError("zero distance between distinct nodes")
    return {d: int(bins[d]) if d < bins.shape[0] else 0 for d in range(1, L + 1)}


def _exact_block_vectorised(coords: np.ndarray, start: int, stop: int, spec: TopologySpec, nbins: int) -> np.ndarray:
    # rows start..stop against columns start..end, keep strict upper triangle
    a = coords[start:stop]
    b = coords[start:]
    d = np.abs(a[:, None, :] - b[None, :, :]).sum(axis=2, dtype=np.int64)
    if spec.is_symplectic:
        d >>= 1
    rows = np.arange(stop - start)[:, None]
    cols = np.arange(b.shape[0])[None, :]
    d = d[cols > rows]
    return np.bincount(d, minlength=nbins)[:nbins]


def path_length_histogram(
    spec: TopologySpec, *, budget: int | None = None, threads: int = 1
) -> PathLengthHistogram:
    """Exact histogram over all ``nu (nu - 1) / 2`` unordered node pairs."""
    nu = node_count(spec)
    total = nu * (nu - 1) // 2
    limit = config.budget_pairs(budget)
    if total > limit:
        raise CapacityError(
            f"{spec}: {total} node pairs exceeds the pair budget {limit}; "
            "use path_length_histogram_sampled (CLI: histogram --sample N --seed S)"
        )
    L = diameter(spec)
    nbins = L + 1
    coords = all_coords(spec).astype(np.int16 if spec.mu < 2**14 else np.int64)
    rows_per_block = max(1, _EXACT_BLOCK_ELEMENTS // max(1, nu * spec.n))
    blocks = [(s, min(s + rows_per_block, nu)) for s in range(0, nu, rows_per_block)]

    def run(block: tuple[int, int]) -> np.ndarray:
        return _exact_block_vectorised(coords, block[0], block[1], spec, nbins)

    bins = _reduce(run, blocks, threads, nbins)
    if int(bins.sum()) != total:
        raise AssertionError("exact histogram lost pairs")
    return PathLengthHistogram(spec, _counts_dict(bins, L), total, "exact")


def _reduce(fn, units, threads: int, nbins: int) -> np.ndarray:
    # integer addition is associative and commutative: worker count cannot change the result
    total = np.zeros(nbins, dtype=np.int64)
    if threads <= 1 or len(units) <= 1:
        for unit in units:
            total += fn(unit)
        return total
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(fn, units):
            total += part
    return total


def _sample_chunk(spec: TopologySpec, nu: int, size: int, seed_seq: np.random.SeedSequence, nbins: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    a = rng.integers(0, nu, size=size, dtype=np.int64)
    b = rng.integers(0, nu, size=size, dtype=np.int64)
    clash = np.flatnonzero(a == b)
    while clash.size:
        b[clash] = rng.integers(0, nu, size=clash.size, dtype=np.int64)
        clash = clash[a[clash] == b[clash]]
    ca = coords_of_labels(labels_of_indices(a, spec), spec)
    cb = coords_of_labels(labels_of_indices(b, spec), spec)
    d = rowwise_distances(ca, cb, spec)
    return np.bincount(d, minlength=nbins)[:nbins]


def path_length_histogram_sampled(
    spec: TopologySpec, sample_size: int, seed: int, *, threads: int = 1
) -> PathLengthHistogram:
    """Histogram over ``sample_size`` independent uniform unordered distinct node pairs.

    The sample is cut into fixed chunks of :data:`SAMPLE_CHUNK` pairs and chunk
    ``k`` draws from the ``k``-th child of ``SeedSequence(seed)``, so the result
    is bit-identical for any ``threads``. Symplectic nodes are drawn through
    their weight index, which is uniform over nodes without rejection.
    """
    if sample_size < 1:
        raise DomainError(f"sample_size must be >= 1, got {sample_size}")
    if seed < 0:
        raise DomainError(f"seed must be non-negative, got {seed}")
    nu = node_count(spec)
    if nu < 2:
        raise DomainError(f"{spec} has fewer than two nodes")
    L = diameter(spec)
    nbins = L + 1
    n_chunks = -(-sample_size // SAMPLE_CHUNK)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    units = [
        (k, min(SAMPLE_CHUNK, sample_size - k * SAMPLE_CHUNK), children[k]) for k in range(n_chunks)
    ]

    def run(unit) -> np.ndarray:
        _, size, child = unit
        return _sample_chunk(spec, nu, size, child, nbins)

    bins = _reduce(run, units, threads, nbins)
    return PathLengthHistogram(
        spec,
        _counts_dict(bins, L),
        sample_size,
        "sampled",
        seed=seed,
        sample_size=sample_size,
        metadata={"generator": RNG_ALGORITHM},
    )

