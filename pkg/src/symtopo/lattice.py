"""Node addressing on the integer lattice ``[0, mu)^n``.

A node address is a tuple ``(l_1, ..., l_n)`` with ``0 <= l_i < mu``. Its
scalar label is ``kappa = sum(l_i * mu**(i-1))``: the *first* coordinate is
the least significant digit. The choice is internal; every metric is
invariant under reversing the coordinate order.

Symplectic topologies of highest weight ``(M, ..., M)`` use ``mu = 2M + 1``
and keep only the nodes with even label. Because ``mu`` is odd, an even label
is the same thing as an even number of odd coordinates. The weight index of
such a node is ``p = kappa // 2`` and its weight coordinates are
``m_i = l_i - M``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import MAX_LABEL
from .errors import CapacityError, DomainError, InadmissibleNodeError, SpecParseError

NodeAddress = tuple[int, ...]


class Family(enum.Enum):
    MESH = "mesh"
    HYPERCUBE = "hypercube"
    SYMPLECTIC = "symplectic"


@dataclass(frozen=True)
class TopologySpec:
    """Immutable description of one topology instance.

    Build instances with :meth:`mesh`, :meth:`hypercube`, :meth:`symplectic`
    or :meth:`parse`; ``mu`` is derived for the latter two families.
    """

    family: Family
    n: int
    mu: int
    M: int | None = None

    def __post_init__(self) -> None:
        for name in ("n", "mu"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise DomainError(f"{name} must be an integer, got {value!r}")
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if self.mu < 2:
            raise DomainError(f"mu must be >= 2, got {self.mu}")
        if self.family is Family.HYPERCUBE:
            if self.mu != 2:
                raise DomainError(f"hypercube requires mu = 2, got {self.mu}")
            if self.M is not None:
                raise DomainError("hypercube takes no M parameter")
        elif self.family is Family.MESH:
            if self.M is not None:
                raise DomainError("mesh takes no M parameter")
        elif self.family is Family.SYMPLECTIC:
            if self.M is None or self.M < 1:
                raise DomainError(f"symplectic requires M >= 1, got {self.M}")
            if self.mu != 2 * self.M + 1:
                raise DomainError(f"symplectic requires mu = 2M+1 = {2 * self.M + 1}, got {self.mu}")
        if self.mu**self.n - 1 > MAX_LABEL:
            raise CapacityError(
                f"{self}: labels up to mu**n - 1 = {self.mu**self.n - 1} exceed the 64-bit label range"
            )

    @classmethod
    def mesh(cls, mu: int, n: int) -> TopologySpec:
        return cls(Family.MESH, n, mu)

    @classmethod
    def hypercube(cls, n: int) -> TopologySpec:
        return cls(Family.HYPERCUBE, n, 2)

    @classmethod
    def symplectic(cls, M: int, n: int) -> TopologySpec:
        if isinstance(M, bool) or not isinstance(M, (int, np.integer)):
            raise DomainError(f"M must be an integer, got {M!r}")
        return cls(Family.SYMPLECTIC, n, 2 * M + 1, M)

    @property
    def is_symplectic(self) -> bool:
        return self.family is Family.SYMPLECTIC

    @property
    def lattice_size(self) -> int:
        """Number of points of the enclosing lattice, ``mu**n``."""
        return self.mu**self.n

    def __str__(self) -> str:
        if self.family is Family.MESH:
            return f"mesh:mu={self.mu},n={self.n}"
        if self.family is Family.HYPERCUBE:
            return f"hypercube:n={self.n}"
        return f"symplectic:M={self.M},n={self.n}"

    @classmethod
    def parse(cls, text: str) -> TopologySpec:
        """Parse ``mesh:mu=<int>,n=<int>``, ``hypercube:n=<int>`` or ``symplectic:M=<int>,n=<int>``."""
        return parse_spec(text)


_PARAMS = {
    "mesh": ("mu", "n"),
    "hypercube": ("n",),
    "symplectic": ("M", "n"),
}
_INT_RE = re.compile(r"[0-9]+")


def parse_spec(text: str) -> TopologySpec:
    stripped = text.strip()
    family, sep, rest = stripped.partition(":")
    if family not in _PARAMS:
        raise SpecParseError(text, family, f"unknown family, expected one of {sorted(_PARAMS)}")
    if not sep or not rest:
        raise SpecParseError(text, stripped, "missing parameters after ':'")
    expected = _PARAMS[family]
    values: dict[str, int] = {}
    for token in rest.split(","):
        key, eq, raw = token.partition("=")
        key, raw = key.strip(), raw.strip()
        if not eq:
            raise SpecParseError(text, token, "expected key=value")
        if key not in expected:
            raise SpecParseError(text, token, f"unknown parameter {key!r} for {family}")
        if key in values:
            raise SpecParseError(text, token, f"duplicate parameter {key!r}")
        if not _INT_RE.fullmatch(raw):
            raise SpecParseError(text, token, "value must be a non-negative integer")
        values[key] = int(raw)
    missing = [k for k in expected if k not in values]
    if missing:
        raise SpecParseError(text, stripped, f"missing parameter(s) {', '.join(missing)}")
    try:
        if family == "mesh":
            return TopologySpec.mesh(values["mu"], values["n"])
        if family == "hypercube":
            return TopologySpec.hypercube(values["n"])
        return TopologySpec.symplectic(values["M"], values["n"])
    except DomainError as exc:
        raise SpecParseError(text, stripped, str(exc)) from exc


@dataclass(frozen=True)
class NodeLabel:
    kappa: int
    p: int | None = None


def _check_address(address: Sequence[int], spec: TopologySpec) -> NodeAddress:
    coords = tuple(int(c) for c in address)
    if len(coords) != spec.n:
        raise DomainError(f"address {coords} has {len(coords)} coordinates, {spec} needs {spec.n}")
    for c in coords:
        if not 0 <= c < spec.mu:
            raise DomainError(f"coordinate {c} of {coords} outside [0, {spec.mu - 1}] for {spec}")
    return coords


def _odd_count(coords: Sequence[int]) -> int:
    return sum(c & 1 for c in coords)


def is_admissible(address: Sequence[int], spec: TopologySpec) -> bool:
    """True if the (in-range) address is a node of ``spec``.

    Mesh and hypercube accept every address; symplectic accepts those
    with an even number of odd coordinates.
    """
    coords = _check_address(address, spec)
    if not spec.is_symplectic:
        return True
    return _odd_count(coords) % 2 == 0


def label(address: Sequence[int], spec: TopologySpec) -> NodeLabel:
    coords = _check_address(address, spec)
    kappa = 0
    weight = 1
    for c in coords:
        kappa += c * weight
        weight *= spec.mu
    if spec.is_symplectic:
        if kappa % 2:
            raise InadmissibleNodeError(f"{coords} has odd label {kappa} under {spec}")
        return NodeLabel(kappa, kappa // 2)
    return NodeLabel(kappa)


def unlabel(kappa: int, spec: TopologySpec) -> NodeAddress:
    kappa = int(kappa)
    if not 0 <= kappa < spec.lattice_size:
        raise DomainError(f"label {kappa} outside [0, {spec.lattice_size - 1}] for {spec}")
    if spec.is_symplectic and kappa % 2:
        raise InadmissibleNodeError(f"odd label {kappa} is not a node of {spec}")
    # peel digits from the most significant coordinate down
    coords = [0] * spec.n
    rest = kappa
    for i in range(spec.n - 1, -1, -1):
        place = spec.mu**i
        coords[i] = rest // place
        rest -= coords[i] * place
    return tuple(coords)


def from_weight_index(p: int, spec: TopologySpec) -> NodeAddress:
    """Address of the symplectic node with weight index ``p`` (label ``2p``)."""
    if not spec.is_symplectic:
        raise DomainError(f"weight indices only exist for symplectic specs, not {spec}")
    return unlabel(2 * int(p), spec)


def node_count(spec: TopologySpec) -> int:
    if spec.family is Family.HYPERCUBE:
        return 2**spec.n
    if spec.family is Family.MESH:
        return spec.mu**spec.n
    return ((2 * spec.M + 1) ** spec.n + 1) // 2


def index_of(kappa: int, spec: TopologySpec) -> int:
    """Contiguous row index of a node: ``kappa``, or ``kappa // 2`` for symplectic."""
    return kappa // 2 if spec.is_symplectic else kappa


def label_of_index(index: int, spec: TopologySpec) -> int:
    return 2 * index if spec.is_symplectic else index


def weight_coordinates(address: Sequence[int], spec: TopologySpec) -> tuple[int, ...]:
    """Symplectic weight ``(m_1, ..., m_n)`` with ``m_i = l_i - M``; display only."""
    if not spec.is_symplectic:
        raise DomainError(f"weights only exist for symplectic specs, not {spec}")
    return tuple(c - spec.M for c in _check_address(address, spec))


def place_values(spec: TopologySpec) -> np.ndarray:
    """``[mu**0, mu**1, ..., mu**(n-1)]`` as int64."""
    return np.array([spec.mu**i for i in range(spec.n)], dtype=np.int64)


def coords_of_labels(kappas: np.ndarray, spec: TopologySpec) -> np.ndarray:
    """Vectorised :func:`unlabel` without validation; returns an ``(k, n)`` array."""
    kappas = np.asarray(kappas, dtype=np.int64)
    out = np.empty((kappas.shape[0], spec.n), dtype=np.int16 if spec.mu <= 2**15 else np.int64)
    rest = kappas.copy()
    for i in range(spec.n):
        rest, out[:, i] = np.divmod(rest, spec.mu)
    return out


def labels_of_indices(indices: np.ndarray, spec: TopologySpec) -> np.ndarray:
    indices = np.asarray(indices, dtype=np.int64)
    return 2 * indices if spec.is_symplectic else indices


def all_coords(spec: TopologySpec) -> np.ndarray:
    """Coordinates of every node, row ``r`` holding the node with index ``r``."""
    return coords_of_labels(labels_of_indices(np.arange(node_count(spec)), spec), spec)
