"""Root vectors of sp(2n, C): long roots ``±2e_i`` and short roots ``±e_i ± e_j``.

Every function returns a list sorted lexicographically by components so that
downstream neighbour enumeration is deterministic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError


class RootKind(enum.Enum):
    LONG = "long"
    SHORT = "short"


class RootSign(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class RootVector:
    components: tuple[int, ...]
    kind: RootKind

    @property
    def sign(self) -> RootSign:
        # lexicographic: sign of the first non-zero component
        first = next(c for c in self.components if c != 0)
        return RootSign.POSITIVE if first > 0 else RootSign.NEGATIVE

    @property
    def is_strictly_positive(self) -> bool:
        """No negative component (``2e_i`` and ``e_i + e_j``)."""
        return all(c >= 0 for c in self.components)

    def __neg__(self) -> RootVector:
        return RootVector(tuple(-c for c in self.components), self.kind)

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)


def _check_rank(n: int) -> None:
    if n < 1:
        raise DomainError(f"rank must be >= 1, got {n}")


def _sorted(roots) -> list[RootVector]:
    return sorted(roots, key=lambda r: r.components)


@lru_cache(maxsize=None)
def _long(n: int) -> tuple[RootVector, ...]:
    out = []
    for i in range(n):
        for s in (2, -2):
            v = [0] * n
            v[i] = s
            out.append(RootVector(tuple(v), RootKind.LONG))
    return tuple(_sorted(out))


@lru_cache(maxsize=None)
def _short(n: int) -> tuple[RootVector, ...]:
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * n
                    v[i], v[j] = si, sj
                    out.append(RootVector(tuple(v), RootKind.SHORT))
    return tuple(_sorted(out))


def long_roots(n: int) -> list[RootVector]:
    _check_rank(n)
    return list(_long(n))


def short_roots(n: int) -> list[RootVector]:
    _check_rank(n)
    return list(_short(n))


def all_roots(n: int) -> list[RootVector]:
    _check_rank(n)
    return _sorted(_long(n) + _short(n))


def positive_roots(n: int) -> list[RootVector]:
    return [r for r in all_roots(n) if r.sign is RootSign.POSITIVE]


def strictly_positive_roots(n: int) -> list[RootVector]:
    """The ``n(n+1)/2`` roots with no negative component."""
    return [r for r in all_roots(n) if r.is_strictly_positive]
