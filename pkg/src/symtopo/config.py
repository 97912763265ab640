"""Enumeration budgets.

Defaults can be overridden with the environment variables
``SYMTOPO_BUDGET_EDGES``, ``SYMTOPO_BUDGET_PAIRS`` and
``SYMTOPO_BUDGET_VERIFY_NODES``; explicit keyword arguments win over both.
"""

from __future__ import annotations

import os

DEFAULT_BUDGET_EDGES = 10**7
DEFAULT_BUDGET_PAIRS = 10**9
DEFAULT_BUDGET_VERIFY_NODES = 2 * 10**3

# largest label value we are willing to represent; labels live in int64 arrays
MAX_LABEL = 2**63 - 1


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    value = int(raw)
    if value < 1:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}")
    return value


def budget_edges(override: int | None = None) -> int:
    if override is not None:
        return override
    return _env_int("SYMTOPO_BUDGET_EDGES", DEFAULT_BUDGET_EDGES)


def budget_pairs(override: int | None = None) -> int:
    if override is not None:
        return override
    return _env_int("SYMTOPO_BUDGET_PAIRS", DEFAULT_BUDGET_PAIRS)


def budget_verify_nodes(override: int | None = None) -> int:
    if override is not None:
        return override
    return _env_int("SYMTOPO_BUDGET_VERIFY_NODES", DEFAULT_BUDGET_VERIFY_NODES)
