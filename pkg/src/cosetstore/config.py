"""Global runtime knobs: memory budget and elimination acceleration.

The memory budget bounds the size of any single bit matrix.  It defaults
to 1 GiB and can be overridden either programmatically or through the
``CSTORE_MEM_BUDGET`` environment variable (bytes).
"""

from __future__ import annotations

import os

DEFAULT_MEM_BUDGET = 1 << 30  # 1 GiB for a single matrix

_mem_budget: int | None = None


def mem_budget() -> int:
    """Current per-matrix memory budget in bytes."""
    if _mem_budget is not None:
        return _mem_budget
    env = os.environ.get("CSTORE_MEM_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_MEM_BUDGET


def set_mem_budget(nbytes: int | None) -> None:
    """Override the budget (``None`` restores env/default resolution)."""
    global _mem_budget
    _mem_budget = nbytes
