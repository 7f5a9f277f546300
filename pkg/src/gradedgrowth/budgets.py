"""Memory-budget knobs.

The environment variable GRADEDGROWTH_BUDGET_MB, when set, scales down the
default caps of the memory-heavy operations (ball BFS, finite group algebra
construction, quotient enumeration).
"""

from __future__ import annotations

import os

DEFAULT_BALL_CAP = 10_000_000
DEFAULT_ALGEBRA_CAP = 2048
DEFAULT_QUOTIENT_CAP = 2_000_000

# rough elements-per-megabyte figures used to translate the env budget
_BALL_ELEMS_PER_MB = 20_000
_QUOTIENT_ELEMS_PER_MB = 20_000


def _env_mb() -> int | None:
    raw = os.environ.get("GRADEDGROWTH_BUDGET_MB")
    if not raw:
        return None
    try:
        return max(1, int(raw))
    except ValueError:
        return None


def ball_cap(override: int | None = None) -> int:
    if override is not None:
        return override
    mb = _env_mb()
    if mb is not None:
        return max(1000, mb * _BALL_ELEMS_PER_MB)
    return DEFAULT_BALL_CAP


def algebra_cap(override: int | None = None) -> int:
    if override is not None:
        return override
    return DEFAULT_ALGEBRA_CAP


def quotient_cap(override: int | None = None) -> int:
    if override is not None:
        return override
    mb = _env_mb()
    if mb is not None:
        return max(1000, mb * _QUOTIENT_ELEMS_PER_MB)
    return DEFAULT_QUOTIENT_CAP
