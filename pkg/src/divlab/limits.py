"""Memory budget for explicit enumerations."""

from __future__ import annotations

import os

DEFAULT_BUDGET_BYTES = 1 << 31  # Q_14 (2^28 words) fits, Q_15 does not
WORD_BYTES = 8


def budget_bytes(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("DIVLAB_BUDGET_BYTES")
    return int(env) if env else DEFAULT_BUDGET_BYTES


def fits(n_words: int, override: int | None = None) -> bool:
    return n_words * WORD_BYTES <= budget_bytes(override)
