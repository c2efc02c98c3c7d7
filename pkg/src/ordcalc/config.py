"""Runtime configuration shared by the toolkit.

The stability depth N is not part of the term types; it lives here and is
read by validation, classification and enumeration.  Changing N clears all
memo tables registered through :func:`memo`.
"""
from __future__ import annotations

import functools
import os
import threading
from contextlib import contextmanager

MIN_N = 1
MAX_N = 8
DEFAULT_BUDGET = 200_000

_lock = threading.RLock()
_state = {"N": 1, "budget": DEFAULT_BUDGET}
_caches = []


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    return int(raw)


def get_N() -> int:
    return _state["N"]


def set_N(n: int) -> None:
    n = int(n)
    if not MIN_N <= n <= MAX_N:
        raise ValueError(f"N must lie in [{MIN_N}, {MAX_N}], got {n}")
    with _lock:
        if n != _state["N"]:
            _state["N"] = n
            clear_caches()


def get_budget() -> int:
    return _state["budget"]


def set_budget(b: int) -> None:
    _state["budget"] = int(b)


def load_env() -> None:
    """Apply ORDCALC_N / ORDCALC_BUDGET if present."""
    set_N(_env_int("ORDCALC_N", get_N()))
    set_budget(_env_int("ORDCALC_BUDGET", get_budget()))


@contextmanager
def use_N(n: int):
    old = get_N()
    set_N(n)
    try:
        yield
    finally:
        set_N(old)


def memo(fn):
    """Unbounded memoisation that is dropped whenever N changes."""
    cached = functools.lru_cache(maxsize=None)(fn)
    _caches.append(cached)
    return cached


def clear_caches() -> None:
    for c in _caches:
        c.cache_clear()
