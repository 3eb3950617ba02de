"""Kernel backend selection.

SIM_BACKEND picks the hot-kernel implementation: "numba" (the default when
numba is importable) or "numpy" for the pure-vectorized fallback.
SIM_THREADS caps numba worker threads (0 or unset = auto). The numpy
fallback is single-threaded and ignores SIM_THREADS.
"""

import os

_choice = os.environ.get("SIM_BACKEND", "auto").strip().lower() or "auto"
if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(f"SIM_BACKEND must be 'numba' or 'numpy', got {_choice!r}")

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    numba = None
    HAVE_NUMBA = False

if _choice == "numba" and not HAVE_NUMBA:  # pragma: no cover
    raise ImportError("SIM_BACKEND=numba requested but numba is not importable")

USE_NUMBA = HAVE_NUMBA if _choice == "auto" else _choice == "numba"


def active_backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def resolve_backend(backend: str | None) -> str:
    """Normalize an explicit backend request against availability."""
    if backend is None:
        return active_backend()
    backend = backend.lower()
    if backend not in ("numba", "numpy"):
        raise ValueError(f"backend must be 'numba' or 'numpy', got {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return backend


def apply_thread_cap() -> int:
    """Apply SIM_THREADS to the numba thread pool; returns the cap in force."""
    if not HAVE_NUMBA:
        return 1
    avail = numba.config.NUMBA_NUM_THREADS
    raw = os.environ.get("SIM_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = avail
    n = min(n, avail)
    numba.set_num_threads(n)
    return n
