"""Switch between numba-compiled kernels and their plain Python twins.

Set ``GOODORIENT_DISABLE_NUMBA=1`` before import to run the fallback path.
The kernels are written once and only compiled when numba is active, so
both paths execute identical source.
"""
import os


def flag_disables(value: str) -> bool:
    return value.strip().lower() not in ("", "0", "false", "no")


_disabled = flag_disables(os.environ.get("GOODORIENT_DISABLE_NUMBA", ""))

try:
    if _disabled:
        raise ImportError
    import numba
    from numba import types as _nbtypes
    from numba.typed import Dict as _NbDict
except ImportError:
    numba = None

USE_NUMBA = numba is not None

# bitmask kernels use int64 words
MAX_BITMASK_VERTICES = 62


def jit(fn):
    if USE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


def new_pair_set(compiled: bool):
    """Mapping keyed by (int, int), usable from the compiled search kernel."""
    if compiled:
        return _NbDict.empty(
            key_type=_nbtypes.UniTuple(_nbtypes.int64, 2),
            value_type=_nbtypes.boolean,
        )
    return {}


def backend() -> str:
    return "numba" if USE_NUMBA else "python"
