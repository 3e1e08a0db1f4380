"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it imports and the inputs
fit its 64-bit masks; otherwise the pure-Python ``_pykernels`` run.  Setting
``WONDERBRAID_PURE=1`` forces the fallback.
"""
from __future__ import annotations

import os

from wonderbraid import _pykernels

try:
    if os.environ.get("WONDERBRAID_PURE"):
        raise ImportError("pure-Python kernels requested")
    from wonderbraid import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

_MASK_LIMIT = 1 << 64


def _fits(masks) -> bool:
    return all(0 <= m < _MASK_LIMIT for m in masks)


def count_complement(forms, n: int, q: int) -> int:
    if _ckernels is not None and q < (1 << 31):
        return _ckernels.count_complement(forms, n, q)
    return _pykernels.count_complement(forms, n, q)


def join_table(masks):
    if _ckernels is not None and _fits(masks):
        return _ckernels.join_table(masks)
    return _pykernels.join_table(masks)


def join_map_is_isomorphism(join, nflats, masks, factors, target, target_size, bottom, *, wide=None) -> bool:
    if wide is None:
        wide = not _fits(masks)
    if _ckernels is not None and not wide:
        return _ckernels.join_map_is_isomorphism(join, nflats, masks, factors, target, target_size, bottom)
    return _pykernels.join_map_is_isomorphism(join, nflats, masks, factors, target, target_size, bottom)
