"""Kernel dispatch: compiled Cython core when available, pure Python otherwise.

Set QINV3_PURE_PY=1 to force the pure-Python kernels (used by the benchmark
and the kernel-equality tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

_FORCE_PURE = os.environ.get("QINV3_PURE_PY", "") == "1"

try:
    from . import _core  # type: ignore[attr-defined]

    HAS_COMPILED = True
except ImportError:  # pragma: no cover - build-environment dependent
    _core = None
    HAS_COMPILED = False

USE_COMPILED = HAS_COMPILED and not _FORCE_PURE


def hom_count(schedule, force_pure: bool = False) -> int:
    if USE_COMPILED and not force_pure and schedule.fits_int64:
        return _core.hom_count(
            schedule.n,
            schedule.mult_flat,
            schedule.inv_arr,
            schedule.ngens,
            schedule.num_relators,
            schedule.first_values_arr,
            schedule.first_weights_arr,
            schedule.let_pos_flat,
            schedule.let_neg_flat,
            schedule.rel_ptr_arr,
            schedule.ev_ptr_arr,
            schedule.ev_rel_arr,
            schedule.ev_lo_arr,
            schedule.ev_hi_arr,
            schedule.ev_complete_arr,
        )
    return _kernels_py.hom_count(schedule)


def labelling_count(schedule, force_pure: bool = False) -> int:
    if USE_COMPILED and not force_pure:
        return _core.labelling_count(
            schedule.num_edges,
            schedule.num_labels,
            schedule.trip_arr,
            schedule.dual_arr,
            schedule.face_ev_ptr,
            schedule.face_ev_flat,
        )
    return _kernels_py.labelling_count(schedule)


def labelling_sum(schedule, force_pure: bool = False) -> float:
    if USE_COMPILED and not force_pure:
        return _core.labelling_sum(
            schedule.num_edges,
            schedule.num_labels,
            schedule.trip_arr,
            schedule.dual_arr,
            schedule.face_ev_ptr,
            schedule.face_ev_flat,
            schedule.tet_ev_ptr,
            schedule.tet_ev_flat,
            schedule.qdim_arr,
            schedule.sixj_arr,
        )
    return _kernels_py.labelling_sum(schedule)
