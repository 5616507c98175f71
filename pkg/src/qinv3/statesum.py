"""Turaev-Viro state sums of triangulations against fusion category data.

The sum runs over admissible labellings of the edge classes (every face
class carries an admissible fusion triple after dualizing edges read
against their reference direction); each labelling contributes the product
of edge quantum dimensions and tetrahedron 6j values, and the total is
normalized by K^(-v) with v the number of vertex classes.

Enumeration assigns edge classes in index order (so the labelling stream
is lexicographic in (edge-class index, label index)) and prunes a branch
on the first inadmissible completed face.  Pointed categories reduce to an
exact admissible-labelling count; float categories accumulate in a fixed
deterministic order, identically in the pure and compiled kernels.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import _kernels
from .fusioncat import CategoryDataError, FusionData
from .tri import TET_EDGES, Triangulation, compute_skeleton
from .scalars import scalar_to_float


class LabellingSchedule:
    """Flattened face/tetrahedron completion events for the DFS kernels."""

    def __init__(self, tri: Triangulation, cat: FusionData):
        sk = compute_skeleton(tri)
        if not sk.sign_consistent:
            raise ValueError(
                f"{tri.name}: an edge class is reversed onto itself; "
                "labels have no consistent reference direction"
            )
        self.skeleton = sk
        self.cat = cat
        self.num_edges = sk.num_edges
        self.num_labels = cat.num_labels
        self.num_vertices = sk.num_vertices

        k = cat.num_labels
        self.dual = list(cat.dual)

        trip = bytearray(k * k * k)
        for (a, b, c) in cat.fusion:
            trip[(a * k + b) * k + c] = 1
        self.trip = bytes(trip)

        # face events: one per face class, fired when its last edge is set
        face_events: list[list[tuple]] = [[] for _ in range(max(sk.num_edges, 1))]
        for (t, f) in sk.face_reps:
            from .tri import FACE_VERTICES, EDGE_SLOT

            i, j, kk = FACE_VERTICES[f]
            entry = []
            depth = 0
            for (a, b) in ((i, j), (j, kk), (i, kk)):
                c, rev = sk.edge_class[t][EDGE_SLOT[(a, b)]]
                entry.extend([c, 1 if rev else 0])
                depth = max(depth, c)
            face_events[depth].append(tuple(entry))
        self.face_events = face_events

        # tet events: fired when the last of the six edge classes is set
        tet_events: list[list[tuple]] = [[] for _ in range(max(sk.num_edges, 1))]
        for t in range(tri.num_tets):
            entry = []
            depth = 0
            for s in range(6):
                c, rev = sk.edge_class[t][s]
                entry.extend([c, 1 if rev else 0])
                depth = max(depth, c)
            tet_events[depth].append(tuple(entry))
        self.tet_events = tet_events

        self.qdim = [scalar_to_float(q) for q in cat.qdim]
        self._arrays_ready = False
        self._sixj_ready = False

    # -- compiled-kernel views ------------------------------------------

    def _build_arrays(self):
        k = self.num_labels
        self.trip_arr = np.frombuffer(self.trip, dtype=np.uint8).copy()
        self.dual_arr = np.asarray(self.dual, dtype=np.int32)
        ptr = [0]
        flat: list[int] = []
        for events in self.face_events:
            for ev in events:
                flat.extend(ev)
            ptr.append(len(flat) // 6)
        self.face_ev_ptr = np.asarray(ptr, dtype=np.int32)
        self.face_ev_flat = np.asarray(flat, dtype=np.int32)
        ptr = [0]
        flat = []
        for events in self.tet_events:
            for ev in events:
                flat.extend(ev)
            ptr.append(len(flat) // 12)
        self.tet_ev_ptr = np.asarray(ptr, dtype=np.int32)
        self.tet_ev_flat = np.asarray(flat, dtype=np.int32)
        self.qdim_arr = np.asarray(self.qdim, dtype=np.float64)
        self._arrays_ready = True

    def _build_sixj(self):
        k = self.num_labels
        arr = np.zeros(k**6, dtype=np.float64)
        for key, val in self.cat.sixj.items():
            idx = 0
            for x in key:
                idx = idx * k + x
            arr[idx] = scalar_to_float(val)
        self.sixj_flat_list = arr.tolist()
        self.sixj_arr = arr
        self._sixj_ready = True

    def __getattr__(self, name):
        if name in ("trip_arr", "dual_arr", "face_ev_ptr", "face_ev_flat",
                    "tet_ev_ptr", "tet_ev_flat", "qdim_arr") and not self.__dict__.get(
                        "_arrays_ready", False):
            self._build_arrays()
            return getattr(self, name)
        if name in ("sixj_arr", "sixj_flat_list") and not self.__dict__.get(
                "_sixj_ready", False):
            self._build_sixj()
            return getattr(self, name)
        if name == "sixj_flat":
            return self.sixj_flat_list
        raise AttributeError(name)


def admissible_labellings(tri: Triangulation, cat: FusionData):
    """Yield admissible labellings (tuples indexed by edge class) in
    lexicographic order."""
    from ._kernels_py import _labelling_walk

    sch = LabellingSchedule(tri, cat)
    yield from _labelling_walk(sch)


def count_admissible_labellings(tri: Triangulation, cat: FusionData,
                                force_pure: bool = False) -> int:
    return _kernels.labelling_count(LabellingSchedule(tri, cat), force_pure=force_pure)


def _pointed(cat: FusionData) -> bool:
    return (
        cat.exact
        and all(q == 1 for q in cat.qdim)
        and all(v == 1 for v in cat.sixj.values())
    )


def _exact_generic_sum(sch: LabellingSchedule) -> Fraction:
    """Exact Fraction DFS for rational (non-pointed) category data."""
    from ._kernels_py import _labelling_walk

    cat = sch.cat
    sk = sch.skeleton
    total = Fraction(0)
    tets = [
        [sk.edge_class[t][s] for s in range(6)]
        for t in range(sk.num_tets)
    ]
    for labels in _labelling_walk(sch):
        w = Fraction(1)
        for c in labels:
            w *= cat.qdim[c]
        for slots in tets:
            key = tuple(
                cat.dual[labels[c]] if rev else labels[c] for (c, rev) in slots
            )
            w *= cat.sixj_value(key)
        total += w
    return total


def tv_state_sum(tri: Triangulation, cat: FusionData, force_pure: bool = False):
    """Turaev-Viro invariant K^(-v) * sum over admissible labellings of
    (product of edge qdims) * (product of tetrahedron 6j values).

    Exact Fraction for rational category data (pointed categories reduce to
    a labelling count), float otherwise with a fixed summation order.
    """
    sch = LabellingSchedule(tri, cat)
    v = sch.num_vertices
    if _pointed(cat):
        count = _kernels.labelling_count(sch, force_pure=force_pure)
        return Fraction(count) / Fraction(int(cat.K)) ** v
    if cat.exact:
        return _exact_generic_sum(sch) / Fraction(cat.K) ** v

    # check 6j coverage lazily: a missing entry for an admissible tuple is a
    # category-data integrity error, not a silent zero
    total = _kernels.labelling_sum(sch, force_pure=force_pure)
    return total * scalar_to_float(cat.K) ** (-v)


def verify_sixj_coverage(tri: Triangulation, cat: FusionData) -> None:
    """Raise CategoryDataError if some admissible labelling hits a missing
    6j entry (used by tests and the CLI before float evaluation)."""
    sch = LabellingSchedule(tri, cat)
    sk = sch.skeleton
    from ._kernels_py import _labelling_walk

    tets = [[sk.edge_class[t][s] for s in range(6)] for t in range(sk.num_tets)]
    for labels in _labelling_walk(sch):
        for slots in tets:
            key = tuple(
                cat.dual[labels[c]] if rev else labels[c] for (c, rev) in slots
            )
            cat.sixj_value(key)


def mirror_image(tri: Triangulation) -> Triangulation:
    """Relabel every tetrahedron by the odd permutation (0 1), reversing
    the orientation convention; the state sum must not change."""
    rho = (1, 0, 2, 3)
    gluings = []
    for t in range(tri.num_tets):
        for f in range(4):
            t2, f2, p = tri.gluing[t][f]
            if (t2, f2) < (t, f):
                continue
            newp = [0, 0, 0, 0]
            for v in range(4):
                newp[rho[v]] = rho[p[v]]
            gluings.append((t, rho[f], t2, rho[f2], tuple(newp)))
    return Triangulation(tri.num_tets, gluings, name=f"{tri.name}~mirror")
