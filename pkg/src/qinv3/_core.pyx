# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels: relator-pruned homomorphism counting and
Turaev-Viro labelling enumeration.  Mirrors qinv3._kernels_py exactly
(same traversal order, same summation order)."""

import numpy as np


def hom_count(int n,
              int[:] mult,
              int[:] inv,
              int ngens,
              int nrels,
              int[:] first_values,
              long long[:] first_weights,
              int[:] let_pos,
              int[:] let_neg,
              int[:] rel_ptr,
              int[:] ev_ptr,
              int[:] ev_rel,
              int[:] ev_lo,
              int[:] ev_hi,
              int[:] ev_complete):
    if ngens == 0:
        return 1

    assign_np = np.zeros(ngens, dtype=np.int32)
    it_np = np.zeros(ngens, dtype=np.int32)
    partial_np = np.zeros(nrels if nrels else 1, dtype=np.int32)
    nev = ev_ptr[ngens]
    undo_np = np.zeros(nev if nev else 1, dtype=np.int32)

    cdef int[:] assign = assign_np
    cdef int[:] it = it_np
    cdef int[:] partial = partial_np
    cdef int[:] undo = undo_np

    cdef long long total = 0
    cdef int nfirst = first_values.shape[0]
    cdef int d = 0
    cdef int m, v, e, rel, k, x, base, ok
    cdef int val

    it[0] = -1
    while d >= 0:
        it[d] += 1
        m = nfirst if d == 0 else n
        if it[d] >= m:
            d -= 1
            if d >= 0:
                for e in range(ev_ptr[d], ev_ptr[d + 1]):
                    partial[ev_rel[e]] = undo[e]
            continue
        val = first_values[it[d]] if d == 0 else it[d]
        assign[d] = val

        ok = 1
        for e in range(ev_ptr[d], ev_ptr[d + 1]):
            rel = ev_rel[e]
            undo[e] = partial[rel]
            v = partial[rel]
            base = rel_ptr[rel]
            for k in range(ev_lo[e], ev_hi[e]):
                x = assign[let_pos[base + k]]
                if let_neg[base + k]:
                    x = inv[x]
                v = mult[v * n + x]
            partial[rel] = v
            if ev_complete[e] and v != 0:
                ok = 0
                # undo events applied at this depth (inclusive)
                while e >= ev_ptr[d]:
                    partial[ev_rel[e]] = undo[e]
                    e -= 1
                break
        if not ok:
            continue
        if d == ngens - 1:
            total += first_weights[it[0]]
            for e in range(ev_ptr[d], ev_ptr[d + 1]):
                partial[ev_rel[e]] = undo[e]
            continue
        d += 1
        it[d] = -1
    return total


def labelling_count(int nedges,
                    int k,
                    unsigned char[:] trip,
                    int[:] dual,
                    int[:] face_ev_ptr,
                    int[:] face_ev_flat):
    if nedges == 0:
        return 1

    labels_np = np.zeros(nedges, dtype=np.int32)
    it_np = np.zeros(nedges, dtype=np.int32)
    cdef int[:] labels = labels_np
    cdef int[:] it = it_np

    cdef long long total = 0
    cdef int d = 0
    cdef int e, a, b, c, ok, base

    it[0] = -1
    while d >= 0:
        it[d] += 1
        if it[d] >= k:
            d -= 1
            continue
        labels[d] = it[d]
        ok = 1
        for e in range(face_ev_ptr[d], face_ev_ptr[d + 1]):
            base = 6 * e
            a = labels[face_ev_flat[base]]
            if face_ev_flat[base + 1]:
                a = dual[a]
            b = labels[face_ev_flat[base + 2]]
            if face_ev_flat[base + 3]:
                b = dual[b]
            c = labels[face_ev_flat[base + 4]]
            if face_ev_flat[base + 5]:
                c = dual[c]
            if not trip[(a * k + b) * k + c]:
                ok = 0
                break
        if not ok:
            continue
        if d == nedges - 1:
            total += 1
            continue
        d += 1
        it[d] = -1
    return total


def labelling_sum(int nedges,
                  int k,
                  unsigned char[:] trip,
                  int[:] dual,
                  int[:] face_ev_ptr,
                  int[:] face_ev_flat,
                  int[:] tet_ev_ptr,
                  int[:] tet_ev_flat,
                  double[:] qdim,
                  double[:] sixj):
    if nedges == 0:
        return 1.0

    labels_np = np.zeros(nedges, dtype=np.int32)
    it_np = np.zeros(nedges, dtype=np.int32)
    weight_np = np.zeros(nedges + 1, dtype=np.float64)
    cdef int[:] labels = labels_np
    cdef int[:] it = it_np
    cdef double[:] weight = weight_np

    cdef double total = 0.0
    cdef double w
    cdef int d = 0
    cdef int e, a, b, c, ok, base, idx, lb
    cdef long long key

    weight[0] = 1.0
    it[0] = -1
    while d >= 0:
        it[d] += 1
        if it[d] >= k:
            d -= 1
            continue
        labels[d] = it[d]
        ok = 1
        for e in range(face_ev_ptr[d], face_ev_ptr[d + 1]):
            base = 6 * e
            a = labels[face_ev_flat[base]]
            if face_ev_flat[base + 1]:
                a = dual[a]
            b = labels[face_ev_flat[base + 2]]
            if face_ev_flat[base + 3]:
                b = dual[b]
            c = labels[face_ev_flat[base + 4]]
            if face_ev_flat[base + 5]:
                c = dual[c]
            if not trip[(a * k + b) * k + c]:
                ok = 0
                break
        if not ok:
            continue
        w = weight[d] * qdim[labels[d]]
        for e in range(tet_ev_ptr[d], tet_ev_ptr[d + 1]):
            base = 12 * e
            key = 0
            for idx in range(6):
                lb = labels[tet_ev_flat[base + 2 * idx]]
                if tet_ev_flat[base + 2 * idx + 1]:
                    lb = dual[lb]
                key = key * k + lb
            w *= sixj[key]
        if d == nedges - 1:
            total += w
            continue
        d += 1
        weight[d] = w
        it[d] = -1
    return total
