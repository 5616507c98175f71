"""Pure-Python fallback kernels for the two enumeration hot loops.

The compiled twin lives in qinv3._core (Cython).  Both implement exactly
the same depth-first traversals in the same order, so integer results are
identical and float results are bit-for-bit reproducible across the two.
"""

from __future__ import annotations


def hom_count(sch) -> int:
    """Count subtree leaves of the relator-pruned assignment tree.

    ``sch`` is a homcount.HomSchedule.  Depth d assigns a value to the d-th
    generator in schedule order; each depth replays its precomputed batch of
    newly-ready relator letters and prunes when a completed relator product
    is not the identity.
    """
    ngens = sch.ngens
    if ngens == 0:
        return 1
    n = sch.n
    mult = sch.mult_rows          # list of n lists
    inv = sch.inv                 # list of n ints
    events = sch.events_by_depth  # per depth: list of (rel, lo, hi, complete)
    let_pos = sch.let_pos
    let_neg = sch.let_neg
    nrels = sch.num_relators

    partial = [0] * nrels
    assign = [0] * ngens

    def walk(depth: int) -> int:
        if depth == ngens:
            return 1
        if depth == 0:
            values = sch.first_values
            weights = sch.first_weights
        else:
            values = range(n)
            weights = None
        subtotal = 0
        depth_events = events[depth]
        for vi, val in enumerate(values):
            assign[depth] = val
            ok = True
            saved = []
            for rel, lo, hi, complete in depth_events:
                old = partial[rel]
                saved.append((rel, old))
                v = old
                for k in range(lo, hi):
                    x = assign[let_pos[rel][k]]
                    if let_neg[rel][k]:
                        x = inv[x]
                    v = mult[v][x]
                partial[rel] = v
                if complete and v != 0:
                    ok = False
                    break
            if ok:
                leaves = walk(depth + 1)
                if weights is not None:
                    subtotal += weights[vi] * leaves
                else:
                    subtotal += leaves
            for rel, old in saved:
                partial[rel] = old
        return subtotal

    return walk(0)


def labelling_count(sch) -> int:
    """Count admissible edge labellings (all weights 1; pointed categories)."""
    total = 0
    for _ in _labelling_walk(sch):
        total += 1
    return total


def labelling_sum(sch) -> float:
    """Float-weighted state sum: per-edge qdim factors times per-tet 6j
    factors, accumulated in deterministic DFS order."""
    nedges = sch.num_edges
    k = sch.num_labels
    qdim = sch.qdim
    sixj = sch.sixj_flat
    labels = [0] * nedges
    total = 0.0

    trip = sch.trip
    face_events = sch.face_events      # per depth: (e1, d1, e2, d2, e3, d3)
    tet_events = sch.tet_events        # per depth: 12-tuples (edge, dualflag)*6
    dual = sch.dual

    stack_weight = [0.0] * (nedges + 1)
    stack_weight[0] = 1.0
    depth = 0
    label_at = [0] * nedges
    label_at[0] = -1
    while depth >= 0:
        label_at[depth] += 1
        if label_at[depth] >= k:
            depth -= 1
            continue
        lab = label_at[depth]
        labels[depth] = lab
        ok = True
        for e1, d1, e2, d2, e3, d3 in face_events[depth]:
            a = labels[e1]
            if d1:
                a = dual[a]
            b = labels[e2]
            if d2:
                b = dual[b]
            c = labels[e3]
            if d3:
                c = dual[c]
            if not trip[(a * k + b) * k + c]:
                ok = False
                break
        if not ok:
            continue
        w = stack_weight[depth] * qdim[lab]
        for ev in tet_events[depth]:
            key = 0
            for idx in range(6):
                e = ev[2 * idx]
                lb = labels[e]
                if ev[2 * idx + 1]:
                    lb = dual[lb]
                key = key * k + lb
            w *= sixj[key]
        if depth + 1 == nedges:
            total += w
        else:
            depth += 1
            stack_weight[depth] = w
            label_at[depth] = -1
    return total


def _labelling_walk(sch):
    """Yield admissible labellings (as tuples) in lexicographic order."""
    nedges = sch.num_edges
    k = sch.num_labels
    trip = sch.trip
    dual = sch.dual
    face_events = sch.face_events
    labels = [0] * nedges
    if nedges == 0:
        yield ()
        return
    depth = 0
    label_at = [-1] + [0] * (nedges - 1)
    while depth >= 0:
        label_at[depth] += 1
        if label_at[depth] >= k:
            depth -= 1
            continue
        labels[depth] = label_at[depth]
        ok = True
        for e1, d1, e2, d2, e3, d3 in face_events[depth]:
            a = labels[e1]
            if d1:
                a = dual[a]
            b = labels[e2]
            if d2:
                b = dual[b]
            c = labels[e3]
            if d3:
                c = dual[c]
            if not trip[(a * k + b) * k + c]:
                ok = False
                break
        if not ok:
            continue
        if depth + 1 == nedges:
            yield tuple(labels)
        else:
            depth += 1
            label_at[depth] = -1
