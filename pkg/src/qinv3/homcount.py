"""Homomorphism counting, Dijkgraaf-Witten invariants, quotient fingerprints.

The count |Hom(pi, G)| is computed by depth-first assignment of generator
images with incremental relator-prefix pruning: generators are assigned in
descending relator-occupancy order, each relator's partial product is
extended as soon as new letters become evaluable, and a branch dies when a
completed relator is not the identity.  The first assigned generator ranges
over conjugacy-class representatives only, with each subtree weighted by
the class size (conjugating a homomorphism is a bijection between the
fibers over conjugate images).

The untwisted Dijkgraaf-Witten invariant is the exact rational
|Hom(pi_1(M), G)| / |G|.  Fingerprints tabulate counts over a canonically
ordered catalog of finite groups; equal fingerprints over *all* finite
groups is equivalent to isomorphic profinite completions, so catalog
reports always name their truncation bound.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .fingroup import GroupTable, conjugacy_classes, make_group
from .fpgroup import Presentation, free_reduce, word_letters


class HomSchedule:
    """Precomputed DFS schedule shared by the pure and compiled kernels."""

    def __init__(self, p: Presentation, g: GroupTable, symmetry: bool = True):
        self.n = g.order
        relators = [word_letters(r) for r in p.relators if free_reduce(r)]
        ngens = p.num_generators
        self.ngens = ngens

        occupancy = [0] * ngens
        for rel in relators:
            for gen, _ in rel:
                occupancy[gen] += 1
        order = sorted(range(ngens), key=lambda i: (-occupancy[i], i))
        self.assign_order = order
        depth_of_gen = {gen: d for d, gen in enumerate(order)}

        self.num_relators = len(relators)
        self.let_pos = []
        self.let_neg = []
        for rel in relators:
            self.let_pos.append([depth_of_gen[gen] for gen, _ in rel])
            self.let_neg.append([1 if sign < 0 else 0 for _, sign in rel])

        # events_by_depth[d]: letters that become evaluable once the
        # generator at schedule position d is assigned
        events: list[list[tuple[int, int, int, bool]]] = [[] for _ in range(ngens)]
        for ridx, rel in enumerate(relators):
            length = len(rel)
            prefix = 0
            for d in range(ngens):
                hi = prefix
                while hi < length and self.let_pos[ridx][hi] <= d:
                    hi += 1
                if hi > prefix:
                    events[d].append((ridx, prefix, hi, hi == length))
                    prefix = hi
        self.events_by_depth = events

        self.mult_rows = [list(map(int, row)) for row in g.product]
        self.inv = [int(x) for x in g.inverse]

        if symmetry and ngens >= 1:
            cc = conjugacy_classes(g)
            self.first_values = list(cc.representatives)
            self.first_weights = list(cc.sizes)
        else:
            self.first_values = list(range(self.n))
            self.first_weights = [1] * self.n

        # the compiled kernel accumulates in int64; n^ngens bounds the count
        self.fits_int64 = self.n**max(ngens, 1) < 2**62

        self._arrays_ready = False

    def _build_arrays(self):
        self.mult_flat = np.ascontiguousarray(
            np.asarray(self.mult_rows, dtype=np.int32).reshape(-1)
            if self.n
            else np.zeros(0, dtype=np.int32)
        )
        self.inv_arr = np.asarray(self.inv, dtype=np.int32)
        self.first_values_arr = np.asarray(self.first_values, dtype=np.int32)
        self.first_weights_arr = np.asarray(self.first_weights, dtype=np.int64)
        rel_ptr = [0]
        pos_flat: list[int] = []
        neg_flat: list[int] = []
        for pos, neg in zip(self.let_pos, self.let_neg):
            pos_flat.extend(pos)
            neg_flat.extend(neg)
            rel_ptr.append(len(pos_flat))
        self.rel_ptr_arr = np.asarray(rel_ptr, dtype=np.int32)
        self.let_pos_flat = np.asarray(pos_flat, dtype=np.int32)
        self.let_neg_flat = np.asarray(neg_flat, dtype=np.int32)
        ev_ptr = [0]
        ev_rel: list[int] = []
        ev_lo: list[int] = []
        ev_hi: list[int] = []
        ev_complete: list[int] = []
        for depth_events in self.events_by_depth:
            for rel, lo, hi, complete in depth_events:
                ev_rel.append(rel)
                ev_lo.append(lo)
                ev_hi.append(hi)
                ev_complete.append(1 if complete else 0)
            ev_ptr.append(len(ev_rel))
        self.ev_ptr_arr = np.asarray(ev_ptr, dtype=np.int32)
        self.ev_rel_arr = np.asarray(ev_rel, dtype=np.int32)
        self.ev_lo_arr = np.asarray(ev_lo, dtype=np.int32)
        self.ev_hi_arr = np.asarray(ev_hi, dtype=np.int32)
        self.ev_complete_arr = np.asarray(ev_complete, dtype=np.int32)
        self._arrays_ready = True

    def __getattr__(self, name):
        if name in (
            "mult_flat", "inv_arr", "first_values_arr", "first_weights_arr",
            "rel_ptr_arr", "let_pos_flat", "let_neg_flat", "ev_ptr_arr",
            "ev_rel_arr", "ev_lo_arr", "ev_hi_arr", "ev_complete_arr",
        ) and not self.__dict__.get("_arrays_ready", False):
            self._build_arrays()
            return getattr(self, name)
        raise AttributeError(name)


def count_homs(p: Presentation, g: GroupTable, symmetry: bool = True,
               force_pure: bool = False) -> int:
    """Exact |Hom(pi, G)| as an arbitrary-precision integer (always >= 1)."""
    return _kernels.hom_count(HomSchedule(p, g, symmetry), force_pure=force_pure)


def brute_force_count_homs(p: Presentation, g: GroupTable) -> int:
    """Unpruned, unreduced oracle: try every generator assignment."""
    n = g.order
    relators = [word_letters(r) for r in p.relators]
    count = 0
    for assign in itertools.product(range(n), repeat=p.num_generators):
        ok = True
        for rel in relators:
            v = 0
            for gen, sign in rel:
                x = assign[gen] if sign > 0 else g.inv(assign[gen])
                v = g.mul(v, x)
            if v != 0:
                ok = False
                break
        if ok:
            count += 1
    return count


def dw_invariant(p: Presentation, g: GroupTable, force_pure: bool = False) -> Fraction:
    """Untwisted Dijkgraaf-Witten invariant |Hom(pi_1, G)| / |G|."""
    return Fraction(count_homs(p, g, force_pure=force_pure), g.order)


# ---------------------------------------------------------------------------
# catalog and fingerprints

# Every isomorphism class of order <= 15 (the classification is classical),
# plus named larger families kept small enough for desk-scale fingerprints.
FULL_CATALOG: tuple[str, ...] = tuple(
    sorted(
        [
            "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7",
            "Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8",
            "Z9", "Z3xZ3", "Z10", "D5", "Z11",
            "Z12", "Z2xZ6", "A4", "D6", "Dic3",
            "Z13", "Z14", "D7", "Z15",
            "S4", "SL2_3", "A5",
        ],
        key=lambda s: (make_group(s).order, s),
    )
)


def canonical_catalog(specs=None) -> tuple[str, ...]:
    """Catalog sorted by (group order, spec string); the fingerprint order."""
    if specs is None:
        return FULL_CATALOG
    return tuple(sorted(set(specs), key=lambda s: (make_group(s).order, s)))


def catalog_up_to_order(max_order: int) -> tuple[str, ...]:
    return tuple(s for s in FULL_CATALOG if make_group(s).order <= max_order)


@dataclass(frozen=True)
class Fingerprint:
    """Hom counts over a canonically ordered catalog; bit-wise comparable."""

    entries: tuple[tuple[str, int], ...]

    @property
    def catalog(self) -> tuple[str, ...]:
        return tuple(spec for spec, _ in self.entries)

    def count(self, spec: str) -> int:
        for s, c in self.entries:
            if s == spec:
                return c
        raise KeyError(spec)


def _fingerprint_entry(args) -> int:
    pres, spec = args
    return count_homs(pres, make_group(spec))


def fingerprint(p: Presentation, catalog=None, threads: int = 1) -> Fingerprint:
    """Hom counts of p against each catalog group, in canonical order.

    ``threads`` > 1 partitions the catalog across worker processes; results
    are reassembled in canonical order, so the output is schedule-independent.
    """
    specs = canonical_catalog(catalog)
    if threads > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(_fingerprint_entry, [(p, s) for s in specs]))
    else:
        counts = [count_homs(p, make_group(s)) for s in specs]
    return Fingerprint(tuple(zip(specs, counts)))


@dataclass(frozen=True)
class FingerprintComparison:
    indistinguishable: bool
    catalog: tuple[str, ...]
    max_order: int
    witness: tuple[str, int, int] | None  # (spec, count_p, count_q)

    def __str__(self):
        if self.indistinguishable:
            return (
                f"indistinguishable over catalog of {len(self.catalog)} groups "
                f"(order <= {self.max_order}; not a profinite-isomorphism proof)"
            )
        spec, cp, cq = self.witness
        return f"distinguished by {spec} ({cp} vs {cq})"


def compare_fingerprints(p: Presentation, q: Presentation, catalog=None,
                         threads: int = 1) -> FingerprintComparison:
    """First catalog group (canonical order) with differing hom counts, or
    an explicit indistinguishable-over-this-catalog verdict."""
    specs = canonical_catalog(catalog)
    max_order = max(make_group(s).order for s in specs)
    fp = fingerprint(p, specs, threads=threads)
    fq = fingerprint(q, specs, threads=threads)
    for (spec, cp), (_, cq) in zip(fp.entries, fq.entries):
        if cp != cq:
            return FingerprintComparison(False, specs, max_order, (spec, cp, cq))
    return FingerprintComparison(True, specs, max_order, None)
