"""Explicit finite groups as multiplication tables.

A :class:`GroupTable` stores an order-n group as an n x n table of element
indices with the identity pinned at index 0, so serialized tables are
canonical.  The catalog (:func:`make_group`) covers every isomorphism class
of order <= 15 plus the named larger families used by the fingerprint
pipelines.

Group spec grammar (compact strings, case-sensitive):

    Zn       cyclic of order n
    Dn       dihedral of order 2n
    Sn       symmetric, n <= 6
    An       alternating, n <= 6
    Q8       quaternions (= Dic2)
    Dicn     dicyclic of order 4n (Dic3 is the semidirect Z3:Z4)
    SL2_p    SL(2, F_p), p prime <= 7
    AxBx...  direct products, left associative (Z2xZ4, Z2xZ2xZ2)
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .scalars import RootOfUnity


class GroupTable:
    """Finite group as an explicit multiplication table.

    ``product[a, b]`` is the index of a*b; index 0 is the identity.
    Instances are immutable after construction and freely shareable.
    """

    def __init__(self, product, name: str = "?", validate: bool = True,
                 element_names=None):
        table = np.asarray(product, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError("product table must be square")
        self.order = int(table.shape[0])
        self.product = table
        self.product.setflags(write=False)
        self.name = name
        self.element_names = element_names
        if validate:
            report = validate_table(self)
            if not report.ok:
                raise ValueError(f"invalid group table {name!r}: {report.failures()}")
        inv = np.zeros(self.order, dtype=np.int32)
        for a in range(self.order):
            row = self.product[a]
            inv[a] = int(np.nonzero(row == 0)[0][0])
        self.inverse = inv
        self.inverse.setflags(write=False)

    def mul(self, a: int, b: int) -> int:
        return int(self.product[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        out = 0
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def element_order(self, a: int) -> int:
        k = 1
        x = a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.product, self.product.T))

    def exponent(self) -> int:
        out = 1
        for a in range(self.order):
            o = self.element_order(a)
            out = out * o // _gcd(out, o)
        return out

    def __repr__(self):
        return f"GroupTable({self.name!r}, order={self.order})"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# validation


@dataclass
class TableReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append((name, passed, detail))

    def failures(self) -> str:
        return "; ".join(f"{n}: {d}" for n, p, d in self.checks if not p)


ASSOC_FULL_LIMIT = 128
ASSOC_SAMPLES = 10**6


def validate_table(g: GroupTable, rng_seed: int = 0) -> TableReport:
    """Check the group axioms on a table.

    Associativity is verified on all n^3 triples for n <= 128 and on 10^6
    seeded random triples above that.  Also checks the identity row/column,
    two-sided inverses and the Latin-square property.
    """
    report = TableReport()
    n = g.order
    P = g.product

    in_range = bool(((P >= 0) & (P < n)).all())
    report.add("entries in range", in_range)
    if not in_range:
        return report

    idx = np.arange(n)
    report.add("identity row", bool(np.array_equal(P[0], idx)), "row 0 is not the identity")
    report.add("identity column", bool(np.array_equal(P[:, 0], idx)), "column 0 is not the identity")

    rows_ok = bool(np.array_equal(np.sort(P, axis=1), np.tile(idx, (n, 1))))
    cols_ok = bool(np.array_equal(np.sort(P, axis=0), np.tile(idx[:, None], (1, n))))
    report.add("rows are permutations", rows_ok)
    report.add("columns are permutations", cols_ok)

    has_inv = all(0 in P[a] and int(P[a, int(np.nonzero(P[a] == 0)[0][0])]) == 0
                  and int(P[int(np.nonzero(P[a] == 0)[0][0]), a]) == 0
                  for a in range(n)) if rows_ok else False
    report.add("two-sided inverses", has_inv)

    if n <= ASSOC_FULL_LIMIT:
        left = P[P]                # left[a,b,c] = P[P[a,b], c]
        right = P[:, P]            # right[a,b,c] = P[a, P[b,c]]
        bad = np.argwhere(left != right)
        detail = "" if bad.size == 0 else f"first failing triple {tuple(int(x) for x in bad[0])}"
        report.add("associativity (all triples)", bad.size == 0, detail)
    else:
        rng = random.Random(rng_seed)
        bad_triple = None
        for _ in range(ASSOC_SAMPLES):
            a = rng.randrange(n)
            b = rng.randrange(n)
            c = rng.randrange(n)
            if P[P[a, b], c] != P[a, P[b, c]]:
                bad_triple = (a, b, c)
                break
        report.add("associativity (sampled)", bad_triple is None,
                   "" if bad_triple is None else f"failing triple {bad_triple}")
    return report


# ---------------------------------------------------------------------------
# families


def _table_from_elements(elements, compose, name, element_names=None) -> GroupTable:
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = [[index[compose(elements[a], elements[b])] for b in range(n)] for a in range(n)]
    return GroupTable(table, name, element_names=element_names)


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise ValueError("cyclic order must be >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return GroupTable(table, f"Z{n}")


def dihedral(n: int) -> GroupTable:
    """Dihedral group of order 2n: indices 0..n-1 are rotations r^i,
    n..2n-1 are reflections s r^i."""
    if n < 1:
        raise ValueError("dihedral parameter must be >= 1")
    elements = [(i, 0) for i in range(n)] + [(i, 1) for i in range(n)]

    def mul(x, y):
        i, si = x
        j, sj = y
        if si == 0 and sj == 0:
            return ((i + j) % n, 0)
        if si == 0 and sj == 1:
            return ((j - i) % n, 1)
        if si == 1 and sj == 0:
            return ((i + j) % n, 1)
        return ((j - i) % n, 0)

    return _table_from_elements(elements, mul, f"D{n}")


def symmetric(n: int) -> GroupTable:
    """Symmetric group on n letters, n <= 6; elements in lexicographic
    one-line order (identity first)."""
    if not 1 <= n <= 6:
        raise ValueError("symmetric(n) supports 1 <= n <= 6")
    elements = list(itertools.permutations(range(n)))
    names = ["".join(map(str, p)) for p in elements]
    return _table_from_elements(
        elements, lambda p, q: tuple(p[q[i]] for i in range(n)), f"S{n}", names
    )


def _perm_sign(p) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alternating(n: int) -> GroupTable:
    if not 1 <= n <= 6:
        raise ValueError("alternating(n) supports 1 <= n <= 6")
    elements = [p for p in itertools.permutations(range(n)) if _perm_sign(p) == 1]
    names = ["".join(map(str, p)) for p in elements]
    return _table_from_elements(
        elements, lambda p, q: tuple(p[q[i]] for i in range(n)), f"A{n}", names
    )


def dicyclic(n: int) -> GroupTable:
    """Dicyclic group of order 4n:  <a, b | a^(2n)=1, b^2=a^n, bab^-1=a^-1>.
    Dic2 is the quaternion group, Dic3 the semidirect product Z3:Z4.
    Elements a^i b^j with j in {0,1}, index i + 2n*j."""
    if n < 1:
        raise ValueError("dicyclic parameter must be >= 1")
    m = 2 * n

    def mul(x, y):
        i, bi = x
        j, bj = y
        if bi == 0:
            return ((i + j) % m, bj)
        if bj == 0:
            return ((i - j) % m, 1)
        return ((i - j + n) % m, 0)

    elements = [(i, 0) for i in range(m)] + [(i, 1) for i in range(m)]
    return _table_from_elements(elements, mul, f"Dic{n}")


def quaternion8() -> GroupTable:
    g = dicyclic(2)
    g.name = "Q8"
    return g


def sl2(p: int) -> GroupTable:
    """SL(2, F_p) for prime p <= 7; identity first, then lexicographic by
    the matrix tuple (a, b, c, d)."""
    if p not in (2, 3, 5, 7):
        raise ValueError("sl2(p) supports primes p <= 7")
    elements = [(1, 0, 0, 1)]
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 1 and (a, b, c, d) != (1, 0, 0, 1):
                        elements.append((a, b, c, d))

    def mul(x, y):
        a, b, c, d = x
        e, f, g_, h = y
        return ((a * e + b * g_) % p, (a * f + b * h) % p,
                (c * e + d * g_) % p, (c * f + d * h) % p)

    return _table_from_elements(elements, mul, f"SL2_{p}")


def product(g: GroupTable, h: GroupTable) -> GroupTable:
    """Direct product; element (i, j) has index i*|H| + j (row-major)."""
    n, m = g.order, h.order
    table = np.zeros((n * m, n * m), dtype=np.int32)
    for i1 in range(n):
        for j1 in range(m):
            left = i1 * m + j1
            row = table[left]
            for i2 in range(n):
                gi = g.product[i1, i2] * m
                for j2 in range(m):
                    row[i2 * m + j2] = gi + h.product[j1, j2]
    return GroupTable(table, f"{g.name}x{h.name}")


_SPEC_ATOM = re.compile(r"^(Z|D|S|A|Dic|SL2_|Q)(\d+)$")

_group_cache: dict[str, GroupTable] = {}


def make_group(spec: str) -> GroupTable:
    """Build a catalog group from a compact spec string (see module docs).

    Deterministic: identical specs give bit-identical tables.
    """
    spec = spec.strip()
    if spec in _group_cache:
        return _group_cache[spec]
    if "x" in spec:
        parts = spec.split("x")
        out = make_group(parts[0])
        for part in parts[1:]:
            out = product(out, make_group(part))
    else:
        m = _SPEC_ATOM.match(spec)
        if not m:
            raise ValueError(f"unrecognized group spec {spec!r}")
        kind, num = m.group(1), int(m.group(2))
        if kind == "Z":
            out = cyclic(num)
        elif kind == "D":
            out = dihedral(num)
        elif kind == "S":
            out = symmetric(num)
        elif kind == "A":
            out = alternating(num)
        elif kind == "Dic":
            out = dicyclic(num)
        elif kind == "SL2_":
            out = sl2(num)
        elif kind == "Q":
            if num != 8:
                raise ValueError("only Q8 is supported")
            out = quaternion8()
        else:  # pragma: no cover
            raise ValueError(spec)
    out.name = spec
    _group_cache[spec] = out
    return out


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclass
class ConjClasses:
    class_of: np.ndarray          # element -> class id
    representatives: list[int]    # least element index per class
    sizes: list[int]
    centralizer_orders: list[int]

    @property
    def num_classes(self) -> int:
        return len(self.representatives)


def conjugacy_classes(g: GroupTable) -> ConjClasses:
    """Partition by conjugation orbits; class ids ordered by least element."""
    n = g.order
    class_of = np.full(n, -1, dtype=np.int32)
    reps, sizes, cents = [], [], []
    for a in range(n):
        if class_of[a] >= 0:
            continue
        cid = len(reps)
        orbit = set()
        for h in range(n):
            orbit.add(int(g.product[g.product[h, a], g.inverse[h]]))
        for x in orbit:
            class_of[x] = cid
        reps.append(a)
        sizes.append(len(orbit))
        cents.append(n // len(orbit))
    return ConjClasses(class_of, reps, sizes, cents)


# ---------------------------------------------------------------------------
# abelian structure and characters


def abelian_decomposition(g: GroupTable) -> list[tuple[int, int]]:
    """Basis (element, order) pairs with G the direct sum of the generated
    cyclic subgroups.  Raises on non-abelian input."""
    if not g.is_abelian():
        raise ValueError(f"{g.name} is not abelian")
    return _abelian_basis_table(g.product.tolist())


def _abelian_basis_table(table: list[list[int]]) -> list[tuple[int, int]]:
    n = len(table)
    if n == 1:
        return []

    def order_of(a):
        k, x = 1, a
        while x != 0:
            x = table[x][a]
            k += 1
        return k

    x = max(range(n), key=order_of)
    m = order_of(x)
    # cyclic subgroup <x> and element -> exponent map
    power_of = {0: 0}
    cur = 0
    for k in range(1, m):
        cur = table[cur][x]
        power_of[cur] = k
    if m == n:
        return [(x, m)]

    # quotient by <x>: cosets keyed by least element
    coset_of = {}
    coset_reps = []
    for a in range(n):
        if a in coset_of:
            continue
        members = []
        h = a
        for _ in range(m):
            members.append(h)
            h = table[h][x]
        rep = min(members)
        cid = len(coset_reps)
        coset_reps.append(rep)
        for e in members:
            coset_of[e] = cid
    # normalize: sort cosets by representative (identity coset first)
    order_ids = sorted(range(len(coset_reps)), key=lambda c: coset_reps[c])
    relabel = {old: new for new, old in enumerate(order_ids)}
    coset_reps = [coset_reps[c] for c in order_ids]
    coset_of = {e: relabel[c] for e, c in coset_of.items()}
    q = len(coset_reps)
    qtable = [[coset_of[table[coset_reps[i]][coset_reps[j]]] for j in range(q)]
              for i in range(q)]

    basis = [(x, m)]
    for qgen, qord in _abelian_basis_table(qtable):
        y = coset_reps[qgen]
        # y^qord lies in <x>; adjust so the lift has exact order qord
        yq = 0
        for _ in range(qord):
            yq = table[yq][y]
        t = power_of[yq]
        if t % qord != 0:
            raise AssertionError("maximal-order lift failed")
        x_pow = 0
        for _ in range((m - t // qord) % m):
            x_pow = table[x_pow][x]
        y_adj = table[y][x_pow]
        basis.append((y_adj, qord))
    return basis


@dataclass
class CharacterTable:
    """Full dual group of an abelian group: values[r][c] = chi_r(element c),
    exact roots of unity.  Row 0 is the trivial character."""

    group: GroupTable
    basis: list[tuple[int, int]]
    coordinates: list[tuple[int, ...]]
    values: list[list[RootOfUnity]]

    @property
    def num_characters(self) -> int:
        return self.group.order

    def value(self, chi: int, element: int) -> RootOfUnity:
        return self.values[chi][element]

    def character_product(self, chi: int, psi: int) -> int:
        """Index of the pointwise product character."""
        dc = self._digits(chi)
        dp = self._digits(psi)
        mixed = [(a + b) % m for (a, b), (_, m) in zip(zip(dc, dp), self.basis)]
        return self._index(mixed)

    def character_inverse(self, chi: int) -> int:
        dc = self._digits(chi)
        return self._index([(-a) % m for a, (_, m) in zip(dc, self.basis)])

    def _digits(self, chi: int) -> list[int]:
        out = []
        for _, m in reversed(self.basis):
            out.append(chi % m)
            chi //= m
        return list(reversed(out))

    def _index(self, digits) -> int:
        out = 0
        for d, (_, m) in zip(digits, self.basis):
            out = out * m + d
        return out


def characters_abelian(g: GroupTable) -> CharacterTable:
    """Character table of an abelian group via its invariant-factor style
    decomposition; values are exact roots of unity."""
    basis = abelian_decomposition(g)  # raises if non-abelian
    n = g.order

    coords = [None] * n
    # enumerate products of basis powers with a mixed-radix counter,
    # tracking the group element alongside the digits
    radices = [m for _, m in basis]
    elt = 0
    digits = [0] * len(basis)
    for _ in range(n):
        coords[elt] = tuple(digits)
        # increment mixed-radix counter and track the element alongside
        for pos in range(len(basis) - 1, -1, -1):
            digits[pos] += 1
            elt = g.mul(elt, basis[pos][0])
            if digits[pos] < radices[pos]:
                break
            digits[pos] = 0
            # elt has wrapped past order: multiplying by gen order times
            # returns to the coset start automatically
        else:
            break
    if any(c is None for c in coords):
        raise AssertionError("basis does not enumerate the group")

    values = []
    for chi in range(n):
        dg = []
        c = chi
        for m in reversed(radices):
            dg.append(c % m)
            c //= m
        dg.reverse()
        row = []
        for e in range(n):
            expo = Fraction(0)
            for d, a, m in zip(dg, coords[e], radices):
                expo += Fraction(d * a, m)
            row.append(RootOfUnity.from_exponent(expo))
        values.append(row)
    return CharacterTable(g, basis, coords, values)


# ---------------------------------------------------------------------------
# table file format


def format_group_table(g: GroupTable) -> str:
    lines = [f"order: {g.order}"]
    for a in range(g.order):
        lines.append(" ".join(str(int(x)) for x in g.product[a]))
    return "\n".join(lines) + "\n"


def parse_group_table(text: str, name: str = "imported") -> GroupTable:
    """Parse and validate a table file; invalid tables are rejected."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("order:"):
        raise ValueError("missing order line")
    n = int(lines[0].split(":", 1)[1])
    rows = [list(map(int, ln.split())) for ln in lines[1:]]
    if len(rows) != n:
        raise ValueError(f"expected {n} table rows, found {len(rows)}")
    return GroupTable(rows, name)
