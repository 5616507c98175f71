"""Spherical fusion categories as validated numerical data.

A category is stored as its semisimple shadow: labels 0..k-1 (0 the unit),
a dual involution, quantum dimensions, multiplicity-free fusion rules
N^c_{ab} in {0,1}, and a normalized 6j tensor indexed by the six edge
labels of a reference tetrahedron in the order (01, 02, 03, 12, 13, 23).
The 6j slot conventions: the four faces of the key (l01,..,l23) must carry
admissible fusion triples

    (l01, l12, l02)   (l01, l13, l03)   (l02, l23, l03)   (l12, l23, l13)

reading N^{l_ik}_{l_ij, l_jk} on the face (i < j < k).

Builders cover the pointed categories Vec_G, the golden and Ising-type
categories, and the quantum-sl2 categories at a root of unity (quantum
integers [n] = sin(n*pi/r)/sin(pi/r), positive quantum dimensions
[j+1], 6j in the Kauffman-Lins tetrahedron/theta normalization carrying
the quadrilateral parity sign of the unitary gauge).  With this sign the
pentagon identity holds against the positive dimensions; the fully
tetrahedral-symmetric network symbol is recovered by multiplying with
(-1) to the half-sum of one quadrilateral's grades, which is what the
symmetry check verifies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import pi, sin, sqrt

from .fingroup import GroupTable, cyclic
from .scalars import QuadExt, TOL, feq, format_scalar, parse_scalar, scalar_eq, scalar_to_float

SixjKey = tuple[int, int, int, int, int, int]

# reference tetrahedron edge order for 6j keys
EDGE_ORDER = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
_EDGE_SLOT = {pair: i for i, pair in enumerate(EDGE_ORDER)}
# faces (i<j<k) with their edge slots (ij, jk, ik)
FACE_SLOTS = (
    (_EDGE_SLOT[(0, 1)], _EDGE_SLOT[(1, 2)], _EDGE_SLOT[(0, 2)]),
    (_EDGE_SLOT[(0, 1)], _EDGE_SLOT[(1, 3)], _EDGE_SLOT[(0, 3)]),
    (_EDGE_SLOT[(0, 2)], _EDGE_SLOT[(2, 3)], _EDGE_SLOT[(0, 3)]),
    (_EDGE_SLOT[(1, 2)], _EDGE_SLOT[(2, 3)], _EDGE_SLOT[(1, 3)]),
)


class CategoryDataError(Exception):
    """Raised on inconsistent or incomplete category data."""


@dataclass
class FusionData:
    """Numerical data of a spherical fusion category (multiplicity-free)."""

    name: str
    num_labels: int
    dual: tuple[int, ...]
    qdim: tuple
    K: object
    fusion: frozenset  # triples (a, b, c) with N^c_{ab} = 1
    sixj: dict
    label_names: tuple[str, ...] = ()
    tet_grade: tuple[int, ...] | None = None
    tol: float = TOL

    def __post_init__(self):
        if not self.label_names:
            self.label_names = tuple(str(i) for i in range(self.num_labels))

    def n(self, a: int, b: int, c: int) -> bool:
        """N^c_{ab}: does c occur in a (x) b?"""
        return (a, b, c) in self.fusion

    def face_admissible(self, lij: int, ljk: int, lik: int) -> bool:
        return (lij, ljk, lik) in self.fusion

    def tet_admissible(self, key: SixjKey) -> bool:
        return all(
            self.face_admissible(key[i], key[j], key[k]) for i, j, k in FACE_SLOTS
        )

    def sixj_value(self, key: SixjKey):
        try:
            return self.sixj[key]
        except KeyError:
            raise CategoryDataError(
                f"{self.name}: missing 6j entry for admissible tuple {key}"
            ) from None

    @property
    def exact(self) -> bool:
        """True when every scalar is an exact rational (state sums stay exact)."""
        vals = list(self.qdim) + list(self.sixj.values()) + [self.K]
        return all(isinstance(v, (int, Fraction)) for v in vals)

    def tet_symmetry_sign(self, key: SixjKey) -> int:
        """Sign relating the stored 6j to the fully symmetric network symbol."""
        if self.tet_grade is None:
            return 1
        g = self.tet_grade
        quad = g[key[0]] + g[key[3]] + g[key[5]] + g[key[2]]  # l01,l12,l23,l03
        return -1 if (quad // 2) % 2 else 1

    def __repr__(self):
        return f"FusionData({self.name!r}, labels={self.num_labels})"


# ---------------------------------------------------------------------------
# builders


def vec_g(g: GroupTable) -> FusionData:
    """Pointed category of a finite group: one label per element, fusion by
    multiplication, all quantum dimensions 1, untwisted associator (every
    admissible 6j equals 1), K = |G|."""
    n = g.order
    fusion = frozenset((a, b, g.mul(a, b)) for a in range(n) for b in range(n))
    sixj = {}
    one = Fraction(1)
    for l01 in range(n):
        for l12 in range(n):
            l02 = g.mul(l01, l12)
            for l23 in range(n):
                l13 = g.mul(l12, l23)
                l03 = g.mul(l02, l23)
                sixj[(l01, l02, l03, l12, l13, l23)] = one
    return FusionData(
        name=f"vecg:{g.name}",
        num_labels=n,
        dual=tuple(int(x) for x in g.inverse),
        qdim=tuple(Fraction(1) for _ in range(n)),
        K=Fraction(n),
        fusion=fusion,
        sixj=sixj,
        label_names=tuple(f"g{i}" for i in range(n)),
    )


def trivial_category() -> FusionData:
    c = vec_g(cyclic(1))
    c.name = "trivial"
    return c


class _KLData:
    """Quantum integers, factorials and tetrahedral symbols at level r-2."""

    def __init__(self, r: int):
        self.r = r
        self.qint = [0.0] * (2 * r + 2)
        for n in range(2 * r + 2):
            self.qint[n] = 0.0 if n % r == 0 else sin(n * pi / r) / sin(pi / r)
        self.qfact = [1.0]
        for n in range(1, 2 * r + 2):
            self.qfact.append(self.qfact[-1] * self.qint[n])

    def admissible(self, a: int, b: int, c: int) -> bool:
        return (
            (a + b + c) % 2 == 0
            and abs(a - b) <= c <= a + b
            and a + b + c <= 2 * self.r - 4
        )

    def _delta(self, a: int, b: int, c: int) -> float:
        f = self.qfact
        return sqrt(
            f[(a + b - c) // 2] * f[(a - b + c) // 2] * f[(-a + b + c) // 2]
            / f[(a + b + c) // 2 + 1]
        )

    def tet_symbol(self, A: int, B: int, E: int, C: int, D: int, F: int) -> float:
        """Unitary-gauge tetrahedral 6j with triads (A,B,E), (E,C,D), (B,C,F),
        (A,F,D): the theta-normalized network evaluation times the
        quadrilateral parity sign (-1)^((A+B+C+D)/2)."""
        if not (
            self.admissible(A, B, E)
            and self.admissible(E, C, D)
            and self.admissible(B, C, F)
            and self.admissible(A, F, D)
        ):
            return 0.0
        f = self.qfact
        phis = [(A + B + E) // 2, (E + C + D) // 2, (B + C + F) // 2, (A + F + D) // 2]
        quads = [(A + B + C + D) // 2, (A + C + E + F) // 2, (B + D + E + F) // 2]
        pref = (
            self._delta(A, B, E)
            * self._delta(E, C, D)
            * self._delta(B, C, F)
            * self._delta(A, F, D)
        )
        s = 0.0
        for z in range(max(phis), min(quads) + 1):
            if f[z + 1] == 0.0:
                continue
            term = f[z + 1] if z % 2 == 0 else -f[z + 1]
            for ph in phis:
                term /= f[z - ph]
            for q in quads:
                term /= f[q - z]
            s += term
        sign = -1 if ((A + B + C + D) // 2) % 2 else 1
        return pref * s * sign


def _kl_category(r: int, keep=None, name: str = "", label_names=None,
                 qdim_exact=None, K_exact=None) -> FusionData:
    kl = _KLData(r)
    labels = list(range(r - 1)) if keep is None else sorted(keep)
    relabel = {orig: i for i, orig in enumerate(labels)}
    k = len(labels)

    fusion = frozenset(
        (relabel[a], relabel[b], relabel[c])
        for a in labels for b in labels for c in labels
        if kl.admissible(a, b, c)
    )
    qdim = tuple(qdim_exact) if qdim_exact is not None else tuple(
        kl.qint[n + 1] for n in labels
    )
    K = K_exact if K_exact is not None else sum(kl.qint[n + 1] ** 2 for n in labels)

    sixj = {}
    for key in product(range(k), repeat=6):
        orig = [labels[x] for x in key]
        l01, l02, l03, l12, l13, l23 = orig
        if not (
            kl.admissible(l01, l12, l02)
            and kl.admissible(l01, l13, l03)
            and kl.admissible(l02, l23, l03)
            and kl.admissible(l12, l23, l13)
        ):
            continue
        # G slots (A,B,E,C,D,F) = (l01, l12, l02, l23, l03, l13)
        sixj[key] = kl.tet_symbol(l01, l12, l02, l23, l03, l13)

    return FusionData(
        name=name or f"sl2:{r}",
        num_labels=k,
        dual=tuple(range(k)),
        qdim=qdim,
        K=K,
        fusion=fusion,
        sixj=sixj,
        label_names=tuple(label_names) if label_names else (),
        tet_grade=tuple(labels),
    )


def quantum_sl2(r: int) -> FusionData:
    """Quantum-sl2 spherical category at the r-th root of unity: labels are
    twice-spins 0..r-2, qdim(j) = [j+1], admissibility the Kauffman-Lins
    triangle conditions with a + b + c <= 2r - 4."""
    if r < 3:
        raise ValueError("quantum_sl2 needs r >= 3")
    return _kl_category(r)


def fibonacci() -> FusionData:
    """Golden category: labels (1, tau) with tau (x) tau = 1 (+) tau and
    qdim(tau) the golden ratio, kept exact in Q(sqrt(5)); realized as the
    even sublattice of the level-3 quantum-sl2 data."""
    phi = QuadExt(5, Fraction(1, 2), Fraction(1, 2))
    return _kl_category(
        5,
        keep=[0, 2],
        name="fib",
        label_names=("1", "tau"),
        qdim_exact=[Fraction(1), phi],
        K_exact=QuadExt(5, Fraction(5, 2), Fraction(1, 2)),
    )


def ising() -> FusionData:
    """Ising-type category: labels (1, sigma, psi), qdim(sigma) = sqrt(2)
    exact in Q(sqrt(2)), K = 4; the level-2 quantum-sl2 data."""
    return _kl_category(
        4,
        name="ising",
        label_names=("1", "sigma", "psi"),
        qdim_exact=[Fraction(1), QuadExt(2, 0, 1), Fraction(1)],
        K_exact=Fraction(4),
    )


# ---------------------------------------------------------------------------
# validation


@dataclass
class CategoryReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(p for _, p, _ in self.checks)

    def add(self, nm: str, passed: bool, detail: str = ""):
        self.checks.append((nm, passed, detail))

    def failures(self) -> str:
        return "; ".join(f"{n}: {d}" for n, p, d in self.checks if not p)


def _ab_index(fusion):
    out: dict[tuple[int, int], list[int]] = {}
    for a, b, c in fusion:
        out.setdefault((a, b), []).append(c)
    for v in out.values():
        v.sort()
    return out


def validate_category(c: FusionData, tol: float | None = None) -> CategoryReport:
    """Run every category invariant; the report lists each check with a
    pass/fail flag and the first counterexample."""
    tol = c.tol if tol is None else tol
    rep = CategoryReport()
    k = c.num_labels
    labels = range(k)

    rep.add("dual involution",
            all(c.dual[c.dual[a]] == a for a in labels) and c.dual[0] == 0)

    unit_ok = all(c.n(0, b, cc) == (b == cc) and c.n(a, 0, cc) == (a == cc)
                  for a in labels for b in labels for cc in labels)
    rep.add("unit fusion", unit_ok)

    bad = next(((a, b, cc) for (a, b, cc) in c.fusion
                if (c.dual[b], c.dual[a], c.dual[cc]) not in c.fusion), None)
    rep.add("fusion duality N^c_ab = N^cbar_bbar,abar", bad is None,
            f"witness {bad}" if bad else "")

    trip = {(x, y, z) for (x, y, z2) in c.fusion for z in [c.dual[z2]]}
    cyc_bad = next((t for t in trip if (t[1], t[2], t[0]) not in trip), None)
    rev_bad = next((t for t in trip
                    if (c.dual[t[2]], c.dual[t[1]], c.dual[t[0]]) not in trip), None)
    rep.add("vertex cyclic symmetry", cyc_bad is None, f"witness {cyc_bad}" if cyc_bad else "")
    rep.add("vertex reversal symmetry", rev_bad is None, f"witness {rev_bad}" if rev_bad else "")

    rep.add("unit qdim", scalar_eq(c.qdim[0], Fraction(1), tol))
    qd_bad = next((a for a in labels if not scalar_eq(c.qdim[a], c.qdim[c.dual[a]], tol)), None)
    rep.add("qdim dual-invariant", qd_bad is None, f"label {qd_bad}" if qd_bad is not None else "")

    total = sum((scalar_to_float(c.qdim[a]) ** 2 for a in labels)) if not c.exact else None
    if isinstance(c.K, (int, Fraction, QuadExt)) and all(
        isinstance(c.qdim[a], (int, Fraction, QuadExt)) for a in labels
    ):
        acc = c.qdim[0] * c.qdim[0]
        for a in list(labels)[1:]:
            acc = acc + c.qdim[a] * c.qdim[a]
        rep.add("global dimension K", scalar_eq(acc, c.K, tol))
    else:
        acc = sum(scalar_to_float(c.qdim[a]) ** 2 for a in labels)
        rep.add("global dimension K", feq(acc, scalar_to_float(c.K), tol))

    ab = _ab_index(c.fusion)
    hom_bad = None
    for a in labels:
        for b in labels:
            lhs = scalar_to_float(c.qdim[a]) * scalar_to_float(c.qdim[b])
            rhs = sum(scalar_to_float(c.qdim[cc]) for cc in ab.get((a, b), []))
            if not feq(lhs, rhs, tol):
                hom_bad = (a, b)
                break
        if hom_bad:
            break
    rep.add("dimension homomorphism", hom_bad is None,
            f"pair {hom_bad}" if hom_bad else "")

    missing = None
    extra = None
    for key in product(labels, repeat=6):
        if c.tet_admissible(key):
            if key not in c.sixj:
                missing = key
                break
        elif key in c.sixj:
            extra = key
            break
    rep.add("6j domain (admissible 6-tuples)", missing is None and extra is None,
            f"missing {missing}" if missing else (f"extra {extra}" if extra else ""))

    rep.add("pentagon", *(_pentagon_check(c, ab, tol)))
    rep.add("tetrahedral symmetry", *(_tet_symmetry_check(c, tol)))
    return rep


def _six_slots(c: FusionData, A, B, E, C, D, F):
    """6j in triad slots (A,B,E),(E,C,D),(B,C,F),(A,F,D): key translation."""
    return c.sixj.get((A, E, D, B, F, C), None)


def _pentagon_check(c: FusionData, ab, tol) -> tuple[bool, str]:
    """Biedenharn-Elliott identity against the stored dimensions:

        G(f,c,g;d,e,l) G(a,b,f;l,e,k)
            = sum_h d_h G(a,b,f;c,g,h) G(a,h,g;d,e,k) G(b,c,h;d,k,l)

    checked over the complete support of both sides."""
    labels = range(c.num_labels)
    exact = c.exact
    qd = c.qdim if exact else tuple(scalar_to_float(x) for x in c.qdim)

    def six(A, B, E, C, D, F):
        v = _six_slots(c, A, B, E, C, D, F)
        if v is None:
            return Fraction(0) if exact else 0.0
        return v if exact else scalar_to_float(v)

    for (a, b, f) in c.fusion:
        for cc in labels:
            for g in ab.get((f, cc), ()):
                for d in labels:
                    for e in ab.get((g, d), ()):
                        for l in ab.get((cc, d), ()):
                            for kk in ab.get((b, l), ()):
                                if (a, kk, e) not in c.fusion:
                                    continue
                                lhs = six(f, cc, g, d, e, l) * six(a, b, f, l, e, kk)
                                rhs = None
                                for h in ab.get((b, cc), ()):
                                    term = (qd[h] * six(a, b, f, cc, g, h)
                                            * six(a, h, g, d, e, kk)
                                            * six(b, cc, h, d, kk, l))
                                    rhs = term if rhs is None else rhs + term
                                if rhs is None:
                                    rhs = Fraction(0) if exact else 0.0
                                if exact:
                                    if lhs != rhs:
                                        return False, f"9-tuple {(a,b,cc,d,e,f,g,kk,l)}"
                                elif not feq(scalar_to_float(lhs), scalar_to_float(rhs), tol):
                                    return False, f"9-tuple {(a,b,cc,d,e,f,g,kk,l)}"
    return True, ""


def _tet_symmetry_check(c: FusionData, tol) -> tuple[bool, str]:
    """Invariance of the sign-corrected 6j under the 24 symmetries of the
    reference tetrahedron (edge labels dualized when a symmetry reverses
    their orientation)."""
    for key, val in c.sixj.items():
        base = scalar_to_float(val) * c.tet_symmetry_sign(key)
        for sigma in permutations(range(4)):
            newkey = []
            for (i, j) in EDGE_ORDER:
                a, b = sigma[i], sigma[j]
                if a < b:
                    lab = key[_EDGE_SLOT[(a, b)]]
                else:
                    lab = c.dual[key[_EDGE_SLOT[(b, a)]]]
                newkey.append(lab)
            newkey = tuple(newkey)
            other = c.sixj.get(newkey)
            if other is None:
                return False, f"orbit of {key} leaves the admissible set ({newkey})"
            if not feq(scalar_to_float(other) * c.tet_symmetry_sign(newkey), base, tol):
                return False, f"key {key} vs {newkey}"
    return True, ""


def global_dimension(c: FusionData):
    """Sum of squared quantum dimensions; must match the stored K."""
    if all(isinstance(c.qdim[a], (int, Fraction, QuadExt)) for a in range(c.num_labels)):
        acc = c.qdim[0] * c.qdim[0]
        for a in range(1, c.num_labels):
            acc = acc + c.qdim[a] * c.qdim[a]
    else:
        acc = sum(scalar_to_float(c.qdim[a]) ** 2 for a in range(c.num_labels))
    if not scalar_eq(acc, c.K, c.tol):
        raise CategoryDataError(
            f"{c.name}: stored K={c.K!r} disagrees with sum of squared qdims {acc!r}"
        )
    return acc


# ---------------------------------------------------------------------------
# file format


def format_category(c: FusionData) -> str:
    lines = [f"labels: {c.num_labels}"]
    lines.append("dual: " + " ".join(str(d) for d in c.dual))
    lines.append("qdim: " + " ".join(format_scalar(q) for q in c.qdim))
    if c.tet_grade is not None:
        # optional: integer grading driving the symmetry-sign correction
        lines.append("grade: " + " ".join(str(g) for g in c.tet_grade))
    for (a, b, cc) in sorted(c.fusion):
        lines.append(f"fusion: {a} {b} {cc}")
    for key in sorted(c.sixj):
        lines.append("sixj: " + " ".join(str(x) for x in key) + " "
                     + format_scalar(c.sixj[key]))
    return "\n".join(lines) + "\n"


def parse_category(text: str, name: str = "imported", validate: bool = True) -> FusionData:
    num = None
    dual = None
    qdim = None
    grade = None
    fusion = set()
    sixj = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        rest = rest.strip()
        if key == "labels":
            num = int(rest)
        elif key == "dual":
            dual = tuple(int(x) for x in rest.split())
        elif key == "qdim":
            qdim = tuple(parse_scalar(x) for x in rest.split())
        elif key == "grade":
            grade = tuple(int(x) for x in rest.split())
        elif key == "fusion":
            a, b, cc = (int(x) for x in rest.split())
            if (a, b, cc) in fusion:
                raise CategoryDataError("duplicate fusion triple: multiplicities > 1 unsupported")
            fusion.add((a, b, cc))
        elif key == "sixj":
            parts = rest.split()
            tup = tuple(int(x) for x in parts[:6])
            if tup in sixj:
                raise CategoryDataError(f"duplicate sixj entry {tup}")
            sixj[tup] = parse_scalar(parts[6])
        else:
            raise ValueError(f"unrecognized line {line!r}")
    if num is None or dual is None or qdim is None:
        raise ValueError("missing labels/dual/qdim lines")
    if len(dual) != num or len(qdim) != num:
        raise ValueError("dual/qdim length mismatch")
    K = None
    if all(isinstance(q, (int, Fraction, QuadExt)) for q in qdim):
        K = qdim[0] * qdim[0]
        for q in qdim[1:]:
            K = K + q * q
    else:
        K = sum(scalar_to_float(q) ** 2 for q in qdim)
    c = FusionData(
        name=name,
        num_labels=num,
        dual=dual,
        qdim=qdim,
        K=K,
        fusion=frozenset(fusion),
        sixj=sixj,
        tet_grade=grade,
    )
    if validate:
        report = validate_category(c)
        if not report.ok:
            raise CategoryDataError(f"{name}: {report.failures()}")
    return c


# ---------------------------------------------------------------------------
# category specs (CLI grammar)


def make_category(spec: str) -> FusionData:
    """Compact category specs: ``trivial``, ``fib``, ``ising``, ``sl2:R``,
    ``vecg:GROUPSPEC`` (group grammar from fingroup)."""
    from .fingroup import make_group

    spec = spec.strip()
    if spec == "trivial":
        return trivial_category()
    if spec == "fib":
        return fibonacci()
    if spec == "ising":
        return ising()
    if spec.startswith("sl2:"):
        return quantum_sl2(int(spec.split(":", 1)[1]))
    if spec.startswith("vecg:"):
        return vec_g(make_group(spec.split(":", 1)[1]))
    raise ValueError(f"unrecognized category spec {spec!r}")
