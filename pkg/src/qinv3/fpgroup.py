"""Finitely presented groups: words, presentations, mapping tori, homology.

Words are tuples of (generator_index, exponent) letters; presentations pair
a list of generator names with a list of relator words.  The module covers
the group-theoretic side of the workbench: standard surface presentations,
mapping-torus presentations of surface bundles, abelianization and exact
Smith normal form for first homology.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

Letter = tuple[int, int]
Word = tuple[Letter, ...]

GEN_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


# ---------------------------------------------------------------------------
# words


def free_reduce(word) -> Word:
    """Unique freely reduced form: adjacent letters merged, zero exponents dropped."""
    stack: list[list[int]] = []
    for gen, exp in word:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return tuple((g, e) for g, e in stack)


def word_inverse(word) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def word_mul(*words) -> Word:
    out: list[Letter] = []
    for w in words:
        out.extend(w)
    return free_reduce(out)


def word_letters(word) -> list[tuple[int, int]]:
    """Expand to single letters (gen, +-1)."""
    out = []
    for gen, exp in word:
        sign = 1 if exp > 0 else -1
        out.extend([(gen, sign)] * abs(exp))
    return out


def word_from_letters(letters) -> Word:
    return free_reduce(letters)


def exponent_sums(word, num_generators: int) -> list[int]:
    sums = [0] * num_generators
    for gen, exp in word:
        sums[gen] += exp
    return sums


def word_substitute(word, images: list[Word]) -> Word:
    """Apply the endomorphism sending generator i to images[i]."""
    out: list[Letter] = []
    for gen, exp in word:
        img = images[gen] if exp > 0 else word_inverse(images[gen])
        for _ in range(abs(exp)):
            out.extend(img)
    return free_reduce(out)


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        seen = set()
        for name in self.generators:
            if not GEN_NAME_RE.match(name):
                raise ValueError(f"bad generator name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate generator {name!r}")
            seen.add(name)
        object.__setattr__(self, "relators", tuple(free_reduce(r) for r in self.relators))
        n = len(self.generators)
        for rel in self.relators:
            for gen, _ in rel:
                if not 0 <= gen < n:
                    raise ValueError(f"relator uses generator index {gen} out of range")

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def __str__(self):
        rels = ", ".join(format_word(r, self.generators) for r in self.relators)
        return f"<{' '.join(self.generators) or '1'} | {rels}>"


def presentation(gen_names, relator_strs) -> Presentation:
    """Convenience constructor from whitespace token strings, e.g. 'a b a^-1 b^-1'."""
    gens = tuple(gen_names.split()) if isinstance(gen_names, str) else tuple(gen_names)
    rels = tuple(parse_word(r, gens) for r in relator_strs)
    return Presentation(gens, rels)


def trivial_presentation() -> Presentation:
    return Presentation((), ())


def format_word(word, gen_names) -> str:
    if not word:
        return "1"
    toks = []
    for gen, exp in word:
        toks.append(gen_names[gen] if exp == 1 else f"{gen_names[gen]}^{exp}")
    return " ".join(toks)


def parse_word(text: str, gen_names) -> Word:
    index = {name: i for i, name in enumerate(gen_names)}
    letters = []
    for tok in text.split():
        if tok == "1":
            continue
        name, _, exp_str = tok.partition("^")
        if name not in index:
            raise ValueError(f"unknown generator {name!r} in word {text!r}")
        exp = int(exp_str) if exp_str else 1
        if exp == 0:
            raise ValueError(f"zero exponent in token {tok!r}")
        letters.append((index[name], exp))
    return free_reduce(letters)


def format_presentation(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.generators)]
    for rel in p.relators:
        lines.append("rel: " + format_word(rel, p.generators))
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    gens: tuple[str, ...] | None = None
    rels = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        if key == "gens":
            if gens is not None:
                raise ValueError("duplicate gens line")
            gens = tuple(rest.split())
        elif key == "rel":
            if gens is None:
                raise ValueError("rel line before gens line")
            rels.append(parse_word(rest, gens))
        else:
            raise ValueError(f"unrecognized line {line!r}")
    if gens is None:
        raise ValueError("missing gens line")
    return Presentation(gens, tuple(rels))


# ---------------------------------------------------------------------------
# surface groups and mapping tori


def surface_presentation(genus: int) -> Presentation:
    """Standard presentation <a1,b1,..,ag,bg | prod [ai,bi]> of a closed
    orientable surface group.  Genus 0 is rejected: sphere bundles are not
    served by this pipeline."""
    if genus < 1:
        raise ValueError("genus must be >= 1")
    names = []
    for i in range(1, genus + 1):
        names.extend([f"a{i}", f"b{i}"])
    rel: list[Letter] = []
    for i in range(genus):
        a, b = 2 * i, 2 * i + 1
        rel.extend([(a, 1), (b, 1), (a, -1), (b, -1)])
    return Presentation(tuple(names), (free_reduce(rel),))


def surface_relator(genus: int) -> Word:
    return surface_presentation(genus).relators[0]


def mapping_torus_presentation(base: Presentation, images, t_name: str = "t") -> Presentation:
    """Presentation of the mapping torus of an endomorphism of the base group.

    Generators are the base generators plus a fresh stable letter t; relators
    are the base relators together with t x t^-1 * image(x)^-1 for each base
    generator x.
    """
    images = [free_reduce(w) for w in images]
    if len(images) != base.num_generators:
        raise ValueError(
            f"need {base.num_generators} images, got {len(images)}"
        )
    for img in images:
        for gen, _ in img:
            if not 0 <= gen < base.num_generators:
                raise ValueError(f"image uses generator index {gen} out of range")
    name = t_name
    k = 0
    while name in base.generators:
        k += 1
        name = f"{t_name}_{k}"
    t = base.num_generators
    gens = base.generators + (name,)
    rels = list(base.relators)
    for i in range(base.num_generators):
        rels.append(word_mul(((t, 1), (i, 1), (t, -1)), word_inverse(images[i])))
    return Presentation(gens, tuple(rels))


def torus_bundle_presentation(matrix) -> Presentation:
    """Mapping torus of the torus automorphism with the given 2x2 integer
    matrix [[p, q], [r, s]] acting on H1; generator images a -> a^p b^r,
    b -> a^q b^s (any words with these exponent sums present the same group
    since the fiber group is abelian)."""
    (p, q), (r, s) = matrix
    base = surface_presentation(1)
    images = [free_reduce(((0, p), (1, r))), free_reduce(((0, q), (1, s)))]
    return mapping_torus_presentation(base, images)


# ---------------------------------------------------------------------------
# monodromy validation


def _dehn_reduces_to_identity(word: Word, relator: Word) -> bool:
    """Dehn's algorithm for one-relator small-cancellation groups.

    Surface relators of genus >= 2 satisfy C'(1/6) (pieces are single
    letters), so a freely reduced word is trivial iff it is emptied by
    repeatedly replacing subwords that cover more than half of a cyclic
    rotation of the relator or its inverse.
    """
    rel = word_letters(relator)
    n = len(rel)
    rotations = []
    for base in (rel, [(g, -s) for g, s in reversed(rel)]):
        for start in range(n):
            rotations.append(tuple(base[start:] + base[:start]))
    half = n // 2

    w = word_letters(free_reduce(word))
    while w:
        best = None  # (match_len, position, rotation)
        for i in range(len(w)):
            for rot in rotations:
                m = 0
                while i + m < len(w) and m < n and w[i + m] == rot[m]:
                    m += 1
                if m > half and (best is None or m > best[0]):
                    best = (m, i, rot)
        if best is None:
            return False
        m, i, rot = best
        tail = [(g, -s) for g, s in reversed(rot[m:])]
        w = word_letters(free_reduce(w[:i] + tail + w[i + m :]))
    return True


@dataclass
class MonodromyReport:
    ok: bool
    relator_preserved: bool
    h1_matrix: "IntMatrix"
    determinant: int
    messages: list[str] = field(default_factory=list)


def validate_monodromy(genus: int, images) -> MonodromyReport:
    """Check that generator images plausibly define a mapping class.

    Verifies (a) the surface relator maps to the identity -- via abelianization
    at genus 1 where the group is abelian, via Dehn's algorithm at genus >= 2
    -- and (b) the induced H1 matrix lies in GL(2g, Z).  Failures are
    reported, not raised.
    """
    if genus < 1:
        raise ValueError("genus must be >= 1")
    images = [free_reduce(w) for w in images]
    if len(images) != 2 * genus:
        raise ValueError(f"need {2 * genus} images, got {len(images)}")
    msgs = []

    n = 2 * genus
    # column j = exponent vector of the image of generator j
    cols = [exponent_sums(img, n) for img in images]
    mat = IntMatrix(n, n, [[cols[j][i] for j in range(n)] for i in range(n)])

    rel = surface_relator(genus)
    rel_image = word_substitute(rel, images)
    if genus == 1:
        relator_ok = all(s == 0 for s in exponent_sums(rel_image, n))
        if not relator_ok:
            msgs.append("commutator image does not abelianize to zero")
    else:
        relator_ok = _dehn_reduces_to_identity(rel_image, rel)
        if not relator_ok:
            msgs.append("surface relator image is nontrivial (Dehn's algorithm)")

    det = mat.determinant()
    h1_ok = det in (1, -1)
    if not h1_ok:
        msgs.append(f"induced H1 matrix has determinant {det}, not +-1")

    return MonodromyReport(relator_ok and h1_ok, relator_ok, mat, det, msgs)


# ---------------------------------------------------------------------------
# free products


def free_product(p: Presentation, q: Presentation) -> Presentation:
    """Disjoint union of generators and relators; q's generators are renamed
    (suffix _1, _2, ...) on collision with p's."""
    names = list(p.generators)
    taken = set(names)
    for name in q.generators:
        fresh = name
        k = 0
        while fresh in taken:
            k += 1
            fresh = f"{name}_{k}"
        taken.add(fresh)
        names.append(fresh)
    shift = p.num_generators
    rels = list(p.relators)
    for rel in q.relators:
        rels.append(tuple((g + shift, e) for g, e in rel))
    return Presentation(tuple(names), tuple(rels))


# ---------------------------------------------------------------------------
# integer matrices and Smith normal form


class IntMatrix:
    """Dense integer matrix with exact arbitrary-precision entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        self.rows = rows
        self.cols = cols
        self.entries = [[int(x) for x in row] for row in entries]
        if len(self.entries) != rows or any(len(r) != cols for r in self.entries):
            raise ValueError("entry shape mismatch")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [row[:] for row in self.entries])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = [[0] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            row = self.entries[i]
            for k in range(self.cols):
                a = row[k]
                if a:
                    orow = other.entries[k]
                    target = out[i]
                    for j in range(other.cols):
                        target[j] += a * orow[j]
        return IntMatrix(self.rows, other.cols, out)

    def determinant(self) -> int:
        """Fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [row[:] for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def __repr__(self):
        return f"IntMatrix({self.entries})"


@dataclass
class SNFResult:
    """Invariant factors d1 | d2 | ... (positive), plus optional unimodular
    transforms with left @ A @ right == diag(factors)."""

    factors: tuple[int, ...]
    rank: int
    rows: int
    cols: int
    left: IntMatrix | None = None
    right: IntMatrix | None = None

    def diagonal_matrix(self) -> IntMatrix:
        d = IntMatrix.zero(self.rows, self.cols)
        for i, f in enumerate(self.factors):
            d.entries[i][i] = f
        return d


def smith_normal_form(mat: IntMatrix, transforms: bool = False) -> SNFResult:
    """Exact Smith normal form over Z.

    Returns positive invariant factors satisfying the divisibility chain.
    With ``transforms=True`` the unimodular matrices L, R with
    L @ A @ R = diag(factors) are included.
    """
    m = [row[:] for row in mat.entries]
    rows, cols = mat.rows, mat.cols
    L = IntMatrix.identity(rows) if transforms else None
    R = IntMatrix.identity(cols) if transforms else None

    def row_op(i, j, q):  # row_i -= q * row_j
        for k in range(cols):
            m[i][k] -= q * m[j][k]
        if L is not None:
            for k in range(rows):
                L.entries[i][k] -= q * L.entries[j][k]

    def col_op(i, j, q):  # col_i -= q * col_j
        for k in range(rows):
            m[k][i] -= q * m[k][j]
        if R is not None:
            for k in range(cols):
                R.entries[k][i] -= q * R.entries[k][j]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        if L is not None:
            L.entries[i], L.entries[j] = L.entries[j], L.entries[i]

    def swap_cols(i, j):
        for k in range(rows):
            m[k][i], m[k][j] = m[k][j], m[k][i]
        if R is not None:
            for k in range(cols):
                R.entries[k][i], R.entries[k][j] = R.entries[k][j], R.entries[k][i]

    def negate_row(i):
        for k in range(cols):
            m[i][k] = -m[i][k]
        if L is not None:
            for k in range(rows):
                L.entries[i][k] = -L.entries[i][k]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # pivot: smallest nonzero absolute value in the trailing block
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0 and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        if m[t][t] < 0:
            negate_row(t)

        while True:
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    row_op(i, t, q)
                    if m[i][t] != 0:  # remainder smaller than pivot: promote it
                        swap_rows(t, i)
                        if m[t][t] < 0:
                            negate_row(t)
                        dirty = True
            for j in range(t + 1, cols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    col_op(j, t, q)
                    if m[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the trailing block by the pivot
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if m[i][j] % m[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, -1)  # add offending row to pivot row
        t += 1

    factors = []
    for i in range(limit):
        if m[i][i] != 0:
            if m[i][i] < 0:
                negate_row(i)
            factors.append(m[i][i])
    return SNFResult(tuple(factors), len(factors), rows, cols, L, R)


# ---------------------------------------------------------------------------
# abelianization / H1


def abelianization_matrix(p: Presentation) -> IntMatrix:
    """Relator exponent-sum matrix (rows = relators, cols = generators); its
    cokernel presents the abelianization."""
    return IntMatrix(
        len(p.relators),
        p.num_generators,
        [exponent_sums(rel, p.num_generators) for rel in p.relators],
    )


@dataclass(frozen=True)
class H1Invariants:
    free_rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion coefficients must form a divisibility chain")

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}" if self.free_rank > 1 else "Z")
        return " + ".join(parts) if parts else "0"


def cokernel_invariants(mat: IntMatrix) -> H1Invariants:
    """Invariants of Z^cols / row-lattice(mat)."""
    snf = smith_normal_form(mat)
    torsion = tuple(d for d in snf.factors if d >= 2)
    return H1Invariants(mat.cols - snf.rank, torsion)


def h1_invariants(p: Presentation) -> H1Invariants:
    """First homology of the presented group: free rank plus torsion chain."""
    return cokernel_invariants(abelianization_matrix(p))
