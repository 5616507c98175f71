"""Triangulations of closed 3-manifolds.

A triangulation is a list of tetrahedra with every face glued to another
(tet, face) slot by a vertex bijection.  Face ``f`` of a tetrahedron is the
face opposite vertex ``f``; the bijection is stored as a permutation of
{0,1,2,3} mapping the opposite vertex of the source face to the opposite
vertex of the target face.  The skeleton derives vertex, edge and face
identification classes; edges carry a reference direction and each
tetrahedron incidence records whether it traverses the class forwards or
backwards, which is what non-self-dual state-sum labels need.

Builders: two standard spheres, layered lens spaces, the 6-tetrahedron
3-torus, and layered torus bundles over RL monodromy words.  The 2-3 and
1-4 Pachner moves produce retriangulations of the same manifold.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .fpgroup import (
    H1Invariants,
    IntMatrix,
    Presentation,
    cokernel_invariants,
    free_reduce,
)

Perm4 = tuple[int, int, int, int]

# vertices of face f (ascending), for f = 0..3
FACE_VERTICES = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))
# the six edges of a tetrahedron in canonical slot order
TET_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_SLOT = {e: i for i, e in enumerate(TET_EDGES)}


def perm_inverse(p: Perm4) -> Perm4:
    out = [0, 0, 0, 0]
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_sign(p: Perm4) -> int:
    sign = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                sign = -sign
    return sign


class Triangulation:
    """Immutable gluing table.  ``gluing[tet][face] = (tet', face', perm)``."""

    def __init__(self, num_tets: int, gluings, name: str = "?", check: bool = True):
        """``gluings``: iterable of (tet, face, tet', face', perm) covering
        each glued pair once or twice (consistency enforced)."""
        self.num_tets = num_tets
        self.name = name
        table: list[list] = [[None] * 4 for _ in range(num_tets)]
        for tet, face, tet2, face2, perm in gluings:
            perm = tuple(perm)
            for entry, t, f, t2, f2, p in (
                (table[tet][face], tet, face, tet2, face2, perm),
                (table[tet2][face2], tet2, face2, tet, face, perm_inverse(perm)),
            ):
                if entry is not None and entry != (t2, f2, p):
                    raise ValueError(
                        f"conflicting gluing for tet {t} face {f}: {entry} vs {(t2, f2, p)}"
                    )
            table[tet][face] = (tet2, face2, perm)
            table[tet2][face2] = (tet, face, perm_inverse(perm))
        self.gluing = table
        if check:
            problems = structural_errors(self)
            if problems:
                raise ValueError(f"bad triangulation {name!r}: {problems[0]}")

    def glued_to(self, tet: int, face: int):
        return self.gluing[tet][face]

    def __repr__(self):
        return f"Triangulation({self.name!r}, tets={self.num_tets})"


def structural_errors(tri: Triangulation) -> list[str]:
    """Involution / closedness / permutation-convention errors."""
    out = []
    for t in range(tri.num_tets):
        for f in range(4):
            entry = tri.gluing[t][f]
            if entry is None:
                out.append(f"tet {t} face {f} unglued (complex not closed)")
                continue
            t2, f2, p = entry
            if sorted(p) != [0, 1, 2, 3]:
                out.append(f"tet {t} face {f}: not a permutation {p}")
                continue
            if p[f] != f2:
                out.append(f"tet {t} face {f}: perm does not map opposite vertex to {f2}")
            if (t2, f2) == (t, f):
                out.append(f"tet {t} face {f} glued to itself")
            back = tri.gluing[t2][f2]
            if back is None or back != (t, f, perm_inverse(p)):
                out.append(f"gluing of tet {t} face {f} is not an involution")
    return out


# ---------------------------------------------------------------------------
# skeleton


@dataclass
class Skeleton:
    """Identification classes of a closed triangulation.

    ``edge_class[t][slot] = (class_id, reversed)`` for the edge in slot
    ``TET_EDGES[slot]`` of tetrahedron t; ``reversed`` says the tetrahedron
    traverses the class opposite to its reference direction.
    """

    num_vertices: int
    num_edges: int
    num_faces: int
    num_tets: int
    vertex_class: list[list[int]]          # [tet][vertex] -> class
    edge_class: list[list[tuple[int, bool]]]
    face_class: list[list[int]]            # [tet][face] -> class
    face_reps: list[tuple[int, int]]       # class -> least (tet, face)
    edge_reps: list[tuple[int, int, int]]  # class -> least (tet, i, j) reference
    edge_degrees: list[int]
    sign_consistent: bool

    @property
    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces - self.num_tets


class _SignedUnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.sign = [1] * n  # sign relative to root
        self.consistent = True

    def find(self, x: int) -> tuple[int, int]:
        if self.parent[x] == x:
            return x, 1
        root, s = self.find(self.parent[x])
        self.parent[x] = root
        self.sign[x] *= s
        return root, self.sign[x]

    def union(self, x: int, y: int, rel_sign: int):
        rx, sx = self.find(x)
        ry, sy = self.find(y)
        if rx == ry:
            if sx * sy != rel_sign:
                self.consistent = False
            return
        self.parent[ry] = rx
        self.sign[ry] = sx * rel_sign * sy  # so that sign(y->rx) matches


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def compute_skeleton(tri: Triangulation) -> Skeleton:
    """Union-find over the gluing-induced identifications; class numbering is
    deterministic (ordered by least representative)."""
    problems = structural_errors(tri)
    if problems:
        raise ValueError(problems[0])
    nt = tri.num_tets

    vert_uf = _UnionFind(4 * nt)
    edge_uf = _SignedUnionFind(6 * nt)
    face_uf = _UnionFind(4 * nt)

    for t in range(nt):
        for f in range(4):
            t2, f2, p = tri.gluing[t][f]
            face_uf.union(4 * t + f, 4 * t2 + f2)
            for v in FACE_VERTICES[f]:
                vert_uf.union(4 * t + v, 4 * t2 + p[v])
            for (i, j) in itertools.combinations(FACE_VERTICES[f], 2):
                a, b = p[i], p[j]
                rel = 1
                if a > b:
                    a, b = b, a
                    rel = -1
                edge_uf.union(
                    6 * t + EDGE_SLOT[(i, j)], 6 * t2 + EDGE_SLOT[(a, b)], rel
                )

    def classes(uf_find, count):
        ids = {}
        out = []
        for x in range(count):
            r = uf_find(x)
            if r not in ids:
                ids[r] = len(ids)
            out.append(ids[r])
        return out, len(ids)

    vclass_flat, nv = classes(vert_uf.find, 4 * nt)
    fclass_flat, nf = classes(face_uf.find, 4 * nt)

    eclass_flat = []
    eids = {}
    esigns = []
    for x in range(6 * nt):
        r, s = edge_uf.find(x)
        if r not in eids:
            eids[r] = len(eids)
        eclass_flat.append(eids[r])
        esigns.append(s)
    ne = len(eids)

    vertex_class = [[vclass_flat[4 * t + v] for v in range(4)] for t in range(nt)]
    face_class = [[fclass_flat[4 * t + f] for f in range(4)] for t in range(nt)]
    edge_class = [
        [(eclass_flat[6 * t + s], esigns[6 * t + s] < 0) for s in range(6)]
        for t in range(nt)
    ]

    face_reps = [None] * nf
    for t in range(nt):
        for f in range(4):
            c = face_class[t][f]
            if face_reps[c] is None:
                face_reps[c] = (t, f)
    edge_reps = [None] * ne
    degrees = [0] * ne
    for t in range(nt):
        for s, (i, j) in enumerate(TET_EDGES):
            c, rev = edge_class[t][s]
            degrees[c] += 1
            if edge_reps[c] is None:
                # the reference direction is the representative's (i, j);
                # by construction the representative is not reversed
                edge_reps[c] = (t, i, j)

    return Skeleton(
        num_vertices=nv,
        num_edges=ne,
        num_faces=nf,
        num_tets=nt,
        vertex_class=vertex_class,
        edge_class=edge_class,
        face_class=face_class,
        face_reps=face_reps,
        edge_reps=edge_reps,
        edge_degrees=degrees,
        sign_consistent=edge_uf.consistent,
    )


# ---------------------------------------------------------------------------
# validation


@dataclass
class TriReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(p for _, p, _ in self.checks)

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append((name, passed, detail))

    def failures(self) -> str:
        return "; ".join(f"{n}: {d}" for n, p, d in self.checks if not p)


def validate(tri: Triangulation) -> TriReport:
    """Closed-manifold checks: gluing involution, edge-class orientation
    consistency, vertex links (Euler characteristic 2 and connected),
    Euler characteristic zero, global orientability."""
    rep = TriReport()
    problems = structural_errors(tri)
    rep.add("gluing involution and closedness", not problems,
            problems[0] if problems else "")
    if problems:
        return rep

    sk = compute_skeleton(tri)
    rep.add("edge classes orientable", sk.sign_consistent,
            "an edge class is identified with itself reversed")
    rep.add("Euler characteristic zero", sk.euler_characteristic == 0,
            f"V-E+F-T = {sk.euler_characteristic}")

    # vertex links: for each vertex class, chi = (#edge ends) - (#face corners)
    # + (#tet corners) must be 2, and the link must be connected
    nt = tri.num_tets
    ends = [0] * sk.num_vertices
    seen_edge = set()
    for t in range(nt):
        for s, (i, j) in enumerate(TET_EDGES):
            c, _ = sk.edge_class[t][s]
            if c not in seen_edge:
                seen_edge.add(c)
                ends[sk.vertex_class[t][i]] += 1
                ends[sk.vertex_class[t][j]] += 1
    corners = [0] * sk.num_vertices
    seen_face = set()
    for t in range(nt):
        for f in range(4):
            c = sk.face_class[t][f]
            if c not in seen_face:
                seen_face.add(c)
                for v in FACE_VERTICES[f]:
                    corners[sk.vertex_class[t][v]] += 1
    tet_corners = [0] * sk.num_vertices
    for t in range(nt):
        for v in range(4):
            tet_corners[sk.vertex_class[t][v]] += 1

    link_chi_ok = True
    detail = ""
    for vc in range(sk.num_vertices):
        chi = ends[vc] - corners[vc] + tet_corners[vc]
        if chi != 2:
            link_chi_ok = False
            detail = f"vertex class {vc} has link Euler characteristic {chi}"
            break
    rep.add("vertex links are spheres (chi)", link_chi_ok, detail)

    # link connectivity: connect tet-corners (t, v) across face gluings
    cuf = _UnionFind(4 * nt)
    for t in range(nt):
        for f in range(4):
            t2, f2, p = tri.gluing[t][f]
            for v in FACE_VERTICES[f]:
                cuf.union(4 * t + v, 4 * t2 + p[v])
    comp_of_class = {}
    link_conn_ok = True
    detail = ""
    for t in range(nt):
        for v in range(4):
            vc = sk.vertex_class[t][v]
            comp = cuf.find(4 * t + v)
            if vc in comp_of_class and comp_of_class[vc] != comp:
                link_conn_ok = False
                detail = f"vertex class {vc} has a disconnected link"
            comp_of_class.setdefault(vc, comp)
    rep.add("vertex links connected", link_conn_ok, detail)

    # orientability: epsilon(t') = -epsilon(t) * sign(perm)
    eps = [0] * nt
    orientable = True
    detail = ""
    for start in range(nt):
        if eps[start]:
            continue
        eps[start] = 1
        stack = [start]
        while stack and orientable:
            t = stack.pop()
            for f in range(4):
                t2, _, p = tri.gluing[t][f]
                want = -eps[t] * perm_sign(p)
                if eps[t2] == 0:
                    eps[t2] = want
                    stack.append(t2)
                elif eps[t2] != want:
                    orientable = False
                    detail = f"orientation conflict across tet {t} face {f}"
                    break
    rep.add("orientable", orientable, detail)
    return rep


# ---------------------------------------------------------------------------
# fundamental group from the 2-skeleton


def fundamental_presentation(tri: Triangulation) -> Presentation:
    """Presentation of pi_1 from the 2-skeleton: one generator per edge
    class, one relator per face class (the boundary word of the triangle),
    plus relators killing a spanning tree of the vertex graph.  Attaching
    the 3-cells does not change pi_1."""
    sk = compute_skeleton(tri)
    if not sk.sign_consistent:
        raise ValueError("edge classes are not consistently orientable")

    names = tuple(f"e{i}" for i in range(sk.num_edges))
    rels = []
    for (t, f) in sk.face_reps:
        i, j, k = FACE_VERTICES[f]
        # the face (i<j<k) reads edge_ij . edge_jk . edge_ik^-1
        w = []
        for (a, b), invert in (((i, j), False), ((j, k), False), ((i, k), True)):
            c, rev = sk.edge_class[t][EDGE_SLOT[(a, b)]]
            exp = 1
            if rev:
                exp = -exp
            if invert:
                exp = -exp
            w.append((c, exp))
        rels.append(free_reduce(w))

    # spanning tree on vertex classes: kill tree edges
    edge_ends = []
    for c, (t, i, j) in enumerate(sk.edge_reps):
        edge_ends.append((sk.vertex_class[t][i], sk.vertex_class[t][j]))
    visited = {0}
    tree: list[int] = []
    changed = True
    while changed and len(visited) < sk.num_vertices:
        changed = False
        for c, (u, v) in enumerate(edge_ends):
            if (u in visited) != (v in visited):
                visited.add(u)
                visited.add(v)
                tree.append(c)
                changed = True
    for c in tree:
        rels.append(((c, 1),))
    return Presentation(names, tuple(rels))


def h1(tri: Triangulation) -> H1Invariants:
    return cokernel_invariants(
        _abelianized_matrix(fundamental_presentation(tri))
    )


def _abelianized_matrix(p: Presentation) -> IntMatrix:
    from .fpgroup import abelianization_matrix

    return abelianization_matrix(p)


# ---------------------------------------------------------------------------
# builders: spheres and the 3-torus


def s3_pentachoron() -> Triangulation:
    """Boundary of the 4-simplex: five tetrahedra on global vertices
    {0..4} minus one, glued along shared triangles by the identity on
    global vertex names."""
    facets = [tuple(v for v in range(5) if v != i) for i in range(5)]
    pos = [{g: facets[i].index(g) for g in facets[i]} for i in range(5)]
    gluings = []
    for i in range(5):
        for j in range(i + 1, 5):
            # facet i and facet j share the triangle missing both i and j
            perm = [0, 0, 0, 0]
            for g in facets[i]:
                perm[pos[i][g]] = pos[j][g] if g != j else pos[j][i]
            face_i = pos[i][j]
            face_j = pos[j][i]
            gluings.append((i, face_i, j, face_j, tuple(perm)))
    return Triangulation(5, gluings, name="S3_pentachoron")


def t3() -> Triangulation:
    """Six-tetrahedron 3-torus: the unit cube cut along the main diagonal
    into 6 path tetrahedra, opposite faces identified by translation."""
    basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    tets = []
    for axes in itertools.permutations(range(3)):
        v = [(0, 0, 0)]
        cur = (0, 0, 0)
        for ax in axes:
            cur = tuple(c + b for c, b in zip(cur, basis[ax]))
            v.append(cur)
        tets.append(tuple(v))

    keyed = {}
    gluings = []
    for t, verts in enumerate(tets):
        for f in range(4):
            tri_coords = [verts[v] for v in FACE_VERTICES[f]]
            # translate by -e_i for every axis where the triangle lies in the
            # plane x_i = 1
            shift = [0, 0, 0]
            for i in range(3):
                if all(c[i] == 1 for c in tri_coords):
                    shift[i] = -1
            moved = {
                verts[v]: tuple(verts[v][i] + shift[i] for i in range(3))
                for v in FACE_VERTICES[f]
            }
            key = frozenset(moved.values())
            if key in keyed:
                t2, f2, canon2 = keyed.pop(key)
                perm = [0, 0, 0, 0]
                for v in FACE_VERTICES[f]:
                    perm[v] = canon2[moved[verts[v]]]
                perm[f] = f2
                gluings.append((t, f, t2, f2, tuple(perm)))
            else:
                canon = {}
                for v in FACE_VERTICES[f]:
                    canon[moved[verts[v]]] = v
                keyed[key] = (t, f, canon)
    if keyed:
        raise ValueError("t3 construction left unmatched faces")
    return Triangulation(6, gluings, name="T3")


# ---------------------------------------------------------------------------
# layered torus bundles


@dataclass(frozen=True)
class RLWord:
    """Monodromy word over {R, L}; must contain both letters (hyperbolic
    positive-trace classes; see matrix_to_rl)."""

    letters: str

    def __post_init__(self):
        if not self.letters or set(self.letters) - {"R", "L"}:
            raise ValueError(f"RL word must be over {{R, L}}: {self.letters!r}")
        if "R" not in self.letters or "L" not in self.letters:
            raise ValueError("RL word needs at least one R and one L")

    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        a, b, c, d = 1, 0, 0, 1
        for ch in self.letters:
            if ch == "R":  # right-multiply by [[1,1],[0,1]]
                a, b, c, d = a, a + b, c, c + d
            else:          # [[1,0],[1,1]]
                a, b, c, d = a + b, b, c + d, d
        return ((a, b), (c, d))

    def __str__(self):
        return self.letters


# top/bottom markings of a layered tetrahedron, per letter.  P is the
# lower-type boundary triangle with roles (O, U, D), Q the upper-type with
# roles (O, V, D); bottom faces are F3/F1, top faces F0/F2.
_LAYER = {
    "L": {
        "bottom_P": (3, {0: "O", 2: "U", 1: "D"}),   # face 3 onto P_prev
        "bottom_Q": (1, {3: "O", 0: "V", 2: "D"}),   # face 1 onto Q_prev
        "top_P": (0, {"O": 3, "U": 2, "D": 1}),
        "top_Q": (2, {"O": 3, "V": 0, "D": 1}),
    },
    "R": {
        "bottom_P": (1, {3: "O", 0: "U", 2: "D"}),
        "bottom_Q": (3, {0: "O", 2: "V", 1: "D"}),
        "top_P": (2, {"O": 3, "U": 0, "D": 1}),
        "top_Q": (0, {"O": 3, "V": 2, "D": 1}),
    },
}


def _txi_core():
    """Triangulation of T^2 x I from the unit cube with x and y identified:
    six path tetrahedra, z faces left open.  Returns (tets-as-coords,
    open gluing list, bottom marking, top marking); markings are
    (tet, face, roles) for the lower-type triangle P (roles O, U, D at the
    lattice points 0, u, u+v) and the upper-type Q (roles O, V, D)."""
    basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    tets = []
    for axes in itertools.permutations(range(3)):
        v = [(0, 0, 0)]
        cur = (0, 0, 0)
        for ax in axes:
            cur = tuple(c + b for c, b in zip(cur, basis[ax]))
            v.append(cur)
        tets.append(tuple(v))

    keyed = {}
    gluings = []
    open_faces = {}
    for t, verts in enumerate(tets):
        for f in range(4):
            coords = [verts[v] for v in FACE_VERTICES[f]]
            if all(c[2] == 0 for c in coords) or all(c[2] == 1 for c in coords):
                open_faces[(t, f)] = {verts[v]: v for v in FACE_VERTICES[f]}
                continue
            shift = [0, 0, 0]
            for i in range(2):  # identify x and y only
                if all(c[i] == 1 for c in coords):
                    shift[i] = -1
            moved = {
                verts[v]: tuple(verts[v][i] + shift[i] for i in range(3))
                for v in FACE_VERTICES[f]
            }
            key = frozenset(moved.values())
            if key in keyed:
                t2, f2, canon2 = keyed.pop(key)
                perm = [0, 0, 0, 0]
                for v in FACE_VERTICES[f]:
                    perm[v] = canon2[moved[verts[v]]]
                perm[f] = f2
                gluings.append((t, f, t2, f2, tuple(perm)))
            else:
                keyed[key] = (t, f, {c: v for v, c in
                                     ((v, moved[verts[v]]) for v in FACE_VERTICES[f])})
    if keyed:
        raise AssertionError("T2 x I core left unmatched interior faces")

    def marking(z):
        lower = {(0, 0, z): "O", (1, 0, z): "U", (1, 1, z): "D"}
        upper = {(0, 0, z): "O", (0, 1, z): "V", (1, 1, z): "D"}
        P = Q = None
        for (t, f), cmap in open_faces.items():
            coords = set(cmap)
            if {c[2] for c in coords} != {z}:
                continue
            if coords == set(lower):
                P = (t, f, {lower[c]: v for c, v in cmap.items()})
            elif coords == set(upper):
                Q = (t, f, {upper[c]: v for c, v in cmap.items()})
        if P is None or Q is None:
            raise AssertionError("T2 x I core boundary marking not found")
        return P, Q

    return gluings, marking(0), marking(1)


def _glue_marked(gluings, face_a, face_b):
    """Glue two marked open faces role-to-role."""
    ta, fa, ra = face_a
    tb, fb, rb = face_b
    perm = [None, None, None, None]
    for role, v in ra.items():
        perm[v] = rb[role]
    perm[fa] = fb
    gluings.append((ta, fa, tb, fb, tuple(perm)))


def torus_bundle(word: RLWord | str) -> Triangulation:
    """Layered triangulation of the torus bundle with monodromy the product
    of the word's matrices (R = [[1,1],[0,1]], L = [[1,0],[1,1]]): a
    T^2 x I core plus one layering tetrahedron per letter over the
    two-triangle fiber torus, closed by the mapping-torus identification."""
    if isinstance(word, str):
        word = RLWord(word)
    w = word.letters
    n = len(w)

    gluings, (P0, Q0), (P, Q) = _txi_core()

    for i, ch in enumerate(w):
        tet = 6 + i
        spec = _LAYER[ch]
        for bkey, prev in (("bottom_P", P), ("bottom_Q", Q)):
            face, roles = spec[bkey]
            rolemap = {role: v for v, role in roles.items()}
            _glue_marked(gluings, (tet, face, rolemap), prev)
        fP, rolesP = spec["top_P"]
        fQ, rolesQ = spec["top_Q"]
        P = (tet, fP, rolesP)
        Q = (tet, fQ, rolesQ)

    _glue_marked(gluings, P, P0)
    _glue_marked(gluings, Q, Q0)
    return Triangulation(6 + n, gluings, name=f"torus_bundle_{w}")


def matrix_to_rl(matrix, conj_bound: int = 64):
    """RL word whose product is SL(2,Z)-conjugate to the given hyperbolic
    matrix (determinant 1, trace >= 3), plus the conjugator certificate.

    Greedy Euclidean peeling factors nonnegative matrices exactly (identity
    conjugator); otherwise candidate words of matching trace are searched
    with a bounded integral-conjugacy check.
    """
    (a, b), (c, d) = matrix
    if a * d - b * c != 1:
        raise ValueError("matrix_to_rl needs determinant 1")
    tr = a + d
    if tr < 3:
        raise ValueError(
            "matrix_to_rl needs trace >= 3 (elliptic/parabolic classes have "
            "no RL factorization; use the presentation route)"
        )

    # greedy peel for nonnegative matrices
    if min(a, b, c, d) >= 0:
        m = (a, b, c, d)
        letters = []
        while m != (1, 0, 0, 1):
            ma, mb, mc, md = m
            if ma >= mc and mb >= md and (ma, mb) != (mc, md):
                letters.append("R")  # strip a leading R
                m = (ma - mc, mb - md, mc, md)
            elif mc >= ma and md >= mb:
                letters.append("L")
                m = (ma, mb, mc - ma, md - mb)
            else:
                letters = None
                break
            if m[0] < 0 or m[1] < 0 or m[2] < 0 or m[3] < 0:
                letters = None
                break
        if letters and "R" in letters and "L" in letters:
            return RLWord("".join(letters)), ((1, 0), (0, 1))

    # conjugate case: search canonical RL words with the same trace
    from .sl2z import z_conjugate_bounded

    for length in range(2, 64):
        found_trace = False
        for bits in itertools.product("RL", repeat=length):
            wstr = "".join(bits)
            if "R" not in wstr or "L" not in wstr:
                continue
            if min(wstr[k:] + wstr[:k] for k in range(length)) != wstr:
                continue  # one representative per cyclic class
            wd = RLWord(wstr)
            ((p, q), (r, s)) = wd.matrix()
            if p + s > tr:
                continue
            found_trace = True
            if p + s != tr:
                continue
            conj = z_conjugate_bounded(matrix, wd.matrix(), conj_bound)
            if conj is not None:
                return wd, conj
        if not found_trace and length > tr:
            break
    raise ValueError(
        f"no RL-word conjugate of {matrix} found (conjugator bound {conj_bound})"
    )


# ---------------------------------------------------------------------------
# Pachner moves


def pachner_14(tri: Triangulation, tet: int) -> Triangulation:
    """Subdivide one tetrahedron into four around an interior vertex."""
    if not 0 <= tet < tri.num_tets:
        raise ValueError("tetrahedron index out of range")
    n = tri.num_tets
    # new tet for face i of the old tet: index map
    new_index = {0: tet, 1: n, 2: n + 1, 3: n + 2}

    gluings = []
    # untouched gluings
    for t in range(n):
        if t == tet:
            continue
        for f in range(4):
            t2, f2, p = tri.gluing[t][f]
            if t2 == tet:
                continue  # handled from the old tet's side
            if (t2, f2) > (t, f):
                gluings.append((t, f, t2, f2, p))

    # internal gluings among the four new tets
    for i in range(4):
        for j in range(i + 1, 4):
            perm = list(range(4))
            perm[i], perm[j] = j, i
            gluings.append((new_index[i], j, new_index[j], i, tuple(perm)))

    # external faces: new tet i keeps old face i
    for i in range(4):
        t2, f2, p = tri.gluing[tet][i]
        if t2 == tet:
            # the old tet was glued to itself: both sides live on new tets
            if f2 < i:
                continue
            gluings.append((new_index[i], i, new_index[f2], f2, p))
        else:
            gluings.append((new_index[i], i, t2, f2, p))
    return Triangulation(n + 3, gluings, name=f"{tri.name}+14")


def pachner_23(tri: Triangulation, tet: int, face: int) -> Triangulation:
    """Replace two distinct tetrahedra sharing a face by three around the
    new edge joining their apexes."""
    tA = tet
    fA = face
    tB, fB, pi = tri.gluing[tA][fA]
    if tB == tA:
        raise ValueError("2-3 move needs two distinct tetrahedra around the face")
    n = tri.num_tets

    corners = FACE_VERTICES[fA]  # a_0 < a_1 < a_2 in tA
    # local maps old -> new: mu_m for tA into new tet m, nu_m for tB
    new_idx = {0: tA, 1: tB, 2: n}
    mu = []
    nu = []
    for m in range(3):
        mm = {fA: 0, corners[(m + 1) % 3]: 2, corners[(m + 2) % 3]: 3, corners[m]: 1}
        mu.append(mm)
        nn = {
            fB: 1,
            pi[corners[(m + 1) % 3]]: 2,
            pi[corners[(m + 2) % 3]]: 3,
            pi[corners[m]]: 0,
        }
        nu.append(nn)

    # where each old external slot now lives: (new tet, new face, local map)
    home = {}
    for m in range(3):
        home[(tA, corners[m])] = (new_idx[m], 1, mu[m])
        home[(tB, pi[corners[m]])] = (new_idx[m], 0, nu[m])

    gluings = []
    for t in range(n):
        if t in (tA, tB):
            continue
        for f in range(4):
            t2, f2, p = tri.gluing[t][f]
            if t2 in (tA, tB):
                continue
            if (t2, f2) > (t, f):
                gluings.append((t, f, t2, f2, p))

    # internal: new tet m face 2 <-> new tet m+1 face 3 (apexes fixed,
    # off-face vertices exchanged)
    for m in range(3):
        gluings.append((new_idx[m], 2, new_idx[(m + 1) % 3], 3, (0, 1, 3, 2)))

    handled = set()
    for (old_t, old_f), (new_t, new_f, local) in home.items():
        if (old_t, old_f) in handled:
            continue
        t2, f2, rho = tri.gluing[old_t][old_f]
        if (t2, f2) in home:
            # both sides are external faces of the doomed pair
            nt2, nf2, local2 = home[(t2, f2)]
            inv = {v: k for k, v in local.items()}
            perm = [0, 0, 0, 0]
            for v in range(4):
                perm[v] = local2[rho[inv[v]]]
            gluings.append((new_t, new_f, nt2, nf2, tuple(perm)))
            handled.add((old_t, old_f))
            handled.add((t2, f2))
        else:
            inv = {v: k for k, v in local.items()}
            perm = [0, 0, 0, 0]
            for v in range(4):
                perm[v] = rho[inv[v]]
            gluings.append((new_t, new_f, t2, f2, tuple(perm)))
            handled.add((old_t, old_f))
    return Triangulation(n + 1, gluings, name=f"{tri.name}+23")


def eligible_23_faces(tri: Triangulation):
    """Face classes whose two sides lie on distinct tetrahedra, as
    representative (tet, face) slots in deterministic order."""
    sk = compute_skeleton(tri)
    out = []
    for (t, f) in sk.face_reps:
        t2, _, _ = tri.gluing[t][f]
        if t2 != t:
            out.append((t, f))
    return out


# ---------------------------------------------------------------------------
# file format


def format_triangulation(tri: Triangulation) -> str:
    lines = [f"tets: {tri.num_tets}"]
    for t in range(tri.num_tets):
        cells = []
        for f in range(4):
            t2, f2, p = tri.gluing[t][f]
            cells.append(f"{t2}/{''.join(str(x) for x in p)}")
        lines.append(f"{t}: " + " ".join(cells))
    return "\n".join(lines) + "\n"


def parse_triangulation(text: str, name: str = "imported") -> Triangulation:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("tets:"):
        raise ValueError("missing tets line")
    n = int(lines[0].split(":", 1)[1])
    gluings = []
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} tetrahedron lines, found {len(lines) - 1}")
    for ln in lines[1:]:
        head, _, rest = ln.partition(":")
        t = int(head)
        cells = rest.split()
        if len(cells) != 4:
            raise ValueError(f"tetrahedron {t}: expected 4 gluings")
        for f, cell in enumerate(cells):
            target, _, permstr = cell.partition("/")
            perm = tuple(int(ch) for ch in permstr)
            if len(perm) != 4:
                raise ValueError(f"tetrahedron {t} face {f}: bad permutation {permstr!r}")
            t2 = int(target)
            gluings.append((t, f, t2, perm[f], perm))
    return Triangulation(n, gluings, name=name)
