"""Simplicial complexes on [n], Stanley-Reisner translation and homology.

Complexes are stored by their facets (inclusion-maximal faces).  Two
degenerate complexes are representable and kept distinct: the void complex
(no faces at all) and the irrelevant complex {emptyset}.  Reduced homology
is computed over an arbitrary FieldSpec by exact rank of boundary
matrices, with faces sorted lexicographically so matrices are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from . import linalg
from .fields import FieldSpec
from .groebner import MonomialIdeal, ParseError


class SimplicialComplex:
    """Facet-based simplicial complex on the vertex set {1, ..., n}."""

    __slots__ = ("n", "facets", "__dict__")

    def __init__(self, n: int, facets):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        fs = set()
        for f in facets:
            f = frozenset(f)
            if any(not (1 <= v <= n) for v in f):
                raise ValueError(f"facet {sorted(f)} outside vertex set [1..{n}]")
            fs.add(f)
        maximal = {f for f in fs if not any(f < g for g in fs)}
        self.facets = frozenset(maximal)

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.n == other.n
            and self.facets == other.facets
        )

    def __hash__(self):
        return hash((self.n, self.facets))

    def __repr__(self):
        fac = sorted(tuple(sorted(f)) for f in self.facets)
        return f"SimplicialComplex(n={self.n}, facets={fac})"

    # -- basic structure ------------------------------------------------------

    @property
    def is_void(self) -> bool:
        """No faces at all (not even the empty face)."""
        return not self.facets

    @property
    def is_irrelevant(self) -> bool:
        return self.facets == frozenset({frozenset()})

    @property
    def dim(self) -> int:
        if self.is_void:
            raise ValueError("the void complex has no dimension")
        return max(len(f) for f in self.facets) - 1

    @property
    def is_pure(self) -> bool:
        sizes = {len(f) for f in self.facets}
        return len(sizes) <= 1

    @cached_property
    def faces(self) -> frozenset:
        """All faces, including the empty face (void complex: none)."""
        out = set()
        for f in self.facets:
            verts = sorted(f)
            for k in range(len(verts) + 1):
                out.update(frozenset(c) for c in combinations(verts, k))
        return frozenset(out)

    def faces_of_dim(self, k: int):
        """Sorted list of k-faces as sorted vertex tuples (k = -1 allowed)."""
        if k == -1:
            return [()] if frozenset() in self.faces else []
        return sorted(
            tuple(sorted(f)) for f in self.faces if len(f) == k + 1
        )

    @property
    def vertices(self):
        return sorted({v for f in self.facets for v in f})

    def is_face(self, sigma) -> bool:
        sigma = frozenset(sigma)
        return any(sigma <= f for f in self.facets)

    def f_vector(self):
        """(f_{-1}, f_0, ..., f_dim)."""
        if self.is_void:
            return ()
        counts = [0] * (self.dim + 2)
        for f in self.faces:
            counts[len(f)] += 1
        return tuple(counts)

    def restrict(self, W) -> "SimplicialComplex":
        """Full subcomplex on the vertex subset W (ambient n unchanged)."""
        W = frozenset(W)
        return SimplicialComplex(self.n, (f & W for f in self.facets))


def link(delta: SimplicialComplex, sigma) -> SimplicialComplex:
    """link(sigma) = {tau : tau disjoint from sigma, tau + sigma a face}."""
    sigma = frozenset(sigma)
    if not delta.is_face(sigma):
        raise ValueError(f"{sorted(sigma)} is not a face")
    return SimplicialComplex(
        delta.n, (f - sigma for f in delta.facets if sigma <= f)
    )


# ---------------------------------------------------------------------------
# Stanley-Reisner translation


def sr_ideal(delta: SimplicialComplex) -> MonomialIdeal:
    """Squarefree monomial ideal generated by the minimal non-faces."""
    n = delta.n
    faces = delta.faces
    gens = []
    for size in range(0, n + 1):
        for c in combinations(range(1, n + 1), size):
            s = frozenset(c)
            if s in faces:
                continue
            # minimal non-face iff every codimension-1 subset is a face
            if all((s - {v}) in faces for v in s):
                gens.append(tuple(1 if i in s else 0 for i in range(1, n + 1)))
    return MonomialIdeal(n, gens)


def complex_of_ideal(J: MonomialIdeal) -> SimplicialComplex:
    """Inverse Stanley-Reisner correspondence for radical monomial ideals."""
    if not J.is_radical():
        raise ValueError("complex_of_ideal requires a radical monomial ideal")
    n = J.n
    supports = [frozenset(i + 1 for i, x in enumerate(e) if x) for e in J.gens]
    faces = []
    for size in range(n, -1, -1):
        for c in combinations(range(1, n + 1), size):
            s = frozenset(c)
            if any(supp <= s for supp in supports):
                continue
            if any(s <= f for f in faces):
                continue
            faces.append(s)
    return SimplicialComplex(n, faces)


def alexander_dual(delta: SimplicialComplex) -> SimplicialComplex:
    """Complex whose faces are the complements of the non-faces."""
    n = delta.n
    everything = frozenset(range(1, n + 1))
    minimal_nonfaces = [
        frozenset(i + 1 for i, x in enumerate(e) if x)
        for e in sr_ideal(delta).gens
    ]
    return SimplicialComplex(n, (everything - s for s in minimal_nonfaces))


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyResult:
    """Reduced Betti numbers dim H~_i for i = -1 .. dim."""

    field: FieldSpec
    dims: tuple  # dims[i + 1] == dim H~_i

    def betti(self, i: int) -> int:
        idx = i + 1
        if 0 <= idx < len(self.dims):
            return self.dims[idx]
        return 0

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 2

    def __str__(self):
        parts = [f"H~_{i}={self.betti(i)}" for i in range(-1, self.top_degree + 1)]
        return f"[{', '.join(parts)}] over {self.field}"


def boundary_matrix(delta: SimplicialComplex, k: int, field: FieldSpec):
    """Matrix of d_k : C_k -> C_{k-1}; rows are (k-1)-faces, columns k-faces."""
    rows = delta.faces_of_dim(k - 1)
    cols = delta.faces_of_dim(k)
    index = {f: i for i, f in enumerate(rows)}
    one = field.one
    mat = linalg.zeros(len(rows), len(cols), field)
    for j, f in enumerate(cols):
        for pos in range(len(f)):
            sub = f[:pos] + f[pos + 1 :]
            coeff = one if pos % 2 == 0 else field.neg(one)
            mat[index[sub]][j] = coeff
    return mat, len(cols)


def reduced_homology(delta: SimplicialComplex, field: FieldSpec) -> HomologyResult:
    """Reduced simplicial homology dimensions by exact boundary ranks."""
    if delta.is_void:
        raise ValueError("reduced homology of the void complex is undefined")
    top = delta.dim
    ranks = {}
    for k in range(0, top + 1):
        mat, ncols = boundary_matrix(delta, k, field)
        ranks[k] = linalg.rank(mat, ncols, field) if ncols else 0
    dims = []
    for i in range(-1, top + 1):
        c_i = 1 if i == -1 else len(delta.faces_of_dim(i))
        dims.append(c_i - ranks.get(i, 0) - ranks.get(i + 1, 0))
    return HomologyResult(field, tuple(dims))


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    @property
    def n_components(self):
        return len({self.find(x) for x in self.parent})


def is_connected(delta: SimplicialComplex) -> bool:
    """Connectivity of the 1-skeleton (equivalently H~_0 = 0)."""
    verts = delta.vertices
    if not verts:
        raise ValueError("connectivity needs at least one vertex")
    uf = _UnionFind(verts)
    for f in delta.facets:
        f = sorted(f)
        for a, b in zip(f, f[1:]):
            uf.union(a, b)
    return uf.n_components == 1


# ---------------------------------------------------------------------------
# Reisner / Buchsbaum criteria


@dataclass(frozen=True)
class CMVerdict:
    ok: bool
    face: tuple = None
    degree: int = None

    @property
    def witness(self):
        if self.ok:
            return None
        return {"face": list(self.face), "homology_degree": self.degree}


def cm_verdict(delta: SimplicialComplex, field: FieldSpec) -> CMVerdict:
    """Reisner criterion: every link has vanishing homology below top degree."""
    for sigma in sorted(delta.faces, key=lambda s: (len(s), sorted(s))):
        lk = link(delta, sigma)
        top = lk.dim
        if top <= -1:
            continue
        hom = reduced_homology(lk, field)
        for i in range(-1, top):
            if hom.betti(i) != 0:
                return CMVerdict(False, tuple(sorted(sigma)), i)
    return CMVerdict(True)


def is_cohen_macaulay(delta: SimplicialComplex, field: FieldSpec) -> bool:
    return cm_verdict(delta, field).ok


@dataclass(frozen=True)
class BuchsbaumVerdict:
    ok: bool
    reason: str = ""
    face: tuple = None

    @property
    def witness(self):
        if self.ok:
            return None
        out = {"reason": self.reason}
        if self.face is not None:
            out["face"] = list(self.face)
        return out


def buchsbaum_verdict(delta: SimplicialComplex, field: FieldSpec) -> BuchsbaumVerdict:
    """Pure and every non-empty face has a Cohen-Macaulay link."""
    if not delta.is_pure:
        return BuchsbaumVerdict(False, "not pure")
    for sigma in sorted(
        (f for f in delta.faces if f), key=lambda s: (len(s), sorted(s))
    ):
        if not is_cohen_macaulay(link(delta, sigma), field):
            return BuchsbaumVerdict(False, "link not Cohen-Macaulay", tuple(sorted(sigma)))
    return BuchsbaumVerdict(True)


def is_buchsbaum(delta: SimplicialComplex, field: FieldSpec) -> bool:
    return buchsbaum_verdict(delta, field).ok


# ---------------------------------------------------------------------------
# dual graph


@dataclass(frozen=True)
class DualGraph:
    """Facets as vertices; edges where the intersection has size dim."""

    facets: tuple  # sorted vertex tuples
    edges: tuple  # pairs of indices into facets
    n_components: int


def dual_graph(delta: SimplicialComplex) -> DualGraph:
    facets = sorted(tuple(sorted(f)) for f in delta.facets)
    if not facets:
        return DualGraph((), (), 0)
    d = delta.dim  # intersection size giving codimension 1
    edges = []
    uf = _UnionFind(range(len(facets)))
    for i, j in combinations(range(len(facets)), 2):
        if len(set(facets[i]) & set(facets[j])) == d:
            edges.append((i, j))
            uf.union(i, j)
    return DualGraph(tuple(facets), tuple(edges), uf.n_components)


# ---------------------------------------------------------------------------
# text format: `vertices: n`, one facet per line ('-' for the empty facet)


def parse_complex_text(text: str) -> SimplicialComplex:
    n = None
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            try:
                n = int(line[len("vertices:") :].strip())
            except ValueError:
                raise ParseError(f"line {lineno}: bad vertex count") from None
            if n < 0:
                raise ParseError(f"line {lineno}: vertex count must be non-negative")
            continue
        if n is None:
            raise ParseError(f"line {lineno}: facets before a 'vertices: n' header")
        if line == "-":
            facets.append(frozenset())
            continue
        try:
            verts = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"line {lineno}: malformed facet line {line!r}") from None
        if any(not 1 <= v <= n for v in verts):
            raise ParseError(f"line {lineno}: vertex outside 1..{n}")
        facets.append(frozenset(verts))
    if n is None:
        raise ParseError("missing 'vertices: n' header")
    return SimplicialComplex(n, facets)


def parse_complex_file(path) -> SimplicialComplex:
    with open(path, encoding="utf-8") as fh:
        return parse_complex_text(fh.read())
