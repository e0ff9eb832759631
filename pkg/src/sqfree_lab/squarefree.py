"""Squarefree modules as finite representations of the Boolean lattice.

A squarefree module over K[x1..xn] is determined by one finite-dimensional
vector space per subset F of [n] (its component in squarefree degree F)
together with the multiplication maps comp_F -> comp_{F + j} for j not in
F, commuting with each other.  All homological machinery here (minimal
generators, covers, kernels, minimal free resolutions) works degreewise on
the at most 2^n components, so every computation is finite exact linear
algebra.

Free objects carry a multiset of shifts: the free module on shifts F_1,
..., F_r has component at G spanned by the generators with F_k contained
in G, and inclusion-induced 0/1 transition maps.  A degree-preserving map
between free modules is recorded by its scalar matrix: entry (a, b) is the
coefficient of generator a in the image of generator b, nonzero only when
shift_a is contained in shift_b; its restriction to any degree G is the
same matrix restricted to the generators alive at G.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from . import linalg
from .fields import FieldSpec
from .simplicial import SimplicialComplex


def subset_key(F):
    return (len(F), tuple(sorted(F)))


def all_subsets(n: int):
    """All subsets of {1..n} in canonical order (by size, then lex)."""
    for size in range(n + 1):
        for c in combinations(range(1, n + 1), size):
            yield frozenset(c)


def complement(F, n: int) -> frozenset:
    return frozenset(range(1, n + 1)) - F


class SquarefreeModule:
    """Boolean-poset representation: dims per subset plus transition maps."""

    def __init__(self, n: int, field: FieldSpec, comp: dict, maps: dict):
        self.n = n
        self.field = field
        self.comp = {F: d for F, d in comp.items() if d}
        self.maps = {
            key: m
            for key, m in maps.items()
            if key[0] in self.comp and (key[0] | {key[1]}) in self.comp
        }

    @classmethod
    def zero(cls, n, field):
        return cls(n, field, {}, {})

    def dim(self, F) -> int:
        return self.comp.get(F, 0)

    @property
    def is_zero(self) -> bool:
        return not self.comp

    @property
    def total_dim(self) -> int:
        return sum(self.comp.values())

    def support(self):
        return sorted(self.comp, key=subset_key)

    def map(self, F, j):
        """Multiplication matrix comp_F -> comp_{F + j} (zeros if unstored)."""
        G = F | {j}
        m = self.maps.get((F, j))
        if m is not None:
            return m
        return linalg.zeros(self.dim(G), self.dim(F), self.field)

    def transition(self, F, G):
        """Composite multiplication comp_F -> comp_G along any chain F <= G.

        Memoized; functoriality makes the result path-independent.
        """
        if not F <= G:
            raise ValueError("transition needs F contained in G")
        if F == G:
            return linalg.identity(self.dim(F), self.field)
        memo = self.__dict__.setdefault("_transition_memo", {})
        key = (F, G)
        mat = memo.get(key)
        if mat is None:
            j = max(G - F)
            below = G - {j}
            mat = linalg.matmul(
                self.map(below, j), self.transition(F, below), self.dim(F), self.field
            )
            memo[key] = mat
        return mat

    def validate(self):
        """Check shapes and the commuting-square (functoriality) law."""
        for (F, j), m in self.maps.items():
            G = F | {j}
            if len(m) != self.dim(G) or any(len(r) != self.dim(F) for r in m):
                raise ValueError(f"map shape mismatch at ({sorted(F)}, {j})")
        for F in self.support():
            outside = [j for j in range(1, self.n + 1) if j not in F]
            for a, b in combinations(outside, 2):
                left = linalg.matmul(
                    self.map(F | {a}, b), self.map(F, a), self.dim(F), self.field
                )
                right = linalg.matmul(
                    self.map(F | {b}, a), self.map(F, b), self.dim(F), self.field
                )
                if not linalg.mat_eq(left, right):
                    raise ValueError(
                        f"functoriality fails at F={sorted(F)}, i={a}, j={b}"
                    )

    def __repr__(self):
        parts = [f"{''.join(map(str, sorted(F))) or 'o'}:{d}" for F, d in
                 sorted(self.comp.items(), key=lambda t: subset_key(t[0]))]
        return f"SquarefreeModule(n={self.n}, dims={{{', '.join(parts)}}})"


class FreeSquarefree:
    """Direct sum of shifted frees R(-F_1) + ... + R(-F_r), order fixed."""

    def __init__(self, n: int, field: FieldSpec, shifts):
        self.n = n
        self.field = field
        self.shifts = tuple(frozenset(s) for s in shifts)

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def basis_at(self, G):
        return [k for k, s in enumerate(self.shifts) if s <= G]

    def dim(self, G) -> int:
        return len(self.basis_at(G))

    def shift_multiset(self) -> Counter:
        return Counter(self.shifts)

    def to_module(self) -> SquarefreeModule:
        comp = {}
        for G in all_subsets(self.n):
            d = self.dim(G)
            if d:
                comp[G] = d
        maps = {}
        one, zero = self.field.one, self.field.zero
        for G in comp:
            src = self.basis_at(G)
            for j in range(1, self.n + 1):
                if j in G:
                    continue
                H = G | {j}
                if H not in comp:
                    continue
                tgt = self.basis_at(H)
                pos = {k: r for r, k in enumerate(tgt)}
                m = [[zero] * len(src) for _ in range(len(tgt))]
                for c, k in enumerate(src):
                    m[pos[k]][c] = one
                maps[(G, j)] = m
        return SquarefreeModule(self.n, self.field, comp, maps)

    def restrict_scalar(self, scalar, other: "FreeSquarefree", G):
        """Degree-G matrix of a scalar map other -> self (self rows)."""
        rows = self.basis_at(G)
        cols = other.basis_at(G)
        return [[scalar[a][b] for b in cols] for a in rows]

    def __repr__(self):
        labels = [("{" + ",".join(map(str, sorted(s))) + "}") for s in self.shifts]
        return f"FreeSquarefree(n={self.n}, shifts=[{', '.join(labels)}])"


class SquarefreeMap:
    """Degree-preserving map of squarefree modules, one matrix per degree."""

    def __init__(self, source: SquarefreeModule, target: SquarefreeModule, mats: dict):
        if source.n != target.n or source.field != target.field:
            raise ValueError("map between modules over different ambients")
        self.source = source
        self.target = target
        self.mats = {F: m for F, m in mats.items()}

    def at(self, F):
        m = self.mats.get(F)
        if m is not None:
            return m
        return linalg.zeros(self.target.dim(F), self.source.dim(F), self.field)

    @property
    def field(self):
        return self.source.field

    @property
    def n(self):
        return self.source.n

    def validate(self):
        """Shapes plus commutation with every multiplication map."""
        fld = self.field
        for F, m in self.mats.items():
            if len(m) != self.target.dim(F) or any(
                len(r) != self.source.dim(F) for r in m
            ):
                raise ValueError(f"map shape mismatch at degree {sorted(F)}")
        degrees = set(self.source.comp) | set(self.mats)
        for F in degrees:
            for j in range(1, self.n + 1):
                if j in F:
                    continue
                G = F | {j}
                left = linalg.matmul(
                    self.target.map(F, j), self.at(F), self.source.dim(F), fld
                )
                right = linalg.matmul(
                    self.at(G), self.source.map(F, j), self.source.dim(F), fld
                )
                if not linalg.mat_eq(left, right):
                    raise ValueError(
                        f"map does not commute with x_{j} at degree {sorted(F)}"
                    )


# ---------------------------------------------------------------------------
# construction of the basic modules


def sr_module(delta: SimplicialComplex, field: FieldSpec) -> SquarefreeModule:
    """The face ring K[Delta]: one-dimensional component per face."""
    comp = {F: 1 for F in delta.faces}
    maps = {}
    one = field.one
    for F in comp:
        for j in range(1, delta.n + 1):
            if j not in F and (F | {j}) in comp:
                maps[(F, j)] = [[one]]
    return SquarefreeModule(delta.n, field, comp, maps)


# ---------------------------------------------------------------------------
# minimal generators, covers, kernels


def _generators_with_lifts(M: SquarefreeModule):
    """Per degree: unit-vector lifts of a basis of comp_F / (image from below).

    The complement is completed against the row echelon form of the incoming
    image, so the choice is deterministic.
    """
    out = []
    for F in M.support():
        d = M.dim(F)
        image_rows = []
        for j in sorted(F):
            sub = F - {j}
            if M.dim(sub):
                m = M.map(sub, j)
                image_rows.extend(
                    [row[c] for row in m] for c in range(M.dim(sub))
                )
        if image_rows:
            _, pivots = linalg.rref(image_rows, d, M.field)
            free_pos = [c for c in range(d) if c not in set(pivots)]
        else:
            free_pos = list(range(d))
        if free_pos:
            lifts = []
            for c in free_pos:
                v = [M.field.zero] * d
                v[c] = M.field.one
                lifts.append(v)
            out.append((F, lifts))
    return out


def minimal_generators(M: SquarefreeModule):
    """[(degree, multiplicity)] of a minimal generating set, canonical order."""
    return [(F, len(lifts)) for F, lifts in _generators_with_lifts(M)]


def free_cover(M: SquarefreeModule):
    """Minimal free cover: (free module, surjection, generator lifts)."""
    gens = _generators_with_lifts(M)
    shifts = []
    lifts = []
    for F, vecs in gens:
        for v in vecs:
            shifts.append(F)
            lifts.append(v)
    free = FreeSquarefree(M.n, M.field, shifts)
    mats = {}
    for G in M.support():
        idx = free.basis_at(G)
        if not idx:
            continue
        cols = [
            linalg.matvec(M.transition(shifts[k], G), lifts[k], M.field)
            for k in idx
        ]
        mats[G] = linalg.from_columns(cols, M.dim(G))
    return free, SquarefreeMap(free.to_module(), M, mats), lifts


def kernel(phi: SquarefreeMap, check: bool = True):
    """Degreewise kernel with induced multiplications.

    Returns (K, embedding) where the embedding matrices have the chosen
    kernel basis as columns, in source coordinates.  With check=True the
    input map is first validated to commute with multiplication.
    """
    if check:
        phi.validate()
    src = phi.source
    fld = phi.field
    comp = {}
    emb = {}
    for F in src.support():
        basis = linalg.right_kernel(phi.at(F), src.dim(F), fld)
        if basis:
            comp[F] = len(basis)
            emb[F] = linalg.from_columns(basis, src.dim(F))
    maps = {}
    for F in comp:
        for j in range(1, src.n + 1):
            if j in F:
                continue
            G = F | {j}
            img = linalg.matmul(src.map(F, j), emb[F], comp[F], fld)
            if G not in comp:
                if any(x != 0 for row in img for x in row):
                    raise ValueError("kernel not closed under multiplication")
                continue
            coords = linalg.solve_matrix(emb[G], img, comp[G], comp[F], fld)
            if coords is None:
                raise ValueError("kernel transition failed to factor")
            if any(x != 0 for row in coords for x in row):
                maps[(F, j)] = coords
    K = SquarefreeModule(src.n, fld, comp, maps)
    embedding = SquarefreeMap(K, src, emb)
    return K, embedding


# ---------------------------------------------------------------------------
# minimal free resolutions


@dataclass
class FreeResolution:
    """Chain ... -> F_1 -> F_0 (-> M) of free squarefree modules.

    diffs[i] is the scalar matrix of F_{i+1} -> F_i; entry (a, b) may be
    nonzero only when shift_a is strictly contained in shift_b (minimality).
    """

    modules: list
    diffs: list
    augmentation: SquarefreeMap = None

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def betti(self, i: int) -> Counter:
        if 0 <= i < len(self.modules):
            return self.modules[i].shift_multiset()
        return Counter()

    def validate(self):
        fld = self.modules[0].field if self.modules else None
        for i in range(len(self.diffs) - 1):
            prod = linalg.matmul(
                self.diffs[i], self.diffs[i + 1], self.modules[i + 2].rank, fld
            )
            if any(x != 0 for row in prod for x in row):
                raise ValueError(f"d_{i + 1} o d_{i + 2} is nonzero")
        for i, D in enumerate(self.diffs):
            upper = self.modules[i]
            lower = self.modules[i + 1]
            for a, sa in enumerate(upper.shifts):
                for b, sb in enumerate(lower.shifts):
                    if D[a][b] != 0 and not sa < sb:
                        raise ValueError(
                            f"non-minimal or ill-supported entry in d_{i + 1}"
                        )


def free_resolution(M: SquarefreeModule, check: bool = False) -> FreeResolution:
    """Minimal free resolution by squarefree frees; length at most n."""
    cached = getattr(M, "_resolution", None)
    if cached is not None:
        return cached
    F0, aug, _ = free_cover(M)
    modules = [F0]
    diffs = []
    K, emb = kernel(aug, check=check)
    while not K.is_zero:
        if len(modules) > M.n:
            raise RuntimeError("resolution exceeded the syzygy bound; engine bug")
        Fi, cover, lifts = free_cover(K)
        prev = modules[-1]
        D = linalg.zeros(prev.rank, Fi.rank, M.field)
        for l, shift in enumerate(Fi.shifts):
            w = linalg.matvec(emb.at(shift), lifts[l], M.field)
            for r, a in enumerate(prev.basis_at(shift)):
                D[a][l] = w[r]
        modules.append(Fi)
        diffs.append(D)
        K, emb = kernel(cover, check=check)
    res = FreeResolution(modules, diffs, aug)
    M._resolution = res
    return res


def projective_dimension(M: SquarefreeModule) -> int:
    if M.is_zero:
        raise ValueError("projective dimension of the zero module is undefined")
    return free_resolution(M).length


def depth(M: SquarefreeModule) -> int:
    """Auslander-Buchsbaum: n minus the minimal free resolution length."""
    if M.is_zero:
        raise ValueError("depth of the zero module is undefined")
    return M.n - free_resolution(M).length


def is_finite_length(M: SquarefreeModule) -> bool:
    """True iff every component away from the empty degree vanishes."""
    return all(F == frozenset() for F in M.comp)
