"""Regression corpus: every headline claim, runnable as one suite.

Each criterion is a named check against the bundled corpus (input files
plus frozen expected values under ``corpus/expected``).  The same registry
backs ``tests/test_acceptance.py`` and the ``sqfree-lab corpus`` command,
so a corrupted expected file or input fails loudly in both.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from pathlib import Path

from .duality import _ExtComputation, ccm_verdict, lyubeznik_table
from .fields import GF, QQ, FieldSpec
from .groebner import (
    DEGREVLEX,
    initial_ideal,
    initial_ideal_stability,
    is_radical_monomial,
    monomial_str,
    parse_ideal_file,
)
from .simplicial import (
    SimplicialComplex,
    buchsbaum_verdict,
    complex_of_ideal,
    dual_graph,
    parse_complex_file,
    reduced_homology,
)
from .squarefree import depth, free_resolution, is_finite_length, sr_module


class CorpusError(Exception):
    """Corpus directory missing, empty, or lacking a required file."""


class CheckFailure(Exception):
    """A criterion computed something other than its frozen expectation."""


class Corpus:
    """Accessor for the bundled (or an overridden) corpus directory."""

    def __init__(self, root=None):
        if root is None:
            root = Path(resources.files(__package__)) / "corpus"
        self.root = Path(root)
        if not self.root.is_dir() or not any(self.root.iterdir()):
            raise CorpusError(f"corpus directory {self.root} is missing or empty")

    def path(self, name: str) -> Path:
        p = self.root / name
        if not p.is_file():
            raise CorpusError(f"missing corpus file {name} under {self.root}")
        return p

    def ideal(self, name: str):
        return parse_ideal_file(self.path(name))

    def complex(self, name: str) -> SimplicialComplex:
        return parse_complex_file(self.path(name))

    def expected(self, name: str) -> dict:
        with open(self.path(f"expected/{name}"), encoding="utf-8") as fh:
            return json.load(fh)


# every complex the property criteria sweep over, including the two derived
# from bundled monomial ideals
CORPUS_COMPLEX_FILES = [
    "simply.cplx",
    "hollow_triangle.cplx",
    "octahedron.cplx",
    "torus7.cplx",
    "not_buchsbaum8.cplx",
    "two_triangles.cplx",
    "simplex4.cplx",
]


def corpus_complexes(corpus: Corpus):
    """[(name, complex)] for the sweep criteria, derived entries included."""
    out = [(name, corpus.complex(name)) for name in CORPUS_COMPLEX_FILES]
    for ideal_name in ("init_determinantal.ideal", "remark_3dim.ideal"):
        ideal = corpus.ideal(ideal_name)
        J = _monomialize(ideal)
        out.append((ideal_name, complex_of_ideal(J)))
    return out


def _monomialize(ideal):
    from .groebner import MonomialIdeal

    exps = []
    for g in ideal.generators:
        if len(g.terms) != 1:
            raise CheckFailure(f"{g} is not a monomial")
        exps.extend(g.terms)
    return MonomialIdeal(ideal.n, exps)


def _check(cond: bool, msg: str):
    if not cond:
        raise CheckFailure(msg)


def _gens_as_strings(J, order=DEGREVLEX):
    return [monomial_str(e) for e in J.sorted_gens(order)]


# ---------------------------------------------------------------------------
# the criteria


def _c1_determinantal_initial(corpus: Corpus) -> str:
    I = corpus.ideal("determinantal.ideal")
    want = corpus.expected("c1.json")
    J = initial_ideal(I, DEGREVLEX)
    got = set(_gens_as_strings(J))
    _check(got == set(want["generators"]), f"initial ideal {sorted(got)}")
    _check(is_radical_monomial(J) == want["radical"], "radicality mismatch")
    return f"in(I) = ({', '.join(_gens_as_strings(J))}), radical"


def _c2_char5_initial(corpus: Corpus) -> str:
    I = corpus.ideal("char5.ideal")
    _check(I.field.characteristic == 5, "corpus ideal should be over GF(5)")
    want = corpus.expected("c2.json")
    J = initial_ideal(I, DEGREVLEX)
    got = set(_gens_as_strings(J))
    _check(got == set(want["generators"]), f"initial ideal {sorted(got)}")
    _check(is_radical_monomial(J) == want["radical"], "radicality mismatch")
    return f"in(I) over GF(5) has {len(J.gens)} generators, not radical"


def _c3_trivial_table(corpus: Corpus) -> str:
    want = corpus.expected("c3.json")
    J = _monomialize(corpus.ideal("init_determinantal.ideal"))
    delta = complex_of_ideal(J)
    for ch in want["characteristics"]:
        table = lyubeznik_table(delta, FieldSpec(ch))
        _check(
            table.to_json_obj() == want["table"],
            f"table over char {ch} is {table.to_json_obj()}",
        )
        _check(table.is_trivial, f"table over char {ch} not trivial")
    return f"trivial table, d={want['table']['d']}, chars {want['characteristics']}"


def _c4_ccm_vs_homology(corpus: Corpus) -> str:
    delta = corpus.complex("simply.cplx")
    want = corpus.expected("c4.json")
    for fld in (QQ, GF(5)):
        h1 = reduced_homology(delta, fld).betti(1)
        _check(h1 == want["h1"], f"H~_1 = {h1} over {fld}")
        verdict = ccm_verdict(delta, fld)
        _check(verdict.ok == want["ccm"], f"CCM verdict {verdict} over {fld}")
        table = lyubeznik_table(delta, fld)
        _check(table.lam(2, 3) == want["lambda_2_3"], f"lambda_2_3 over {fld}")
        _check(table.lam(3, 3) == want["lambda_3_3"], f"lambda_3_3 over {fld}")
    comps = dual_graph(delta).n_components
    _check(comps == want["dual_components"], f"dual graph components {comps}")
    return "CCM with H~_1 = 1; lambda_2_3 = 0; 3 isolated dual-graph vertices"


def _c5_trivial_not_ccm(corpus: Corpus) -> str:
    want = corpus.expected("c5.json")
    delta = complex_of_ideal(_monomialize(corpus.ideal("remark_3dim.ideal")))
    _check(delta.dim == 3, f"expected a 3-complex, got dim {delta.dim}")
    for fld in (QQ, GF(2)):
        table = lyubeznik_table(delta, fld)
        _check(table.d == want["d"], f"d = {table.d} over {fld}")
        _check(table.is_trivial == want["trivial"], f"triviality over {fld}")
        verdict = ccm_verdict(delta, fld)
        _check(verdict.ok == want["ccm"], f"CCM verdict {verdict} over {fld}")
    return "trivial Lyubeznik table yet not CCM (witness via nonvanishing dual)"


def _c6_neither(corpus: Corpus) -> str:
    want = corpus.expected("c6.json")
    delta = corpus.complex("not_buchsbaum8.cplx")
    for fld in (GF(2), GF(5)):
        bb = buchsbaum_verdict(delta, fld)
        _check(bb.ok == want["buchsbaum"], f"Buchsbaum {bb} over {fld}")
        verdict = ccm_verdict(delta, fld)
        _check(verdict.ok == want["ccm"], f"CCM verdict {verdict} over {fld}")
        h1 = reduced_homology(delta, fld).betti(1)
        _check((h1 != 0) == want["h1_nonzero"], f"H~_1 = {h1} over {fld}")
    return "neither Buchsbaum nor CCM; H~_1 nonzero"


def _random_two_complex(rng: random.Random) -> SimplicialComplex:
    nv = rng.randint(4, 7)
    triangles = list(combinations(range(1, nv + 1), 3))
    k = rng.randint(1, min(8, len(triangles)))
    facets = [list(f) for f in rng.sample(triangles, k)]
    if rng.random() < 0.3:
        facets.append(rng.sample(range(1, nv + 1), 2))
    return SimplicialComplex(nv, facets)


def _c7_simply_connected_suite(corpus: Corpus) -> str:
    fld = GF(2)
    rng = random.Random(20260809)
    accepted = 0
    tried = 0
    while accepted < 200:
        tried += 1
        if tried > 20000:
            raise CheckFailure("random generator failed to produce 200 samples")
        delta = _random_two_complex(rng)
        if delta.dim != 2:
            continue
        if reduced_homology(delta, fld).betti(1) != 0:
            continue
        verdict = ccm_verdict(delta, fld)
        _check(
            verdict.ok,
            f"H~_1 = 0 complex not CCM: facets "
            f"{sorted(tuple(sorted(f)) for f in delta.facets)}",
        )
        accepted += 1
    return f"200 random 2-complexes with H~_1 = 0 over GF(2) all CCM ({tried} sampled)"


def _c8_buchsbaum_spot_checks(corpus: Corpus) -> str:
    want = corpus.expected("c8.json")
    for name, file, fields in (
        ("octahedron", "octahedron.cplx", (QQ, GF(2))),
        ("torus", "torus7.cplx", (QQ, GF(2))),
    ):
        delta = corpus.complex(file)
        spec = want[name]
        for fld in fields:
            hom = reduced_homology(delta, fld)
            _check(
                list(hom.dims) == spec["homology"],
                f"{name} homology {hom.dims} over {fld}",
            )
            _check(
                buchsbaum_verdict(delta, fld).ok == spec["buchsbaum"],
                f"{name} Buchsbaum over {fld}",
            )
            _check(
                ccm_verdict(delta, fld).ok == spec["ccm"],
                f"{name} CCM over {fld}",
            )
    return "sphere: Buchsbaum and CCM; torus: Buchsbaum, H~_1 = 2, not CCM"


def _c9_hochster_cross_check(corpus: Corpus) -> str:
    fields = (QQ, GF(2), GF(5))
    checked = 0
    for name, delta in corpus_complexes(corpus):
        n = delta.n
        for fld in fields:
            hom = reduced_homology(delta, fld)
            M = sr_module(delta, fld)
            res = free_resolution(M)
            for i in range(-1, delta.dim + 1):
                got = _ExtComputation(res, n - i - 1, n, fld).dim_at(frozenset())
                _check(
                    got == hom.betti(i),
                    f"{name} over {fld}: Ext degree-0 dim {got} vs H~_{i} = "
                    f"{hom.betti(i)}",
                )
                checked += 1
    return f"{checked} degree-0 Ext dimensions match reduced homology"


def _c10_shape_and_finiteness(corpus: Corpus) -> str:
    notes = []
    for name, delta in corpus_complexes(corpus):
        fld = GF(2)
        n = delta.n
        d = delta.dim + 1
        table = lyubeznik_table(delta, fld)
        _check(table.is_upper_triangular, f"{name}: table not upper triangular")
        _check(table.lam(d, d) >= 1, f"{name}: lambda_dd = {table.lam(d, d)}")
        M = sr_module(delta, fld)
        res = free_resolution(M)
        for j in range(d + 1):
            E = _ExtComputation(res, n - j, n, fld).module()
            if not E.is_zero and E.dim(frozenset()) == 0:
                _check(
                    depth(E) >= 1,
                    f"{name}: dual with vanishing degree-0 part has depth 0",
                )
        if delta.dim == 2:
            E = _ExtComputation(res, n - 3, n, fld).module()
            res_e = free_resolution(E)
            for i in range(3):
                X = _ExtComputation(res_e, n - i, n, fld).module()
                _check(
                    is_finite_length(X),
                    f"{name}: double dual at i={i} not finite length",
                )
            notes.append(name)
    return (
        "tables upper-triangular; finite-length double duals for "
        f"{len(notes)} two-complexes; positive depth where degree 0 vanishes"
    )


def _c11_stability(corpus: Corpus) -> str:
    I = corpus.ideal("determinantal.ideal")
    want = corpus.expected("c11.json")
    report = initial_ideal_stability(I, DEGREVLEX, want["primes"])
    _check(
        report.all_agree == want["all_agree"],
        f"disagreement at primes {report.disagreeing}",
    )
    return f"initial ideal stable mod p for p in {want['primes']}"


@dataclass(frozen=True)
class Criterion:
    ident: str
    title: str
    run: callable


CRITERIA = [
    Criterion("C1", "degrevlex initial ideal of the determinantal ideal", _c1_determinantal_initial),
    Criterion("C2", "non-radical initial ideal over GF(5)", _c2_char5_initial),
    Criterion("C3", "trivial Lyubeznik table of the degenerated determinantal ring", _c3_trivial_table),
    Criterion("C4", "CCM with nonzero H~_1, lambda checks and dual graph", _c4_ccm_vs_homology),
    Criterion("C5", "trivial table but not CCM in dimension 3", _c5_trivial_not_ccm),
    Criterion("C6", "neither Buchsbaum nor CCM on eight vertices", _c6_neither),
    Criterion("C7", "random H~_1 = 0 two-complexes are all CCM", _c7_simply_connected_suite),
    Criterion("C8", "sphere and torus Buchsbaum spot checks", _c8_buchsbaum_spot_checks),
    Criterion("C9", "Hochster degree-0 cross-check on the corpus", _c9_hochster_cross_check),
    Criterion("C10", "table shape, finite length and depth invariants", _c10_shape_and_finiteness),
    Criterion("C11", "initial-ideal stability across small primes", _c11_stability),
]


@dataclass(frozen=True)
class CriterionResult:
    ident: str
    title: str
    passed: bool
    detail: str
    seconds: float


def run_criteria(corpus_root=None, idents=None):
    """Run (a subset of) the acceptance criteria; returns result records."""
    corpus = Corpus(corpus_root)
    wanted = set(idents) if idents else None
    results = []
    for crit in CRITERIA:
        if wanted and crit.ident not in wanted:
            continue
        start = time.perf_counter()
        try:
            detail = crit.run(corpus)
            passed = True
        except CheckFailure as exc:
            detail = str(exc)
            passed = False
        except CorpusError:
            raise
        seconds = time.perf_counter() - start
        results.append(CriterionResult(crit.ident, crit.title, passed, detail, seconds))
    if wanted:
        missing = wanted - {r.ident for r in results}
        if missing:
            raise CorpusError(f"unknown criteria requested: {sorted(missing)}")
    return results
