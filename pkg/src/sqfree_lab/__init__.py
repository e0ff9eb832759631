"""Exact workbench for Groebner degenerations of Stanley-Reisner rings.

Four layers:

* :mod:`sqfree_lab.groebner` -- exact polynomials, lex/degrevlex,
  Buchberger completion, initial ideals, reduction mod p.
* :mod:`sqfree_lab.simplicial` -- facet-based complexes, Stanley-Reisner
  translation, reduced homology, Reisner/Buchsbaum criteria, dual graphs.
* :mod:`sqfree_lab.squarefree` / :mod:`sqfree_lab.duality` -- squarefree
  modules over the Boolean lattice, minimal free resolutions, Ext duals
  into the canonical module, Lyubeznik tables and CCM verdicts.
* :mod:`sqfree_lab.cli` -- the `sqfree-lab` command-line front door.
"""

from .fields import GF, QQ, FieldSpec
from .groebner import (
    DEGREVLEX,
    LEX,
    Ideal,
    MonomialIdeal,
    MonomialOrder,
    ParseError,
    Polynomial,
    ReductionError,
    StabilityReport,
    buchberger,
    compare,
    initial_ideal,
    initial_ideal_stability,
    is_radical_monomial,
    normal_form,
    parse_ideal_file,
    parse_ideal_text,
    parse_polynomial,
    reduce_mod_p,
)
from .simplicial import (
    DualGraph,
    HomologyResult,
    SimplicialComplex,
    alexander_dual,
    buchsbaum_verdict,
    cm_verdict,
    complex_of_ideal,
    dual_graph,
    is_buchsbaum,
    is_cohen_macaulay,
    is_connected,
    link,
    parse_complex_file,
    parse_complex_text,
    reduced_homology,
    sr_ideal,
)
from .squarefree import (
    FreeResolution,
    FreeSquarefree,
    SquarefreeModule,
    SquarefreeMap,
    depth,
    free_cover,
    free_resolution,
    is_finite_length,
    kernel,
    minimal_generators,
    projective_dimension,
    sr_module,
)
from .duality import (
    CCMVerdict,
    LyubeznikConsistency,
    LyubeznikTable,
    ccm_verdict,
    ext_dual,
    is_ccm,
    lyubeznik_consistency,
    lyubeznik_table,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
