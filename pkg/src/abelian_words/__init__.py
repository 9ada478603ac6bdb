"""Subword and abelian complexity of words, factor graphs, and a pruned search
for recurrent words with constant abelian complexity."""

from .complexity import (
    ComplexityProfile,
    GapReport,
    PeriodReport,
    abelian_count,
    complexity_profile,
    factor_count,
    gap_report,
    oracle_abelian_count,
    period_report,
)
from .search import SearchConfig, SearchReport, orbit_count_check, search, verify_candidate
from .structure import (
    CycleInfo,
    Diagnosis,
    FactorGraph,
    MultipleCyclesError,
    NoCycleError,
    TripleMap,
    Verdict,
    build_factor_graph,
    check_degree_lemmas,
    check_lemma_one,
    check_lemma_two,
    triple_map,
    unique_cycle,
)
from .words import (
    Alphabet,
    FiniteWord,
    GeneratorSpec,
    abelian_equivalent,
    canonical_relabel,
    generate_prefix,
    parikh,
    word,
)

__version__ = "0.1.0"
