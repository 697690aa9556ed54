"""Gap-shift combinatorics, entropy solving, and non-integer-base expansions."""

__version__ = "0.1.0"

from .sgap import (  # noqa: F401
    Classification,
    CofiniteGaps,
    EmptySetError,
    ExplicitGaps,
    PeriodicGaps,
    SGapSpec,
    SpecSyntaxError,
    classify,
    cofinite_gaps,
    explicit_gaps,
    members_up_to,
    parse_sgap_spec,
    periodic_gaps,
)
from .blocks import (  # noqa: F401
    BlockCountTable,
    EmptyShiftError,
    InadmissibleWordError,
    ShiftAutomaton,
    SizeGuardError,
    automaton_count_table,
    build_sft_automaton,
    count_blocks_automaton,
    count_blocks_sgap,
    enumerate_blocks_sgap,
    even_shift_automaton,
    follower_count,
    sgap_count_table,
    word_is_admissible,
)
from .entropy import (  # noqa: F401
    EntropyResult,
    EntropySolveError,
    entropy_bounds_from_counts,
    entropy_slope_diagnostic,
    solve_sgap_entropy,
)
from .props import (  # noqa: F401
    GibbsDiagnostics,
    PropertyReport,
    balanced_estimate,
    bsm_estimate,
    gibbs_diagnostics,
)
from .beta import (  # noqa: F401
    BetaContext,
    ExpansionPrefix,
    LeafBudgetError,
    apply_map,
    continuum_navigator,
    ehj_classify,
    enumerate_expansions_of_one,
    expansion_from_sgap,
    greedy_expansion,
    greedy_switch_frequency,
    komornik_loreti_constant,
    lazy_expansion,
    max_zero_run_bound,
    sgap_from_expansion,
    spec_construction_lazy,
    spec_from_prefix,
    thue_morse,
    univoque_check,
)
