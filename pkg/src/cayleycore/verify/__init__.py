from .fixtures import (
    TABLE_PRIME,
    TABLES,
    Counterexample,
    TableRow,
    counterexample,
    halved_cube_set,
    parse_form,
    parse_subspace,
    sharpness_set,
)
from .suites import (
    SweepReport,
    extreme_regime_sets,
    five_cycles_cover_pairs,
    gl_order,
    gl_permutations,
    inverse_classes,
    low_regime_sets,
    orbit_diagnostic,
    sweep_proposition,
    verify_counterexamples,
    verify_table,
    verify_theorem_end_to_end,
)
