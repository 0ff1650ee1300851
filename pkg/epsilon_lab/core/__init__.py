from .machines import (
    entropy,
    binary_entropy,
    recurrent_classes,
    validate_machine,
    validate_transducer,
    stationary_distribution,
    statistical_complexity,
    successor_map,
)
from .process_algebra import (
    joint_machine,
    output_machine,
    as_transducer,
    trivial_input,
    remove_transients,
    state_partition,
    merge_equivalent_states,
    word_distribution,
    project_words,
)
from .info_measures import block_entropy, block_entropies, entropy_rate, excess_entropy, channel_excess_entropy
from .quantum_memory import (
    fidelity_constraints,
    standard_encoding,
    states_from_overlaps,
    von_neumann_entropy,
    density_matrix,
    density_matrix_entropy,
    complexity_from_overlaps,
    quantum_complexity,
    process_complexity,
)
from .inversion import invert, complete_and_minimize, round_trip_distance
from .simulate import PathSampler, sample_path, empirical_word_distribution, total_variation
from .catalog import build_model
from .ambiguity import (
    classify,
    region_flags,
    region_scan,
    family_tn_stationary,
    solve_target_complexity,
    gap_witness,
    output_comparison,
)
from .figures import figure_table, sweep
from .analysis_service import AnalysisService

__all__ = [
    "entropy",
    "binary_entropy",
    "recurrent_classes",
    "validate_machine",
    "validate_transducer",
    "stationary_distribution",
    "statistical_complexity",
    "successor_map",
    "joint_machine",
    "output_machine",
    "as_transducer",
    "trivial_input",
    "remove_transients",
    "state_partition",
    "merge_equivalent_states",
    "word_distribution",
    "project_words",
    "block_entropy",
    "block_entropies",
    "entropy_rate",
    "excess_entropy",
    "channel_excess_entropy",
    "fidelity_constraints",
    "standard_encoding",
    "states_from_overlaps",
    "von_neumann_entropy",
    "density_matrix",
    "density_matrix_entropy",
    "complexity_from_overlaps",
    "quantum_complexity",
    "process_complexity",
    "invert",
    "complete_and_minimize",
    "round_trip_distance",
    "PathSampler",
    "sample_path",
    "empirical_word_distribution",
    "total_variation",
    "build_model",
    "classify",
    "region_flags",
    "region_scan",
    "family_tn_stationary",
    "solve_target_complexity",
    "gap_witness",
    "output_comparison",
    "figure_table",
    "sweep",
    "AnalysisService",
]
