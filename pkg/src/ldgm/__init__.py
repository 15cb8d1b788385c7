"""Rate-distortion bounds and exact experiments for sparse-generator codes.

The package has four layers:

- :mod:`ldgm.bounds` -- closed-form and variational rate bounds for the
  check-regular ensemble and the compound (precoded) construction, plus the
  zero-distortion satisfiability threshold bound.
- :mod:`ldgm.codes` -- finite-size GF(2) machinery: ensemble sampling,
  encoding, exhaustive optimal-encoding search, linear solving, and the
  exact counting oracles that cross-validate the bounds.
- :mod:`ldgm.experiments` -- reproducible Monte Carlo campaigns with
  deterministic seeding and CSV output.
- :mod:`ldgm.cli` -- the ``ldgm`` command-line front end.
"""

from .bounds import (BoundResult, CurvePoint, DegreeParams,
                     EXACT_XORSAT_THRESHOLDS, ExponentParams,
                     OptimizationError, binary_entropy,
                     binary_entropy_inverse, compound_rate_objective,
                     compound_rate_upper_bound, distortion_curve,
                     induced_weight, ldgm_rate_objective,
                     ldpc_weight_enumerator, optimal_tilt, overlap_exponent,
                     rate_upper_bound, tilted_exponent, tilted_mean,
                     xorsat_threshold)
from .codes import (BudgetError, EncodingResult, GeneratorMatrix,
                    OracleCheck, ParityMatrix, SecondMomentReport,
                    SourceSequence, conditional_overlap_prob_exact,
                    count_D_optimal, distortion_threshold, encode_codeword,
                    first_moment_exact, gf2_nullspace, gf2_rank,
                    induced_distribution_check, ml_encode,
                    ml_encode_compound, read_matrix, sample_ldgm,
                    sample_ldpc, sample_source,
                    second_moment_decomposition_check, write_matrix,
                    xorsat_solvable)
from .experiments import (CsvTable, ExperimentConfig, TrialRecord,
                          derive_rng, derive_seed, load_config,
                          run_bound_sweep, run_distortion_experiment,
                          run_oracle_checks, run_xorsat_experiment)

__version__ = "0.1.0"

__all__ = [
    "BoundResult", "BudgetError", "CsvTable", "CurvePoint", "DegreeParams",
    "EXACT_XORSAT_THRESHOLDS", "EncodingResult", "ExperimentConfig",
    "ExponentParams", "GeneratorMatrix", "OptimizationError", "OracleCheck",
    "ParityMatrix", "SecondMomentReport", "SourceSequence", "TrialRecord",
    "binary_entropy", "binary_entropy_inverse",
    "compound_rate_objective", "compound_rate_upper_bound",
    "conditional_overlap_prob_exact", "count_D_optimal", "derive_rng",
    "derive_seed", "distortion_curve", "distortion_threshold",
    "encode_codeword", "first_moment_exact", "gf2_nullspace", "gf2_rank",
    "induced_distribution_check", "induced_weight", "ldgm_rate_objective",
    "ldpc_weight_enumerator", "load_config", "ml_encode",
    "ml_encode_compound", "optimal_tilt", "overlap_exponent", "read_matrix",
    "rate_upper_bound", "run_bound_sweep", "run_distortion_experiment",
    "run_oracle_checks", "run_xorsat_experiment", "sample_ldgm",
    "sample_ldpc", "sample_source", "second_moment_decomposition_check",
    "tilted_exponent", "tilted_mean", "write_matrix", "xorsat_solvable",
    "xorsat_threshold",
]
