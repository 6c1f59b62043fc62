"""qscramble: dual-backend random-circuit simulation of entanglement
fluctuations under T-gate doping and measurement-induced dynamics."""

from .analysis import CollapseResult, FitResult, curve_crossings, fss_collapse, linear_fit
from .circuits import (
    Circuit,
    GateOp,
    circuit_from_lines,
    circuit_to_lines,
    gen_2q_clifford,
    gen_clifford_block,
    gen_mipt_cycle,
    gen_tdoped,
    load_circuit,
    save_circuit,
)
from .clifford2 import clifford2_table
from .config import EnsembleConfig, instance_rngs
from .experiments import (
    KurtosisResult,
    MiptResult,
    OracleReport,
    TdopedResult,
    run_kurtosis,
    run_mipt,
    run_oracle_checks,
    run_renyi4,
    run_tdoped,
)
from .moments import (
    PermutationOperator,
    mean_purity_prediction,
    mean_sq_purity_prediction,
    moment_decay_prediction,
    permutation_operator,
    permutation_trace,
    purity_decay_statistic,
    t_gate_overlap_bounds,
    t_gate_overlap_matrix,
)
from .observables import (
    SampleRecord,
    fluctuation,
    fluctuation_stderr,
    kurt_combo,
    kurtosis,
    measure_record,
    mutual_info2,
)
from .statevector import PureState, check_density, reduced_density
from .tableau import StabilizerTableau

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CollapseResult",
    "EnsembleConfig",
    "FitResult",
    "GateOp",
    "KurtosisResult",
    "MiptResult",
    "OracleReport",
    "PermutationOperator",
    "PureState",
    "SampleRecord",
    "StabilizerTableau",
    "TdopedResult",
    "check_density",
    "circuit_from_lines",
    "circuit_to_lines",
    "clifford2_table",
    "curve_crossings",
    "fluctuation",
    "fluctuation_stderr",
    "fss_collapse",
    "gen_2q_clifford",
    "gen_clifford_block",
    "gen_mipt_cycle",
    "gen_tdoped",
    "instance_rngs",
    "kurt_combo",
    "kurtosis",
    "linear_fit",
    "load_circuit",
    "mean_purity_prediction",
    "mean_sq_purity_prediction",
    "measure_record",
    "moment_decay_prediction",
    "mutual_info2",
    "permutation_operator",
    "permutation_trace",
    "purity_decay_statistic",
    "reduced_density",
    "run_kurtosis",
    "run_mipt",
    "run_oracle_checks",
    "run_renyi4",
    "run_tdoped",
    "save_circuit",
    "t_gate_overlap_bounds",
    "t_gate_overlap_matrix",
]
