"""Hybrid qubit / continuous-variable simulator.

Ancilla qubits are "cleaned" by a fixed unitary gate sequence that
relocates their state into one shared continuous variable, encoding the
erased bit history as nested dyadic subdivisions of the unit interval.
The package provides an exact piecewise-constant backend, an
approximate spectral grid backend, reversible lifts of classical truth
tables, a program-driven step loop with resource accounting, and a CLI.
"""
from .dyadic import (
    DyadicWave,
    indicator_unit,
    inner,
    max_abs_diff,
    norm2,
    project,
    refine,
    squeeze,
    translate_int,
    value_at,
)
from .erasure import (
    EraseStep,
    FlipVariant,
    GridHybrid,
    HybridState,
    cond_flip,
    cond_translate,
    cv_factor,
    erase,
    erase_sequence,
    grid_erase,
    grid_lift,
    hybrid_reduced_density,
    lift,
    residual_weight,
    squeeze_all,
    tensor_oracle,
    unfold,
)
from .errors import (
    ContractError,
    DomainError,
    ResourceLimitError,
    SimulationError,
    ValidationError,
)
from .grid import (
    GridWave,
    dilation_generator,
    sample_function,
    squeeze_resample,
    translate_shift,
    translate_spectral,
)
from .processor import (
    GateOp,
    Program,
    ProgramStep,
    ProcessorState,
    ResourceReport,
    StepMetrics,
    TableOp,
    init,
    init_from_program,
    load_program,
    parse_program,
    resource_report,
    run_program,
    run_step,
)
from .qubits import DensityMatrix, RegisterState, basis_state, purity
from .revcomp import (
    ReversiblePermutation,
    SubtractMode,
    TruthTable,
    as_register_permutation,
    build_reversible,
    check_involution,
    eval_forward,
    named_table,
    table_from_dict,
    table_from_json,
)

__version__ = "0.1.0"

__all__ = [
    "ContractError",
    "DensityMatrix",
    "DomainError",
    "DyadicWave",
    "EraseStep",
    "FlipVariant",
    "GateOp",
    "GridHybrid",
    "GridWave",
    "HybridState",
    "Program",
    "ProgramStep",
    "ProcessorState",
    "RegisterState",
    "ResourceLimitError",
    "ResourceReport",
    "ReversiblePermutation",
    "SimulationError",
    "StepMetrics",
    "SubtractMode",
    "TableOp",
    "TruthTable",
    "ValidationError",
    "as_register_permutation",
    "basis_state",
    "build_reversible",
    "check_involution",
    "cond_flip",
    "cond_translate",
    "cv_factor",
    "dilation_generator",
    "erase",
    "erase_sequence",
    "eval_forward",
    "grid_erase",
    "grid_lift",
    "hybrid_reduced_density",
    "indicator_unit",
    "init",
    "init_from_program",
    "inner",
    "lift",
    "load_program",
    "max_abs_diff",
    "named_table",
    "norm2",
    "parse_program",
    "project",
    "purity",
    "refine",
    "residual_weight",
    "resource_report",
    "run_program",
    "run_step",
    "sample_function",
    "squeeze",
    "squeeze_all",
    "squeeze_resample",
    "table_from_dict",
    "table_from_json",
    "tensor_oracle",
    "translate_int",
    "translate_shift",
    "translate_spectral",
    "unfold",
    "value_at",
]
