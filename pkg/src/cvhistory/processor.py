"""Program-driven step loop with ancilla cleanup into the history mode.

A program acts on data qubits [0, n_data) and ancilla qubits
[n_data, n_data + n_anc).  Each step applies one reversible operation (a
named gate or a lifted truth table) and then erases the listed ancillas
into the shared CV mode, so the ancilla pool stays constant while the
CV level grows by one per erasure.  Metrics captured after every step
quantify cleanup exactness and history-induced decoherence.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import qubits
from .dyadic import MAX_LEVEL_DEFAULT, indicator_unit
from .erasure import (
    FlipVariant,
    HybridState,
    apply_basis_permutation,
    apply_qubit_gate,
    apply_row_phases,
    erase,
    hybrid_reduced_density,
    lift,
    residual_weight,
)
from .errors import ContractError, ResourceLimitError, ValidationError
from .qubits import RegisterState, basis_state, purity
from .revcomp import (
    SubtractMode,
    TruthTable,
    as_register_permutation,
    build_reversible,
    named_table,
    table_from_dict,
    table_from_json,
)

SINGLE_QUBIT_GATES: Dict[str, np.ndarray] = {
    "X": qubits.X,
    "Y": qubits.Y,
    "Z": qubits.Z,
    "H": qubits.H,
    "S": qubits.S,
    "T": qubits.T,
}
TWO_QUBIT_GATES = ("CNOT", "SWAP", "CZ")


@dataclass(frozen=True)
class GateOp:
    """Named gate on explicit target qubits (control first for CNOT)."""

    name: str
    targets: Tuple[int, ...]


@dataclass(frozen=True)
class TableOp:
    """Reversible truth-table lift acting on x and y qubit fields."""

    table: TruthTable
    mode: SubtractMode
    x_qubits: Tuple[int, ...]
    y_qubits: Tuple[int, ...]


@dataclass(frozen=True)
class ProgramStep:
    op: Union[GateOp, TableOp]
    clean: Tuple[int, ...]


@dataclass(frozen=True)
class Program:
    data: int
    ancilla: int
    cv_level: int
    steps: Tuple[ProgramStep, ...]

    @property
    def n_total(self) -> int:
        return self.data + self.ancilla


@dataclass(frozen=True)
class StepMetrics:
    ancilla_residual: float
    data_purity: float
    cv_level: int
    joint_cells: int
    norm2: float


@dataclass(frozen=True)
class ProcessorState:
    hybrid: HybridState
    data_count: int
    anc_count: int
    step_index: int
    history: Tuple[StepMetrics, ...] = field(default_factory=tuple)

    def data_qubits(self) -> range:
        return range(self.data_count)

    def ancilla_qubits(self) -> range:
        return range(self.data_count, self.data_count + self.anc_count)


@dataclass(frozen=True)
class ResourceReport:
    plain_reversible_ancillas: int
    cv_scheme_qubits: int
    cv_final_level: int
    joint_cells: int


def init(
    n_data: int,
    n_anc: int,
    data_state: RegisterState,
    cv_level: int = 0,
    max_cells: int = 1 << 22,
) -> ProcessorState:
    """Data register joined with zeroed ancillas and the unit-interval CV."""
    if data_state.n_qubits != n_data:
        raise ValidationError(
            f"data state has {data_state.n_qubits} qubits, expected {n_data}"
        )
    if n_anc < 0:
        raise ValidationError(f"ancilla count must be nonnegative, got {n_anc}")
    n_total = n_data + n_anc
    if (1 << n_total) * (1 << cv_level) > max_cells * 64:
        raise ResourceLimitError(
            f"joint table of 2^{n_total} rows at level {cv_level} exceeds limits"
        )
    anc_zero = np.zeros(1 << n_anc, dtype=np.complex128)
    anc_zero[0] = 1.0
    full = np.kron(anc_zero, data_state.amps)  # ancillas in the high bits
    return ProcessorState(
        hybrid=lift(RegisterState(n_total, full), indicator_unit(cv_level)),
        data_count=n_data,
        anc_count=n_anc,
        step_index=0,
    )


def _apply_gate(h: HybridState, op: GateOp, n_total: int) -> HybridState:
    name = op.name
    if any(not 0 <= q < n_total for q in op.targets):
        raise ValidationError(f"gate {name} targets {op.targets} outside [0, {n_total})")
    if name in SINGLE_QUBIT_GATES:
        if len(op.targets) != 1:
            raise ValidationError(f"gate {name} takes one target, got {op.targets}")
        return apply_qubit_gate(h, op.targets[0], SINGLE_QUBIT_GATES[name])
    if name not in TWO_QUBIT_GATES:
        raise ValidationError(f"unknown gate {name!r}")
    if len(op.targets) != 2 or op.targets[0] == op.targets[1]:
        raise ValidationError(f"gate {name} takes two distinct targets, got {op.targets}")
    a, b = op.targets
    idx = np.arange(1 << n_total)
    if name == "CNOT":
        perm = idx ^ (((idx >> a) & 1) << b)
        return apply_basis_permutation(h, perm)
    if name == "SWAP":
        bit_a, bit_b = (idx >> a) & 1, (idx >> b) & 1
        perm = idx & ~((1 << a) | (1 << b)) | (bit_b << a) | (bit_a << b)
        return apply_basis_permutation(h, perm)
    phases = 1.0 - 2.0 * (((idx >> a) & 1) & ((idx >> b) & 1))
    return apply_row_phases(h, phases)


def _apply_table(h: HybridState, op: TableOp, n_total: int) -> HybridState:
    perm = as_register_permutation(
        build_reversible(op.table, op.mode), list(op.x_qubits), list(op.y_qubits), n_total
    )
    return apply_basis_permutation(h, perm)


def _metrics(ps: ProcessorState) -> StepMetrics:
    h = ps.hybrid
    residual = 0.0
    if ps.anc_count:
        rows = np.arange(1 << h.n_qubits)
        anc_set = (rows >> ps.data_count) != 0
        a = h.amps[anc_set]
        residual = float(np.sum(a.real**2 + a.imag**2)) * h.width
    if ps.data_count:
        data_rho = hybrid_reduced_density(h, set(ps.data_qubits()))
        data_purity = purity(data_rho)
    else:
        data_purity = 1.0
    return StepMetrics(
        ancilla_residual=residual,
        data_purity=data_purity,
        cv_level=h.level,
        joint_cells=h.n_cells,
        norm2=h.norm2(),
    )


def run_step(
    ps: ProcessorState,
    step: ProgramStep,
    variant: FlipVariant = FlipVariant.OUTSIDE_UNIT,
    max_level: int = MAX_LEVEL_DEFAULT,
) -> Tuple[ProcessorState, StepMetrics]:
    """Apply the step's operation, then erase its listed ancillas."""
    n_total = ps.data_count + ps.anc_count
    anc_lo = ps.data_count
    for q in step.clean:
        if not anc_lo <= q < n_total:
            raise ValidationError(
                f"clean target {q} is not an ancilla (ancillas are [{anc_lo}, {n_total}))"
            )
    if isinstance(step.op, GateOp):
        h = _apply_gate(ps.hybrid, step.op, n_total)
    elif isinstance(step.op, TableOp):
        h = _apply_table(ps.hybrid, step.op, n_total)
    else:
        raise ValidationError(f"unknown op type {type(step.op).__name__}")
    for q in sorted(set(step.clean)):
        h = erase(h, q, variant, max_level=max_level)
        leftover = residual_weight(h, q)
        if leftover > 1e-12:
            raise ContractError(
                f"erasure left residual {leftover:.3e} on qubit {q}; internal bug"
            )
    ps2 = ProcessorState(
        hybrid=h,
        data_count=ps.data_count,
        anc_count=ps.anc_count,
        step_index=ps.step_index + 1,
        history=ps.history,
    )
    metrics = _metrics(ps2)
    ps2 = replace(ps2, history=ps.history + (metrics,))
    return ps2, metrics


def run_program(
    ps: ProcessorState,
    steps: Sequence[ProgramStep],
    variant: FlipVariant = FlipVariant.OUTSIDE_UNIT,
    max_level: int = MAX_LEVEL_DEFAULT,
) -> Tuple[ProcessorState, List[StepMetrics]]:
    trace: List[StepMetrics] = []
    for step in steps:
        ps, metrics = run_step(ps, step, variant, max_level=max_level)
        trace.append(metrics)
    return ps, trace


def resource_report(steps: Sequence[ProgramStep], cv_level: int = 0) -> ResourceReport:
    """Static accounting: a plain reversible design needs a fresh zeroed
    register per cleaned ancilla, forever; the CV scheme reuses a constant
    pool and pays one CV level per erasure instead."""
    total_cleans = sum(len(s.clean) for s in steps)
    pool = max((len(s.clean) for s in steps), default=0)
    final_level = cv_level + total_cleans
    return ResourceReport(
        plain_reversible_ancillas=total_cleans,
        cv_scheme_qubits=pool,
        cv_final_level=final_level,
        joint_cells=1 << final_level,
    )


# ---------------------------------------------------------------------------
# Program JSON ingestion.  Validation messages name the offending field by
# path, e.g. steps[2].op.gate.
# ---------------------------------------------------------------------------


def _expect_int(value, path: str, minimum: Optional[int] = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValidationError(f"{path}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ValidationError(f"{path}: must be >= {minimum}, got {value}")
    return value


def _expect_int_list(value, path: str) -> List[int]:
    if not isinstance(value, list):
        raise ValidationError(f"{path}: expected a list of integers, got {value!r}")
    out = []
    for i, v in enumerate(value):
        out.append(_expect_int(v, f"{path}[{i}]"))
    return out


def _parse_table_ref(value, path: str, base_dir: str) -> TruthTable:
    if isinstance(value, str):
        return named_table(value)
    if isinstance(value, dict):
        if "file" in value:
            ref = value["file"]
            if not isinstance(ref, str):
                raise ValidationError(f"{path}.file: expected a path string, got {ref!r}")
            return table_from_json(os.path.join(base_dir, ref))
        return table_from_dict(value)
    raise ValidationError(f"{path}: expected a name, inline table, or file reference")


def _parse_op(obj, path: str, n_total: int, base_dir: str) -> Union[GateOp, TableOp]:
    if not isinstance(obj, dict):
        raise ValidationError(f"{path}: expected an object, got {obj!r}")
    if "gate" in obj:
        name = obj["gate"]
        if not isinstance(name, str):
            raise ValidationError(f"{path}.gate: expected a string, got {name!r}")
        name = name.upper()
        if name not in SINGLE_QUBIT_GATES and name not in TWO_QUBIT_GATES:
            raise ValidationError(f"{path}.gate: unknown gate {name!r}")
        targets = _expect_int_list(obj.get("targets"), f"{path}.targets")
        for i, q in enumerate(targets):
            if not 0 <= q < n_total:
                raise ValidationError(
                    f"{path}.targets[{i}]: qubit {q} outside [0, {n_total})"
                )
        return GateOp(name, tuple(targets))
    if "table" in obj:
        try:
            table = _parse_table_ref(obj["table"], f"{path}.table", base_dir)
        except ValidationError as exc:
            raise ValidationError(f"{path}.table: {exc}") from exc
        mode_raw = obj.get("mode", "xor")
        try:
            mode = SubtractMode(mode_raw)
        except ValueError:
            raise ValidationError(
                f"{path}.mode: expected 'xor' or 'mod_sub', got {mode_raw!r}"
            ) from None
        x_qubits = _expect_int_list(obj.get("x_qubits"), f"{path}.x_qubits")
        y_qubits = _expect_int_list(obj.get("y_qubits"), f"{path}.y_qubits")
        for label, lst in (("x_qubits", x_qubits), ("y_qubits", y_qubits)):
            for i, q in enumerate(lst):
                if not 0 <= q < n_total:
                    raise ValidationError(
                        f"{path}.{label}[{i}]: qubit {q} outside [0, {n_total})"
                    )
        if len(x_qubits) != table.n_in or len(y_qubits) != table.m_out:
            raise ValidationError(
                f"{path}: table needs {table.n_in} x-qubits and {table.m_out} "
                f"y-qubits, got {len(x_qubits)} and {len(y_qubits)}"
            )
        if set(x_qubits) & set(y_qubits) or len(set(x_qubits)) != len(x_qubits) or len(
            set(y_qubits)
        ) != len(y_qubits):
            raise ValidationError(f"{path}: x_qubits and y_qubits must be disjoint")
        return TableOp(table, mode, tuple(x_qubits), tuple(y_qubits))
    raise ValidationError(f"{path}: op must contain either 'gate' or 'table'")


def parse_program(obj: dict, base_dir: str = ".") -> Program:
    """Validate and build a Program from its JSON object form."""
    if not isinstance(obj, dict):
        raise ValidationError(f"program: expected an object, got {type(obj).__name__}")
    data = _expect_int(obj.get("data"), "data", minimum=1)
    ancilla = _expect_int(obj.get("ancilla"), "ancilla", minimum=0)
    cv_level = _expect_int(obj.get("cv_level", 0), "cv_level", minimum=0)
    n_total = data + ancilla
    steps_raw = obj.get("steps")
    if not isinstance(steps_raw, list):
        raise ValidationError(f"steps: expected a list, got {steps_raw!r}")
    steps = []
    for i, s in enumerate(steps_raw):
        path = f"steps[{i}]"
        if not isinstance(s, dict):
            raise ValidationError(f"{path}: expected an object, got {s!r}")
        op = _parse_op(s.get("op"), f"{path}.op", n_total, base_dir)
        clean = _expect_int_list(s.get("clean", []), f"{path}.clean")
        for j, q in enumerate(clean):
            if not 0 <= q < n_total:
                raise ValidationError(f"{path}.clean[{j}]: qubit {q} outside [0, {n_total})")
            if q < data:
                raise ValidationError(
                    f"{path}.clean[{j}]: qubit {q} is a data qubit and may not be erased"
                )
        steps.append(ProgramStep(op, tuple(clean)))
    return Program(data, ancilla, cv_level, tuple(steps))


def load_program(path: str) -> Program:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    return parse_program(obj, base_dir=os.path.dirname(path) or ".")


def init_from_program(program: Program, data_basis: int = 0) -> ProcessorState:
    return init(
        program.data, program.ancilla, basis_state(program.data, data_basis), program.cv_level
    )
