"""Classical truth tables and their reversible lifts.

An irreversible function f on n_in bits becomes the involution
(x, y) -> (x, f(x) (-) y) on a widened register, where (-) is bitwise
XOR or subtraction mod 2^m_out.  Both choices make the lift its own
inverse, so applying it twice uncomputes cleanly.
"""
from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, ResourceLimitError, ValidationError

MAX_PAIR_BITS = 20


class SubtractMode(enum.Enum):
    XOR = "xor"
    MOD_SUB = "mod_sub"


@dataclass(frozen=True, eq=False)
class TruthTable:
    """f: [0, 2^n_in) -> [0, 2^m_out) as an output vector indexed by x."""

    n_in: int
    m_out: int
    outputs: np.ndarray

    def __post_init__(self):
        if self.n_in < 0:
            raise ValidationError(f"n_in must be nonnegative, got {self.n_in}")
        if self.m_out < 1:
            raise ValidationError(f"m_out must be at least 1, got {self.m_out}")
        arr = np.array(self.outputs, dtype=np.int64)
        if arr.ndim != 1 or arr.size != 1 << self.n_in:
            raise ValidationError(
                f"outputs must have length 2^{self.n_in} = {1 << self.n_in}, got {arr.size}"
            )
        bad = np.flatnonzero((arr < 0) | (arr >= 1 << self.m_out))
        if bad.size:
            i = int(bad[0])
            raise ValidationError(
                f"outputs[{i}] = {int(arr[i])} outside [0, {1 << self.m_out})"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "outputs", arr)

    def __call__(self, x: int) -> int:
        if not 0 <= x < 1 << self.n_in:
            raise DomainError(f"input {x} outside [0, {1 << self.n_in})")
        return int(self.outputs[x])


def table_from_dict(d: dict) -> TruthTable:
    """Build a TruthTable from the JSON object form
    {"n_in": int, "m_out": int, "outputs": [int, ...]}."""
    if not isinstance(d, dict):
        raise ValidationError(f"truth table must be a JSON object, got {type(d).__name__}")
    for key in ("n_in", "m_out", "outputs"):
        if key not in d:
            raise ValidationError(f"truth table missing required key '{key}'")
    n_in, m_out, outputs = d["n_in"], d["m_out"], d["outputs"]
    if not isinstance(n_in, int) or isinstance(n_in, bool):
        raise ValidationError(f"n_in must be an integer, got {n_in!r}")
    if not isinstance(m_out, int) or isinstance(m_out, bool):
        raise ValidationError(f"m_out must be an integer, got {m_out!r}")
    if not isinstance(outputs, list):
        raise ValidationError(f"outputs must be a list, got {type(outputs).__name__}")
    for i, v in enumerate(outputs):
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValidationError(f"outputs[{i}] must be an integer, got {v!r}")
    return TruthTable(n_in, m_out, np.array(outputs, dtype=np.int64))


def table_from_json(path: str) -> TruthTable:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    return table_from_dict(data)


_ADDER_RE = re.compile(r"^ADDER\((\d+)\)$")
_CONST_RE = re.compile(r"^CONST\((\d+),(\d+),(\d+)\)$")


def named_table(name: str) -> TruthTable:
    """Library tables: AND, OR, XOR (two inputs, one output), ADDER(k)
    (two k-bit addends, k+1-bit sum), CONST(n_in,m_out,value)."""
    key = name.strip().upper().replace(" ", "")
    if key == "AND":
        return TruthTable(2, 1, np.array([0, 0, 0, 1]))
    if key == "OR":
        return TruthTable(2, 1, np.array([0, 1, 1, 1]))
    if key == "XOR":
        return TruthTable(2, 1, np.array([0, 1, 1, 0]))
    m = _ADDER_RE.match(key)
    if m:
        k = int(m.group(1))
        if k < 1 or 2 * k + (k + 1) > MAX_PAIR_BITS:
            raise ValidationError(f"ADDER({k}) outside supported sizes")
        x = np.arange(1 << (2 * k))
        return TruthTable(2 * k, k + 1, (x & ((1 << k) - 1)) + (x >> k))
    m = _CONST_RE.match(key)
    if m:
        n_in, m_out, value = (int(g) for g in m.groups())
        if value >= 1 << m_out:
            raise ValidationError(f"CONST value {value} does not fit in {m_out} bits")
        return TruthTable(n_in, m_out, np.full(1 << n_in, value))
    raise ValidationError(
        f"unknown table name {name!r}; expected AND, OR, XOR, ADDER(k) or CONST(n,m,v)"
    )


def eval_forward(tt: TruthTable, mode: SubtractMode, x: int, y: int) -> Tuple[int, int]:
    """(x, y) -> (x, f(x) (-) y) by direct arithmetic."""
    if not 0 <= x < 1 << tt.n_in:
        raise DomainError(f"x = {x} outside [0, {1 << tt.n_in})")
    if not 0 <= y < 1 << tt.m_out:
        raise DomainError(f"y = {y} outside [0, {1 << tt.m_out})")
    f = int(tt.outputs[x])
    if mode is SubtractMode.XOR:
        return x, f ^ y
    if mode is SubtractMode.MOD_SUB:
        return x, (f - y) % (1 << tt.m_out)
    raise DomainError(f"unknown mode {mode!r}")


@dataclass(frozen=True, eq=False)
class ReversiblePermutation:
    """Bijection on (x, y) pairs fixing x: y_map[x][y] gives the new y."""

    n_in: int
    m_out: int
    mode: SubtractMode
    y_map: np.ndarray

    def __post_init__(self):
        arr = np.array(self.y_map, dtype=np.int64)
        shape = (1 << self.n_in, 1 << self.m_out)
        if arr.shape != shape:
            raise ValidationError(f"y_map shape {arr.shape} does not match {shape}")
        m = 1 << self.m_out
        if np.any(arr < 0) or np.any(arr >= m):
            raise ValidationError("y_map contains out-of-range values")
        if not np.all(np.sort(arr, axis=1) == np.arange(m)):
            x_bad = int(np.flatnonzero(np.any(np.sort(arr, axis=1) != np.arange(m), axis=1))[0])
            raise ValidationError(f"y_map row x = {x_bad} is not a bijection on y")
        arr.setflags(write=False)
        object.__setattr__(self, "y_map", arr)

    def apply(self, x: int, y: int) -> Tuple[int, int]:
        if not 0 <= x < 1 << self.n_in:
            raise DomainError(f"x = {x} outside [0, {1 << self.n_in})")
        if not 0 <= y < 1 << self.m_out:
            raise DomainError(f"y = {y} outside [0, {1 << self.m_out})")
        return x, int(self.y_map[x, y])


def build_reversible(tt: TruthTable, mode: SubtractMode) -> ReversiblePermutation:
    """Lift the table to the involution (x, y) -> (x, f(x) (-) y)."""
    if tt.n_in + tt.m_out > MAX_PAIR_BITS:
        raise ResourceLimitError(
            f"pair register of {tt.n_in + tt.m_out} bits exceeds the "
            f"{MAX_PAIR_BITS}-bit exhaustive-construction limit"
        )
    y = np.arange(1 << tt.m_out)
    f = tt.outputs[:, None]
    if mode is SubtractMode.XOR:
        y_map = f ^ y
    elif mode is SubtractMode.MOD_SUB:
        y_map = (f - y) % (1 << tt.m_out)
    else:
        raise DomainError(f"unknown mode {mode!r}")
    return ReversiblePermutation(tt.n_in, tt.m_out, mode, y_map)


def check_involution(p: ReversiblePermutation) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """Exhaustively verify p(p(x, y)) = (x, y); report a counterexample."""
    twice = np.take_along_axis(p.y_map, p.y_map, axis=1)
    bad = np.argwhere(twice != np.arange(1 << p.m_out))
    if bad.size:
        x, y = int(bad[0][0]), int(bad[0][1])
        return False, (x, y)
    return True, None


def as_register_permutation(
    p: ReversiblePermutation,
    x_qubits: Sequence[int],
    y_qubits: Sequence[int],
    n_total: int,
) -> np.ndarray:
    """Embed the pair map into an n_total-qubit basis permutation.

    x_qubits[j] holds bit j of x (least significant first); likewise for
    y.  Unlisted qubits are spectators.
    """
    x_qubits = [int(q) for q in x_qubits]
    y_qubits = [int(q) for q in y_qubits]
    if len(x_qubits) != p.n_in or len(y_qubits) != p.m_out:
        raise ValidationError(
            f"need {p.n_in} x-qubits and {p.m_out} y-qubits, "
            f"got {len(x_qubits)} and {len(y_qubits)}"
        )
    all_q = x_qubits + y_qubits
    if len(set(all_q)) != len(all_q):
        raise ValidationError(f"x and y qubit lists overlap: {sorted(all_q)}")
    if any(q < 0 or q >= n_total for q in all_q):
        raise ValidationError(f"qubit index outside [0, {n_total}) in {sorted(all_q)}")
    idx = np.arange(1 << n_total)
    x = np.zeros_like(idx)
    for j, q in enumerate(x_qubits):
        x |= ((idx >> q) & 1) << j
    y = np.zeros_like(idx)
    for j, q in enumerate(y_qubits):
        y |= ((idx >> q) & 1) << j
    y2 = p.y_map[x, y]
    out = idx
    for j, q in enumerate(y_qubits):
        out = (out & ~(1 << q)) | (((y2 >> j) & 1) << q)
    return out
