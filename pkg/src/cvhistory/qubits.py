"""Dense state-vector simulation of small qubit registers.

Basis convention used across the whole package: qubit 0 is the least
significant bit of the basis index, so ``|q_{n-1} ... q_1 q_0>`` lives at
index ``sum(q_i << i)``.  States are immutable values; every operation
returns a new state.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ValidationError

NORM_TOL = 1e-12

# Common single-qubit gate matrices.
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S = np.array([[1, 0], [0, 1j]], dtype=complex)
T = np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex)


def _as_complex_vector(values) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValidationError(f"amplitude data must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ValidationError("amplitudes must be finite (no NaN/Inf)")
    return arr


@dataclass(frozen=True, eq=False)
class RegisterState:
    """Immutable amplitude vector over the 2^n computational basis states."""

    n_qubits: int
    amps: np.ndarray

    def __post_init__(self):
        if self.n_qubits < 0:
            raise DomainError(f"n_qubits must be nonnegative, got {self.n_qubits}")
        arr = _as_complex_vector(self.amps)
        if arr.size != 1 << self.n_qubits:
            raise ValidationError(
                f"amplitude vector has length {arr.size}, expected {1 << self.n_qubits}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "amps", arr)

    def norm2(self) -> float:
        return float(np.real(np.vdot(self.amps, self.amps)))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm2() - 1.0) <= tol


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Reduced density matrix over a subset of qubits."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.complex128)
        if arr.shape != (self.dim, self.dim):
            raise ValidationError(f"entries shape {arr.shape} does not match dim {self.dim}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    def validate(self, tol: float = NORM_TOL, eig_floor: float = -1e-10) -> None:
        """Raise unless Hermitian, unit trace, and positive within tolerances."""
        rho = self.entries
        if not np.all(np.isfinite(rho.view(np.float64))):
            raise ValidationError("density matrix has non-finite entries")
        herm_err = float(np.max(np.abs(rho - rho.conj().T)))
        if herm_err > tol:
            raise ValidationError(f"density matrix not Hermitian (error {herm_err:.3e})")
        trace_err = abs(complex(np.trace(rho)) - 1.0)
        if trace_err > tol:
            raise ValidationError(f"density matrix trace deviates from 1 by {trace_err:.3e}")
        eig_min = float(np.min(np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)))
        if eig_min < eig_floor:
            raise ValidationError(f"density matrix has negative eigenvalue {eig_min:.3e}")


def basis_state(n_qubits: int, index: int) -> RegisterState:
    """Computational basis state |index> on n qubits."""
    if n_qubits < 0:
        raise DomainError(f"n_qubits must be nonnegative, got {n_qubits}")
    size = 1 << n_qubits
    if not 0 <= index < size:
        raise DomainError(f"basis index {index} out of range [0, {size})")
    amps = np.zeros(size, dtype=np.complex128)
    amps[index] = 1.0
    return RegisterState(n_qubits, amps)


def is_unitary(u: np.ndarray, tol: float = NORM_TOL) -> bool:
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def _apply_single_qubit_kernel(amps: np.ndarray, n_qubits: int, q: int, u: np.ndarray) -> np.ndarray:
    """Apply a 2x2 matrix on qubit ``q`` of an array whose leading axis is the basis index.

    Works for plain state vectors (shape (2^n,)) and for joint tables with
    trailing axes (shape (2^n, ...)); trailing axes are carried along.
    """
    shape = amps.shape
    view = amps.reshape(1 << (n_qubits - 1 - q), 2, -1)
    out = np.einsum("ab,hbt->hat", u, view)
    return out.reshape(shape)


def _apply_permutation_kernel(amps: np.ndarray, perm: np.ndarray) -> np.ndarray:
    """Relocate rows: out[perm[i]] = amps[i]."""
    out = np.empty_like(amps)
    out[perm] = amps
    return out


def _check_permutation(perm, size: int) -> np.ndarray:
    p = np.asarray(perm, dtype=np.int64)
    if p.shape != (size,):
        raise ValidationError(f"permutation has shape {p.shape}, expected ({size},)")
    if np.any(p < 0) or np.any(p >= size):
        raise ValidationError("permutation contains out-of-range entries")
    counts = np.bincount(p, minlength=size)
    if np.any(counts != 1):
        bad = int(np.argwhere(counts != 1)[0][0])
        raise ValidationError(f"map is not a bijection: image value {bad} hit {counts[bad]} times")
    return p


def apply_single_qubit(state: RegisterState, q: int, u: np.ndarray) -> RegisterState:
    """Apply a single-qubit unitary ``u`` on qubit ``q``."""
    if not 0 <= q < state.n_qubits:
        raise DomainError(f"qubit index {q} out of range for {state.n_qubits} qubits")
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ValidationError(f"single-qubit gate must be 2x2, got {u.shape}")
    if not is_unitary(u):
        raise ValidationError("gate matrix is not unitary within 1e-12")
    return RegisterState(state.n_qubits, _apply_single_qubit_kernel(state.amps, state.n_qubits, q, u))


def apply_permutation(state: RegisterState, perm: Sequence[int] | np.ndarray) -> RegisterState:
    """Relabel basis states: amplitude at i moves to perm[i]."""
    p = _check_permutation(perm, state.amps.size)
    return RegisterState(state.n_qubits, _apply_permutation_kernel(state.amps, p))


def reduced_density(state: RegisterState, keep: Iterable[int]) -> DensityMatrix:
    """Partial trace onto the qubits in ``keep``.

    The reduced basis index uses the kept qubits in ascending order, the
    smallest kept qubit being its least significant bit.
    """
    keep_sorted = sorted(set(keep))
    if not keep_sorted:
        raise DomainError("keep set must not be empty")
    n = state.n_qubits
    if keep_sorted[0] < 0 or keep_sorted[-1] >= n:
        raise DomainError(f"keep set {keep_sorted} out of range for {n} qubits")
    psi = state.amps.reshape((2,) * n)
    traced_axes = tuple(n - 1 - q for q in range(n) if q not in set(keep_sorted))
    rho = np.tensordot(psi, psi.conj(), axes=(traced_axes, traced_axes))
    d = 1 << len(keep_sorted)
    return DensityMatrix(d, rho.reshape(d, d))


def trace_out(entries: np.ndarray, n_qubits: int, keep: Iterable[int]) -> DensityMatrix:
    """Partial trace of a 2^n x 2^n density matrix onto the qubits in ``keep``."""
    keep_sorted = sorted(set(keep))
    if not keep_sorted:
        raise DomainError("keep set must not be empty")
    if keep_sorted[0] < 0 or keep_sorted[-1] >= n_qubits:
        raise DomainError(f"keep set {keep_sorted} out of range for {n_qubits} qubits")
    t = np.asarray(entries, dtype=np.complex128).reshape((2,) * (2 * n_qubits))
    # Row axis of qubit q is n-1-q, column axis is 2n-1-q.  Tracing a qubit
    # means giving those two axes the same einsum subscript.
    subs = list(range(2 * n_qubits))
    keep_set = set(keep_sorted)
    for q in range(n_qubits):
        if q not in keep_set:
            subs[2 * n_qubits - 1 - q] = subs[n_qubits - 1 - q]
    keep_desc = sorted(keep_sorted, reverse=True)
    out_subs = [n_qubits - 1 - q for q in keep_desc] + [2 * n_qubits - 1 - q for q in keep_desc]
    rho = np.einsum(t, subs, out_subs)
    d = 1 << len(keep_sorted)
    return DensityMatrix(d, rho.reshape(d, d))


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2); 1 for pure states, 1/dim for the maximally mixed state."""
    return float(np.real(np.trace(rho.entries @ rho.entries)))
