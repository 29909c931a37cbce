"""Exact piecewise-constant wavefunctions on dyadic cells.

A wave of level ``l`` is constant on half-open cells of width ``2**-l``
whose boundaries sit on the dyadic grid.  Cell ``k`` of a wave with
integer offset ``o`` covers ``[(o+k)*w, (o+k+1)*w)`` with ``w = 2**-l``.
Everything outside the stored cells is zero.  Translation by integers,
projection onto integer intervals, and the squeeze ``psi(x) -> sqrt(2)
psi(2x)`` all map this class to itself with no approximation error,
which is what makes the representation useful as an exact backend.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from .errors import DomainError, ResourceLimitError, ValidationError

MAX_LEVEL_DEFAULT = 24
MAX_CELLS_DEFAULT = 1 << 22

SQRT2 = float(np.sqrt(2.0))


@dataclass(frozen=True, eq=False)
class DyadicWave:
    """Canonical piecewise-constant complex wave on dyadic cells."""

    level: int
    offset: int
    coeffs: np.ndarray

    def __post_init__(self):
        if not isinstance(self.level, (int, np.integer)) or self.level < 0:
            raise DomainError(f"level must be a nonnegative integer, got {self.level!r}")
        if not isinstance(self.offset, (int, np.integer)):
            raise DomainError(f"offset must be an integer, got {self.offset!r}")
        arr = np.array(self.coeffs, dtype=np.complex128)
        if arr.ndim != 1 or arr.size < 1:
            raise ValidationError(f"coeffs must be a nonempty vector, got shape {arr.shape}")
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValidationError("coeffs must be finite (no NaN/Inf)")
        # Canonical form: exact-zero boundary cells trimmed so equal
        # functions at equal level compare equal.  The zero function is a
        # single zero cell pinned at offset 0.
        nz = np.flatnonzero(arr)
        if nz.size == 0:
            offset = 0
            arr = np.zeros(1, dtype=np.complex128)
        else:
            lo, hi = int(nz[0]), int(nz[-1]) + 1
            offset = int(self.offset) + lo
            arr = arr[lo:hi].copy()
        arr.setflags(write=False)
        object.__setattr__(self, "level", int(self.level))
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "coeffs", arr)

    # Equality is representation equality: same level, offset and exact
    # cell values.  Canonicalization above makes this decide function
    # equality for waves expressed at the same level.
    def __eq__(self, other) -> bool:
        if not isinstance(other, DyadicWave):
            return NotImplemented
        return (
            self.level == other.level
            and self.offset == other.offset
            and self.coeffs.shape == other.coeffs.shape
            and bool(np.all(self.coeffs == other.coeffs))
        )

    __hash__ = None  # mutable-free but deliberately unhashable

    @property
    def n_cells(self) -> int:
        return self.coeffs.size

    @property
    def width(self) -> float:
        return 2.0 ** (-self.level)

    @property
    def x_min(self) -> float:
        return self.offset * self.width

    @property
    def x_max(self) -> float:
        return (self.offset + self.n_cells) * self.width

    def is_zero(self) -> bool:
        return bool(np.all(self.coeffs == 0))

    def support_measure(self) -> float:
        """Total length of cells carrying a nonzero value."""
        return float(np.count_nonzero(self.coeffs)) * self.width


def indicator_unit(level: int) -> DyadicWave:
    """The normalized indicator of [0,1) expressed at the given level."""
    if level < 0:
        raise DomainError(f"level must be nonnegative, got {level}")
    return DyadicWave(level, 0, np.ones(1 << level, dtype=np.complex128))


def refine(w: DyadicWave, target: int, max_cells: int = MAX_CELLS_DEFAULT) -> DyadicWave:
    """Re-express at a finer level; pointwise identical, coarsening refused."""
    if target < w.level:
        raise DomainError(
            f"cannot coarsen from level {w.level} to {target}; coarsening is lossy"
        )
    factor = 1 << (target - w.level)
    if w.n_cells * factor > max_cells:
        raise ResourceLimitError(
            f"refining to level {target} needs {w.n_cells * factor} cells (limit {max_cells})"
        )
    return DyadicWave(target, w.offset * factor, np.repeat(w.coeffs, factor))


def translate_int(w: DyadicWave, t: int) -> DyadicWave:
    """Shift by an integer number of x-units: psi(x) -> psi(x - t).  Exact."""
    if not isinstance(t, (int, np.integer)):
        raise DomainError(f"translation amount must be an integer, got {t!r}")
    return DyadicWave(w.level, w.offset + int(t) * (1 << w.level), w.coeffs)


def project(w: DyadicWave, a: int, b: int) -> DyadicWave:
    """Zero every cell not fully inside [a, b).  Integer endpoints align with
    cell boundaries at every level, so this is exact and idempotent."""
    if not (isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer))):
        raise DomainError(f"projection endpoints must be integers, got {a!r}, {b!r}")
    if a >= b:
        raise DomainError(f"projection interval [{a}, {b}) is empty")
    scale = 1 << w.level
    idx = w.offset + np.arange(w.n_cells)
    keep = (idx >= a * scale) & (idx < b * scale)
    return DyadicWave(w.level, w.offset, np.where(keep, w.coeffs, 0.0))


def squeeze(w: DyadicWave, max_level: int = MAX_LEVEL_DEFAULT) -> DyadicWave:
    """The dilation psi(x) -> sqrt(2)*psi(2x): one level finer, same offset,
    coefficients scaled by sqrt(2).  Norm-preserving and exact."""
    if w.level + 1 > max_level:
        raise ResourceLimitError(f"squeeze would exceed max level {max_level}")
    return DyadicWave(w.level + 1, w.offset, w.coeffs * SQRT2)


def norm2(w: DyadicWave) -> float:
    """Squared L2 norm: 2^-level * sum |c|^2."""
    c = w.coeffs
    return float(np.sum(c.real**2 + c.imag**2)) * w.width


def aligned_pair(w1: DyadicWave, w2: DyadicWave) -> Tuple[int, int, np.ndarray, np.ndarray]:
    """Express both waves at a common level and offset (the joint hull).

    Returns (level, offset, c1, c2) with equal-length coefficient vectors.
    """
    level = max(w1.level, w2.level)
    a, b = refine(w1, level), refine(w2, level)
    lo = min(a.offset, b.offset)
    hi = max(a.offset + a.n_cells, b.offset + b.n_cells)
    c1 = np.zeros(hi - lo, dtype=np.complex128)
    c2 = np.zeros(hi - lo, dtype=np.complex128)
    c1[a.offset - lo : a.offset - lo + a.n_cells] = a.coeffs
    c2[b.offset - lo : b.offset - lo + b.n_cells] = b.coeffs
    return level, lo, c1, c2


def inner(w1: DyadicWave, w2: DyadicWave) -> complex:
    """L2 inner product, conjugate-linear in the first argument."""
    level, _, c1, c2 = aligned_pair(w1, w2)
    return complex(np.sum(np.conj(c1) * c2) * 2.0 ** (-level))


def max_abs_diff(w1: DyadicWave, w2: DyadicWave) -> float:
    """Largest pointwise difference between two waves viewed as functions."""
    _, _, c1, c2 = aligned_pair(w1, w2)
    return float(np.max(np.abs(c1 - c2))) if c1.size else 0.0


def value_at(w: DyadicWave, x: float) -> complex:
    """Pointwise value with half-open cell ownership; zero outside support."""
    k = int(np.floor(x * (1 << w.level))) - w.offset
    if 0 <= k < w.n_cells:
        return complex(w.coeffs[k])
    return 0.0 + 0.0j


def samples(w: DyadicWave, pts_per_cell: int) -> List[Tuple[float, complex]]:
    """Step-function samples over the stored cells, for plotting/dumps."""
    if pts_per_cell < 1:
        raise DomainError(f"pts_per_cell must be >= 1, got {pts_per_cell}")
    out: List[Tuple[float, complex]] = []
    step = w.width / pts_per_cell
    for k in range(w.n_cells):
        left = (w.offset + k) * w.width
        for i in range(pts_per_cell):
            out.append((left + i * step, complex(w.coeffs[k])))
    return out


def from_function(f: Callable[[float], complex], level: int, o_min: int, o_max: int) -> DyadicWave:
    """Sample a pointwise function at cell midpoints over [o_min, o_max) x-units.

    Convenience for building test fixtures; exact only for inputs already
    constant on level-``level`` cells.
    """
    if o_min >= o_max:
        raise DomainError(f"empty interval [{o_min}, {o_max})")
    scale = 1 << level
    w = 2.0 ** (-level)
    idx = np.arange(o_min * scale, o_max * scale)
    vals = np.array([f((i + 0.5) * w) for i in idx], dtype=np.complex128)
    return DyadicWave(level, o_min * scale, vals)
