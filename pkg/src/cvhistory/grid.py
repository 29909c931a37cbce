"""Uniformly sampled wavefunctions on a periodic window.

Approximate backend for the continuous variable.  Translation is realized
both as an index shift and in its momentum-exponential form through the
discrete Fourier transform; the squeeze is realized both as even-index
decimation (exact on piecewise-constant input) and through the matrix
exponential of the dilation generator (x p + p x)/2 (accurate on smooth
input).  Used to cross-validate the exact dyadic backend.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg

from .dyadic import DyadicWave, value_at
from .errors import DomainError, ValidationError

# Relative magnitude below which a sample is treated as numerically zero
# when locating support (spectral ops leave ~1e-16 residue everywhere).
SUPPORT_EPS = 1e-13


@dataclass(frozen=True, eq=False)
class GridWave:
    """Complex samples on the periodic window [x_min, x_min + N*h)."""

    x_min: float
    h: float
    samples: np.ndarray

    def __post_init__(self):
        if not (self.h > 0 and np.isfinite(self.h)):
            raise ValidationError(f"grid step must be positive and finite, got {self.h}")
        arr = np.array(self.samples, dtype=np.complex128)
        if arr.ndim != 1:
            raise ValidationError(f"samples must be one-dimensional, got shape {arr.shape}")
        n = arr.size
        if n < 2 or (n & (n - 1)) != 0:
            raise ValidationError(f"sample count must be a power of two >= 2, got {n}")
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValidationError("samples must be finite (no NaN/Inf)")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def x_max(self) -> float:
        return self.x_min + self.n * self.h

    def positions(self) -> np.ndarray:
        return self.x_min + self.h * np.arange(self.n)

    def norm2(self) -> float:
        s = self.samples
        return float(np.sum(s.real**2 + s.imag**2)) * self.h


@dataclass(frozen=True)
class ErrorReport:
    """Pointwise and L2 discrepancy between two wave representations."""

    max_abs_err: float
    l2_err: float


def sample_function(f: Callable[[float], complex], x_min: float, h: float, N: int) -> GridWave:
    """Tabulate f on the grid: samples[j] = f(x_min + j*h)."""
    if N < 2 or (N & (N - 1)) != 0:
        raise ValidationError(f"N must be a power of two >= 2, got {N}")
    if not (h > 0 and np.isfinite(h)):
        raise ValidationError(f"grid step must be positive and finite, got {h}")
    xs = x_min + h * np.arange(N)
    return GridWave(x_min, h, np.array([f(float(x)) for x in xs], dtype=np.complex128))


def _samples_per_unit(g: GridWave, t: float, what: str) -> int:
    """Number of grid samples corresponding to a shift of t x-units."""
    raw = t / g.h
    n = int(round(raw))
    if abs(raw - n) > 1e-9:
        raise DomainError(
            f"{what} of {t} x-units is {raw} samples, not an integer multiple of the grid step"
        )
    return n


def translate_shift(g: GridWave, t: int) -> GridWave:
    """psi(x) -> psi(x - t) as an exact circular index shift."""
    if not isinstance(t, (int, np.integer)):
        raise DomainError(f"translate_shift takes an integer number of x-units, got {t!r}")
    n = _samples_per_unit(g, float(t), "shift")
    return GridWave(g.x_min, g.h, np.roll(g.samples, n))


def translate_spectral(g: GridWave, a: float) -> GridWave:
    """psi(x) -> psi(x - a) via phase multiplication in the Fourier domain."""
    k = 2.0 * np.pi * np.fft.fftfreq(g.n, d=g.h)
    shifted = np.fft.ifft(np.fft.fft(g.samples) * np.exp(-1j * k * a))
    return GridWave(g.x_min, g.h, shifted)


def project_grid(g: GridWave, a: float, b: float) -> GridWave:
    """Zero samples outside [a, b); half-open to match the cell convention."""
    if not a < b:
        raise DomainError(f"projection interval [{a}, {b}) is empty")
    xs = g.positions()
    keep = (xs >= a) & (xs < b)
    return GridWave(g.x_min, g.h, np.where(keep, g.samples, 0.0))


def _support_bounds(g: GridWave):
    """Index range [lo, hi] of samples above the relative zero threshold."""
    mags = np.abs(g.samples)
    peak = float(mags.max())
    if peak == 0.0:
        return None
    nz = np.flatnonzero(mags > SUPPORT_EPS * peak)
    if nz.size == 0:
        return None
    return int(nz[0]), int(nz[-1])


def squeeze_resample(g: GridWave) -> GridWave:
    """sqrt(2)*psi(2x) by reading even grid positions; exact when psi is
    constant on cells of width >= 2h.  The output reuses the same window."""
    x0_idx = _samples_per_unit(g, -g.x_min, "window origin offset")
    bounds = _support_bounds(g)
    if bounds is not None:
        lo, hi = bounds
        xs_half = ((np.array([lo, hi]) - x0_idx) * g.h) / 2.0
        if xs_half[0] < g.x_min or xs_half[1] >= g.x_max:
            raise DomainError(
                f"halved support [{xs_half[0]}, {xs_half[1]}] escapes the window "
                f"[{g.x_min}, {g.x_max})"
            )
    src = -x0_idx + 2 * np.arange(g.n)  # grid index holding psi(2*x_j)
    valid = (src >= 0) & (src < g.n)
    out = np.zeros(g.n, dtype=np.complex128)
    out[valid] = np.sqrt(2.0) * g.samples[src[valid]]
    return GridWave(g.x_min, g.h, out)


def dilation_generator(g: GridWave) -> GridWave:
    """sqrt(2)*psi(2x) via the matrix exponential of i*ln2/2*(XP + PX).

    X is the diagonal of sample positions and P the spectral derivative
    matrix.  Accurate for smooth waves supported well inside the window;
    accuracy degrades silently on discontinuous input.
    """
    n = g.n
    x = g.positions()
    k = 2.0 * np.pi * np.fft.fftfreq(n, d=g.h)
    f = np.fft.fft(np.eye(n), axis=0)
    p = np.fft.ifft(k[:, None] * f, axis=0)
    xp = x[:, None] * p
    gen = xp + xp.conj().T  # PX = (XP)^dagger since X real diagonal, P Hermitian
    u = scipy.linalg.expm(1j * (np.log(2.0) / 2.0) * gen)
    return GridWave(g.x_min, g.h, u @ g.samples)


def compare_to_dyadic(g: GridWave, w: DyadicWave) -> ErrorReport:
    """Pointwise comparison of grid samples against a dyadic wave."""
    if g.h > w.width + 1e-15:
        raise DomainError(
            f"grid step {g.h} coarser than dyadic cell width {w.width}; comparison undefined"
        )
    ref = np.array([value_at(w, float(x)) for x in g.positions()], dtype=np.complex128)
    diff = g.samples - ref
    return ErrorReport(
        max_abs_err=float(np.max(np.abs(diff))),
        l2_err=float(np.sqrt(g.h * np.sum(diff.real**2 + diff.imag**2))),
    )
