"""Helstrom discrimination and finite-difference quantum Fisher information."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionError, NormalizationError, RangeError
from .hilbert import aligned_chord
from .metrics import d_fs, measurement_distance_l1
from .povm import Povm


@dataclass(frozen=True)
class DiscriminationResult:
    p_success: float
    trace_distance: float
    fs_distance: float
    optimal_povm: Povm
    l1_distance: float


def helstrom_povm(a, b, tol: float = 1e-12) -> Povm:
    """Two-outcome POVM guessing ``a`` on the non-negative eigenspace of ``|a><a| - |b><b|``.

    The kernel (everything outside span{a, b}) goes to the first effect.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape or a.ndim != 1:
        raise DimensionError(f"need two states of equal dimension, got {a.shape} and {b.shape}")
    diff = np.outer(a, a.conj()) - np.outer(b, b.conj())
    w, v = np.linalg.eigh(diff)
    neg = v[:, w < -tol]
    minus = neg @ neg.conj().T
    plus = np.eye(a.size) - minus
    return Povm(np.stack([plus, minus]), name="helstrom")


def helstrom(a, b) -> DiscriminationResult:
    """Optimal equal-prior discrimination of two pure states."""
    fs = float(d_fs(a, b))
    tr = float(np.sin(fs))
    povm = helstrom_povm(a, b)
    return DiscriminationResult(
        p_success=0.5 * (1.0 + tr),
        trace_distance=tr,
        fs_distance=fs,
        optimal_povm=povm,
        l1_distance=float(measurement_distance_l1(povm, a, b)),
    )


def fs_from_popt(p: float) -> float:
    """Invert the Helstrom relation: ``arcsin(2p - 1)``."""
    if not 0.5 <= p <= 1.0:
        raise RangeError(f"success probability must lie in [1/2, 1], got {p}")
    return float(np.arcsin(2.0 * p - 1.0))


@dataclass(frozen=True)
class QfiEstimate:
    theta: float
    step: float
    value: float
    bures_sq_over_step_sq: float

    @property
    def bures_check(self) -> float:
        """|d_B^2 / step^2 - F_Q / 4|; zero up to rounding by construction."""
        return abs(self.bures_sq_over_step_sq - self.value / 4.0)


def qfi_finite_difference(family: Callable[[float], np.ndarray], theta: float, step: float = 1e-4) -> QfiEstimate:
    """Quantum Fisher information from one forward step, ``8 (1 - |<psi_t|psi_{t+h}>|) / h^2``.

    The factor 8 makes the estimate the coefficient in ``d_B^2 = F_Q h^2 / 4``.
    """
    if not 1e-6 <= step <= 1e-2:
        raise RangeError(f"step must lie in [1e-6, 1e-2], got {step}")
    a = np.asarray(family(theta), dtype=complex)
    b = np.asarray(family(theta + step), dtype=complex)
    for label, v in (("theta", a), ("theta+step", b)):
        dev = abs(np.linalg.norm(v) - 1.0)
        if dev > 1e-9:
            raise NormalizationError(f"family output at {label} has norm error {dev:.3e}")
    gap = 0.5 * float(aligned_chord(a, b)) ** 2  # 1 - |<a|b>| without cancellation
    value = max(8.0 * gap / step**2, 0.0)
    return QfiEstimate(theta, step, value, 2.0 * gap / step**2)


def qubit_rotation(theta: float) -> np.ndarray:
    return np.array([np.cos(theta / 2), np.sin(theta / 2)], dtype=complex)


def qubit_phase(theta: float) -> np.ndarray:
    return np.array([1.0, np.exp(1j * theta)], dtype=complex) / np.sqrt(2)


def constant_family(theta: float) -> np.ndarray:
    return np.array([1.0, 0.0], dtype=complex)


FAMILIES = {
    "qubit-rotation": qubit_rotation,
    "qubit-phase": qubit_phase,
    "constant": constant_family,
}
