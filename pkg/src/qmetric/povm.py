"""Finite POVMs and the outcome distributions they induce on pure states."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidPovm
from .hilbert import TOL_EIG

TOL_POVM = 1e-10


@dataclass(frozen=True, eq=False)
class Povm:
    """Effects ``E_m = M_m^dagger M_m`` stacked as an array of shape ``(k, dim, dim)``."""

    effects: np.ndarray
    name: str = "povm"

    def __post_init__(self):
        e = np.asarray(self.effects, dtype=complex)
        if e.ndim != 3 or e.shape[1] != e.shape[2] or e.shape[0] < 1:
            raise InvalidPovm(f"effects must have shape (k, d, d), got {e.shape}")
        herm = np.max(np.abs(e - np.conj(np.swapaxes(e, 1, 2))))
        if herm > TOL_POVM:
            raise InvalidPovm(f"effect not Hermitian (deviation {herm:.3e})")
        lowest = np.min(np.linalg.eigvalsh(e))
        if lowest < -TOL_EIG:
            raise InvalidPovm(f"effect has negative eigenvalue {lowest:.3e}")
        completeness = np.max(np.abs(e.sum(axis=0) - np.eye(e.shape[1])))
        if completeness > TOL_POVM:
            raise InvalidPovm(f"effects do not sum to identity (deviation {completeness:.3e})")
        object.__setattr__(self, "effects", e)

    @property
    def dim(self) -> int:
        return self.effects.shape[1]

    @property
    def outcomes(self) -> int:
        return self.effects.shape[0]

    def probabilities(self, states) -> np.ndarray:
        """Outcome distribution ``<psi|E_m|psi>`` for a state or a stack of states."""
        states = np.asarray(states, dtype=complex)
        if states.shape[-1] != self.dim:
            raise DimensionError(f"POVM acts on dim {self.dim}, state has dim {states.shape[-1]}")
        return effect_probabilities(self.effects, states)

    def is_informationally_complete(self) -> bool:
        """True when the effects span the full space of Hermitian operators."""
        flat = self.effects.reshape(self.outcomes, -1)
        real = np.concatenate([flat.real, flat.imag], axis=1)
        return int(np.linalg.matrix_rank(real, tol=1e-9)) == self.dim ** 2

    def commutes(self, tol: float = 1e-10) -> bool:
        e = self.effects
        comm = np.einsum("aij,bjk->abik", e, e) - np.einsum("bij,ajk->abik", e, e)
        return bool(np.max(np.abs(comm)) <= tol)


def effect_probabilities(effects: np.ndarray, states: np.ndarray) -> np.ndarray:
    """Broadcast ``<psi|E_m|psi>``; ``effects`` is ``(..., k, d, d)``, ``states`` is ``(..., d)``."""
    p = np.einsum("...i,...mij,...j->...m", states.conj(), effects, states).real
    return np.clip(p, 0.0, None)


def basis_povm(dim: int) -> Povm:
    """Projective measurement in the computational basis."""
    effects = np.zeros((dim, dim, dim), dtype=complex)
    effects[np.arange(dim), np.arange(dim), np.arange(dim)] = 1.0
    return Povm(effects, name="basis")


def random_povm_effects(dim: int, outcomes: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Random effects ``S^{-1/2} G_m^dagger G_m S^{-1/2}`` with ``S = sum_m G_m^dagger G_m``.

    Returns shape ``(outcomes, dim, dim)`` or ``(size, outcomes, dim, dim)``.
    """
    shape = (outcomes, dim, dim) if size is None else (size, outcomes, dim, dim)
    g = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    a = np.conj(np.swapaxes(g, -1, -2)) @ g
    s = a.sum(axis=-3)
    w, v = np.linalg.eigh(s)
    s_inv_half = (v * (1.0 / np.sqrt(w))[..., None, :]) @ np.conj(np.swapaxes(v, -1, -2))
    s_inv_half = s_inv_half[..., None, :, :]
    e = s_inv_half @ a @ s_inv_half
    return 0.5 * (e + np.conj(np.swapaxes(e, -1, -2)))


def random_povm(dim: int, outcomes: int, rng: np.random.Generator) -> Povm:
    return Povm(random_povm_effects(dim, outcomes, rng), name=f"random-{outcomes}")
