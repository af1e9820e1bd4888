"""Pure-state primitives on finite-dimensional complex Hilbert spaces.

States are plain complex numpy arrays whose last axis holds the
amplitudes, so every function here also works on stacks of states of
shape ``(..., dim)``.  Bipartite amplitudes use the flat index
``i * dim_b + j`` for ``|i>_A (x) |j>_B``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DimensionError, FactorizationMismatch, NormalizationError, ZeroVectorError

TOL_NORM = 1e-12
TOL_EIG = 1e-10

_MASK64 = (1 << 64) - 1


# -- seeded randomness -----------------------------------------------------

RNG_ALGORITHM = "PCG64"


def make_rng(seed: int) -> np.random.Generator:
    """Deterministic generator (numpy PCG64) for a 64-bit seed."""
    return np.random.Generator(np.random.PCG64(int(seed) & _MASK64))


def splitmix64(x: int) -> int:
    z = (int(x) + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def child_seed(root: int, k: int) -> int:
    """Seed for the k-th independent task derived from ``root``."""
    return (int(root) & _MASK64) ^ splitmix64(k)


# -- construction and validation --------------------------------------------

def as_state(amplitudes, tol: float = TOL_NORM) -> np.ndarray:
    """Return ``amplitudes`` as a complex array, checking unit norm."""
    v = np.asarray(amplitudes, dtype=complex)
    if v.ndim < 1 or v.shape[-1] < 1:
        raise DimensionError(f"state needs at least one amplitude, got shape {v.shape}")
    norms = np.linalg.norm(v, axis=-1)
    if np.any(np.abs(norms - 1.0) > tol):
        raise NormalizationError(f"state norm deviates from 1 by {np.max(np.abs(norms - 1.0)):.3e}")
    return v


def normalize(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    norms = np.linalg.norm(v, axis=-1, keepdims=True)
    if np.any(norms <= TOL_NORM):
        raise ZeroVectorError("cannot normalize a zero vector")
    return v / norms


def basis_state(dim: int, index: int = 0) -> np.ndarray:
    if dim < 1 or not 0 <= index < dim:
        raise DimensionError(f"basis index {index} invalid for dim {dim}")
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def _check_dims(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[-1] != b.shape[-1]:
        raise DimensionError(f"dimension mismatch: {a.shape[-1]} vs {b.shape[-1]}")


def inner_product(a, b):
    """<a|b>, antilinear in ``a`` and linear in ``b``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    _check_dims(a, b)
    return np.sum(a.conj() * b, axis=-1)


def overlap(a, b):
    """|<a|b>| clamped into [0, 1]."""
    return np.clip(np.abs(inner_product(a, b)), 0.0, 1.0)


def aligned_chord(a, b):
    """min over phases of ||a - e^{i phi} b||, i.e. ``sqrt(2 - 2|<a|b>|)`` for unit vectors.

    Computed by direct subtraction so it keeps full relative precision
    when the two rays nearly coincide, where ``1 - |<a|b>|`` cancels.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    ip = inner_product(a, b)
    mag = np.abs(ip)
    phase = np.where(mag > 0, np.conj(ip) / np.where(mag > 0, mag, 1.0), 1.0)
    return np.linalg.norm(a - phase[..., None] * b, axis=-1)


# -- rays --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Ray:
    """A pure state modulo global phase, stored in canonical gauge."""

    representative: np.ndarray

    @property
    def dim(self) -> int:
        return self.representative.shape[-1]

    def isclose(self, other: "Ray", tol: float = 1e-10) -> bool:
        if self.dim != other.dim:
            return False
        return bool(np.max(np.abs(self.representative - other.representative)) <= tol)


def canonicalize(v) -> Ray:
    """Fix the global phase: the first amplitude of modulus > TOL_NORM becomes real positive."""
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise DimensionError("canonicalize expects a single state vector")
    big = np.flatnonzero(np.abs(v) > TOL_NORM)
    if big.size == 0:
        raise ZeroVectorError("zero vector has no ray")
    k = big[0]
    phase = v[k] / abs(v[k])
    rep = v * phase.conjugate()
    rep[k] = abs(v[k])
    rep.setflags(write=False)
    return Ray(rep)


# -- Haar sampling -----------------------------------------------------------

def haar_states(dim: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` independent Haar-random states, shape ``(size, dim)``."""
    if dim < 1:
        raise DimensionError(f"dim must be >= 1, got {dim}")
    return normalize(rng.standard_normal((size, dim)) + 1j * rng.standard_normal((size, dim)))


def haar_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    return haar_states(dim, 1, rng)[0]


def haar_unitaries(dim: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Stack of Haar unitaries via QR of a Ginibre matrix with R's diagonal phases removed."""
    if dim < 1:
        raise DimensionError(f"dim must be >= 1, got {dim}")
    z = (rng.standard_normal((size, dim, dim)) + 1j * rng.standard_normal((size, dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    return haar_unitaries(dim, 1, rng)[0]


# -- bipartite structure -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BipartiteState:
    """Amplitudes (possibly a stack) with a declared ``dim_a x dim_b`` split."""

    state: np.ndarray
    dim_a: int
    dim_b: int

    def __post_init__(self):
        state = np.asarray(self.state, dtype=complex)
        if self.dim_a < 1 or self.dim_b < 1 or self.dim_a * self.dim_b != state.shape[-1]:
            raise FactorizationMismatch(
                f"{self.dim_a} x {self.dim_b} does not factor dimension {state.shape[-1]}"
            )
        object.__setattr__(self, "state", state)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def coefficients(self) -> np.ndarray:
        """Amplitudes reshaped to ``(..., dim_a, dim_b)``."""
        return self.state.reshape(self.state.shape[:-1] + (self.dim_a, self.dim_b))


def tensor_product(a, b) -> BipartiteState:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return BipartiteState(np.kron(a, b), a.shape[-1], b.shape[-1])


def partial_trace(s: BipartiteState, keep: Literal["A", "B"] = "A") -> np.ndarray:
    """Reduced density matrix of the kept subsystem."""
    m = s.coefficients()
    if keep == "A":
        return np.einsum("...ij,...kj->...ik", m, m.conj())
    if keep == "B":
        return np.einsum("...ji,...jk->...ik", m, m.conj())
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def is_density_matrix(rho, tol: float = TOL_NORM) -> bool:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if np.max(np.abs(rho - rho.conj().T)) > tol or abs(np.trace(rho) - 1) > tol:
        return False
    return bool(np.min(np.linalg.eigvalsh(rho)) >= -TOL_EIG)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    sqrt_lambda: np.ndarray
    basis_a: np.ndarray  # columns are |a_i>
    basis_b: np.ndarray  # columns are |b_i>, Schmidt phases absorbed

    def reconstruct(self) -> np.ndarray:
        return np.einsum("k,ik,jk->ij", self.sqrt_lambda, self.basis_a, self.basis_b).ravel()


def schmidt(s: BipartiteState, tol: float = TOL_NORM) -> SchmidtDecomposition:
    """SVD of the coefficient matrix, keeping coefficients above ``tol``."""
    if s.state.ndim != 1:
        raise DimensionError("schmidt expects a single bipartite state")
    u, sv, vh = np.linalg.svd(s.coefficients(), full_matrices=False)
    keep = sv > tol
    return SchmidtDecomposition(sv[keep], u[:, keep], vh[keep, :].T)


def schmidt_spectrum(s: BipartiteState) -> np.ndarray:
    """Squared Schmidt coefficients (eigenvalues of either marginal), descending."""
    return np.linalg.svd(s.coefficients(), compute_uv=False) ** 2


def _shannon(p: np.ndarray, base: float | None) -> np.ndarray:
    p = np.where(p > TOL_EIG, p, 1.0)  # log(1) = 0 drops sub-threshold eigenvalues
    h = -np.sum(p * np.log(p), axis=-1)
    if base is not None:
        h = h / np.log(base)
    return h


def von_neumann_entropy(rho, base: float | None = None):
    """-Tr(rho log rho); natural log unless ``base`` is given."""
    return _shannon(np.linalg.eigvalsh(np.asarray(rho, dtype=complex)), base)


def entanglement_entropy(s: BipartiteState, base: float | None = None):
    """Entropy of the reduced state, computed from the Schmidt spectrum."""
    return _shannon(schmidt_spectrum(s), base)
