"""Distances between pure states and the overlap-profile framework.

Every distance takes amplitude arrays and broadcasts over leading axes.
Entropies use the natural log unless a ``base`` is passed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DimensionError, FactorizationMismatch, ProfileViolation
from .hilbert import BipartiteState, aligned_chord, entanglement_entropy, overlap
from .povm import Povm

SLACK = 1e-9


def d_fs(a, b):
    """Fubini-Study angle ``arccos |<a|b>|`` in ``[0, pi/2]``.

    Evaluated as ``2 arcsin(chord / 2)``, which equals the arccos form but
    stays accurate for nearly identical rays.
    """
    return 2.0 * np.arcsin(np.clip(aligned_chord(a, b) / 2.0, 0.0, np.sqrt(0.5)))


def d_bures(a, b):
    """``sqrt(2 (1 - |<a|b>|))``, the chord between optimally phased representatives."""
    return np.clip(aligned_chord(a, b), 0.0, np.sqrt(2.0))


def d_trace_pure(a, b):
    """Trace distance of the two projectors, ``sqrt(1 - |<a|b>|^2)``."""
    chord = aligned_chord(a, b)
    r = overlap(a, b)
    # 1 - r^2 = (1 - r)(1 + r) with 1 - r = chord^2 / 2
    return np.clip(chord * np.sqrt((1.0 + r) / 2.0), 0.0, 1.0)


def fidelity(a, b):
    r = overlap(a, b)
    return r * r


def d_hilbert(a, b):
    """Euclidean norm of the amplitude difference; depends on the global phases."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape[-1] != b.shape[-1]:
        raise DimensionError(f"dimension mismatch: {a.shape[-1]} vs {b.shape[-1]}")
    return np.linalg.norm(a - b, axis=-1)


def _check_split(a: BipartiteState, b: BipartiteState) -> None:
    if (a.dim_a, a.dim_b) != (b.dim_a, b.dim_b):
        raise FactorizationMismatch(
            f"factorizations differ: {a.dim_a}x{a.dim_b} vs {b.dim_a}x{b.dim_b}"
        )


def d_entanglement_aware(a: BipartiteState, b: BipartiteState, base: float | None = None):
    """``sqrt(d_fs^2 + |E(a) - E(b)|^2)`` with entanglement entropy E."""
    _check_split(a, b)
    fs = d_fs(a.state, b.state)
    de = entanglement_entropy(a, base) - entanglement_entropy(b, base)
    return np.sqrt(fs * fs + de * de)


def complementarity_value(a: BipartiteState, b: BipartiteState):
    """``d_fs^2 + (|E(a) - E(b)| / log d)^2`` with ``d = min(dim_a, dim_b)``.

    The entropy difference is divided by the log of the same base it was
    computed in, so the result does not depend on the base.
    """
    _check_split(a, b)
    d = min(a.dim_a, a.dim_b)
    if d < 2:
        raise FactorizationMismatch("complementarity needs both factors of dimension >= 2")
    fs = d_fs(a.state, b.state)
    de = (entanglement_entropy(a) - entanglement_entropy(b)) / np.log(d)
    return fs * fs + de * de


def measurement_distance_l2(m: Povm, a, b):
    """Euclidean distance between the outcome distributions of ``m`` on ``a`` and ``b``."""
    return np.linalg.norm(m.probabilities(a) - m.probabilities(b), axis=-1)


def measurement_distance_l1(m: Povm, a, b):
    """Sum of absolute differences of the outcome distributions (twice total variation)."""
    return np.sum(np.abs(m.probabilities(a) - m.probabilities(b)), axis=-1)


# -- overlap profiles ----------------------------------------------------------

@dataclass(frozen=True)
class OverlapProfile:
    """A distance written as ``f(|<a|b>|)``; ``g(theta) = f(cos theta)`` on the FS angle.

    ``angular`` optionally gives ``g`` in closed form.  Candidates evaluate
    ``g`` at the FS angle, which avoids the ``arccos`` blow-up of rounding
    error in overlaps close to 1.
    """

    f: Callable[[np.ndarray], np.ndarray]
    name: str
    angular: Callable[[np.ndarray], np.ndarray] | None = None

    def g(self, theta):
        if self.angular is not None:
            return self.angular(np.asarray(theta, dtype=float))
        return self.f(np.cos(theta))

    def validate(self, grid: int = 1000) -> None:
        """Raise ProfileViolation unless f(1)=0, f>=0, f strictly decreasing and g subadditive."""
        r = np.linspace(0.0, 1.0, grid)
        fr = np.asarray(self.f(r), dtype=float)
        if abs(fr[-1]) > 1e-12:
            raise ProfileViolation("f(1) = 0", {"r": 1.0, "f": float(fr[-1])})
        if np.any(fr < -1e-12):
            k = int(np.argmin(fr))
            raise ProfileViolation("nonnegativity", {"r": float(r[k]), "f": float(fr[k])})
        drops = fr[:-1] - fr[1:]
        if np.any(drops <= 0.0):
            k = int(np.argmin(drops))
            raise ProfileViolation(
                "strictly decreasing",
                {"r": [float(r[k]), float(r[k + 1])], "f": [float(fr[k]), float(fr[k + 1])]},
            )
        t1, t2, excess = _subadditivity_excess(self, grid)
        k = int(np.argmax(excess))
        if excess[k] > SLACK:
            raise ProfileViolation(
                "subadditivity of g",
                {"theta1": float(t1[k]), "theta2": float(t2[k]), "excess": float(excess[k])},
            )


def _angle_pairs(grid: int):
    theta = np.linspace(0.0, np.pi / 2, grid)
    i, j = np.triu_indices(grid)
    ok = theta[i] + theta[j] <= np.pi / 2 + 1e-15
    return theta[i[ok]], theta[j[ok]]


def _subadditivity_excess(p: OverlapProfile, grid: int):
    t1, t2 = _angle_pairs(grid)
    total = np.minimum(t1 + t2, np.pi / 2)
    return t1, t2, p.g(total) - p.g(t1) - p.g(t2)


def profile_additivity_defect(p: OverlapProfile, grid: int = 100) -> float:
    """max |g(t1 + t2) - g(t1) - g(t2)| over grid pairs with ``t1 + t2 <= pi/2``."""
    if grid < 2:
        raise ValueError("grid must have at least 2 points")
    t1, t2 = _angle_pairs(grid)
    total = np.minimum(t1 + t2, np.pi / 2)
    return float(np.max(np.abs(p.g(total) - p.g(t1) - p.g(t2))))


FS_PROFILE = OverlapProfile(lambda r: np.arccos(np.clip(r, 0.0, 1.0)), "fs", lambda t: t)
BURES_PROFILE = OverlapProfile(
    lambda r: np.sqrt(np.clip(2.0 - 2.0 * np.asarray(r), 0.0, None)), "bures", lambda t: 2.0 * np.sin(t / 2.0)
)
LINEAR_PROFILE = OverlapProfile(lambda r: 1.0 - np.asarray(r), "linear", lambda t: 2.0 * np.sin(t / 2.0) ** 2)


def scaled_fs_profile(c: float) -> OverlapProfile:
    return OverlapProfile(lambda r: c * np.arccos(np.clip(r, 0.0, 1.0)), f"{c:g}*fs", lambda t: c * t)


# -- candidates for the axiom harness ----------------------------------------------

@dataclass(frozen=True)
class DistanceCandidate:
    """A distance function on single states plus what it claims to be.

    ``context`` holds the POVM for measurement-defined distances and
    ``bipartite`` the ``(dim_a, dim_b)`` split for composite ones; both
    restrict the dimensions the harness may feed in.
    """

    evaluate: Callable[[np.ndarray, np.ndarray], float]
    name: str
    claims_metric: bool = True
    context: Povm | None = None
    bipartite: tuple[int, int] | None = None
    thread_safe: bool = True
    meta: dict = field(default_factory=dict)

    def __call__(self, a, b) -> float:
        return float(self.evaluate(a, b))

    @property
    def fixed_dim(self) -> int | None:
        if self.context is not None:
            return self.context.dim
        if self.bipartite is not None:
            return self.bipartite[0] * self.bipartite[1]
        return None


def distance_from_profile(p: OverlapProfile, validate: bool = True) -> DistanceCandidate:
    """Candidate ``f(|<a|b>|)``; validation raises ProfileViolation for inadmissible profiles."""
    if validate:
        p.validate()
    return DistanceCandidate(lambda a, b: p.g(d_fs(a, b)), p.name, claims_metric=validate)


def fs_candidate() -> DistanceCandidate:
    return DistanceCandidate(d_fs, "fs")


def bures_candidate() -> DistanceCandidate:
    return DistanceCandidate(d_bures, "bures")


def hilbert_candidate() -> DistanceCandidate:
    return DistanceCandidate(d_hilbert, "hilbert")


def entanglement_candidate(dim_a: int = 2, dim_b: int = 2, base: float | None = None) -> DistanceCandidate:
    def evaluate(a, b):
        return d_entanglement_aware(BipartiteState(a, dim_a, dim_b), BipartiteState(b, dim_a, dim_b), base)

    return DistanceCandidate(evaluate, "entanglement", bipartite=(dim_a, dim_b), meta={"entropy_base": base or "e"})


def measurement_candidate(povm: Povm, norm: str = "l2") -> DistanceCandidate:
    if norm == "l2":
        fn = measurement_distance_l2
    elif norm == "l1":
        fn = measurement_distance_l1
    else:
        raise ValueError(f"unknown norm {norm!r}")
    return DistanceCandidate(
        lambda a, b: fn(povm, a, b), f"measurement-{norm}:{povm.name}", claims_metric=False, context=povm
    )
