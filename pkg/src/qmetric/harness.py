"""Sampling-based conformance checks of distance candidates against the eight axioms.

Universal axioms are probed with random and hand-picked trials; the two
existential clauses (entanglement awareness, POVM collapse) are checked by
explicit construction.  Every failing verdict carries a serialized
counterexample, and :func:`replay` recomputes its violation from that
record alone.
"""
from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .errors import CandidateError, FormatError
from .formats import complex_pairs, dumps, povm_record, state_record
from .hilbert import (
    BipartiteState,
    basis_state,
    canonicalize,
    child_seed,
    haar_state,
    haar_unitary,
    make_rng,
    normalize,
    partial_trace,
)
from .metrics import DistanceCandidate, d_fs
from .povm import Povm

TOL_VIOLATION = 1e-9
TOL_POSITIVE = 1e-9
DISTINCT_GATE = 1e-3


class Axiom(str, enum.Enum):
    RAY = "Ray"
    UNITARY = "UnitaryInvariance"
    SUPERPOSITION = "Superposition"
    NONDEGENERACY = "NonDegeneracy"
    TRIANGLE = "Triangle"
    GEODESIC = "GeodesicAdditivity"
    ENTANGLEMENT = "EntanglementAwareness"
    CONTEXT = "MeasurementContextuality"


class Status(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    NA = "NotApplicable"


class Flag(str, enum.Enum):
    DISTANCE = "QuantumInspiredDistance"
    METRIC = "QuantumInspiredMetric"
    ENTANGLEMENT = "EntanglementAware"
    CONTEXTUAL = "MeasurementContextual"


@dataclass
class AxiomVerdict:
    axiom: Axiom
    status: Status
    trials: int
    max_violation: float
    counterexample: dict | None = None
    evidence: dict | None = None
    scope: str | None = None

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom.value,
            "scope": self.scope,
            "status": self.status.value,
            "trials": self.trials,
            "maxViolation": self.max_violation,
            "counterexample": self.counterexample,
            "evidence": self.evidence,
        }


# -- violation measures, shared by the checks and by replay ---------------------

def _eval(c: DistanceCandidate, a, b, axiom: Axiom | None = None) -> float:
    try:
        return float(c(a, b))
    except Exception as exc:  # noqa: BLE001 - any candidate failure is reported with its inputs
        raise CandidateError(c.name, {"a": state_record(a), "b": state_record(b)}, exc, axiom and axiom.value) from exc


def _phase(theta: float) -> complex:
    return complex(np.cos(theta), np.sin(theta))


def _v_ray(c, psi, phi, theta1, theta2):
    return abs(_eval(c, _phase(theta1) * psi, _phase(theta2) * phi) - _eval(c, psi, phi))


def _v_unitary(c, psi, phi, unitary):
    return abs(_eval(c, unitary @ psi, unitary @ phi) - _eval(c, psi, phi))


def _v_separation(c, psi, phi):
    # distinct rays that the candidate fails to separate; size = how far apart they really are
    return float(d_fs(psi, phi)) if _eval(c, psi, phi) <= TOL_POSITIVE else 0.0


def _v_coincidence(c, psi, theta):
    value = _eval(c, psi, _phase(theta) * psi)
    return value if value > TOL_POSITIVE else 0.0


def _v_triangle(c, psi, phi, chi):
    return max(0.0, _eval(c, psi, phi) - _eval(c, psi, chi) - _eval(c, chi, phi))


def _v_geodesic(c, p0, p1, p2):
    return abs(_eval(c, p0, p2) - _eval(c, p0, p1) - _eval(c, p1, p2))


def _v_context(c, psi, phi):
    povm = c.context
    gap = float(np.max(np.abs(povm.probabilities(psi) - povm.probabilities(phi))))
    value = _eval(c, psi, phi)
    if value <= TOL_POSITIVE and gap > TOL_POSITIVE:
        return gap
    if value > TOL_POSITIVE and gap <= TOL_POSITIVE:
        return value
    return 0.0


_MEASURES = {
    "ray": (_v_ray, ("psi", "phi"), ("theta1", "theta2"), ()),
    "unitary": (_v_unitary, ("psi", "phi"), (), ("unitary",)),
    "separation": (_v_separation, ("psi", "phi"), (), ()),
    "coincidence": (_v_coincidence, ("psi",), ("theta",), ()),
    "triangle": (_v_triangle, ("psi", "phi", "chi"), (), ()),
    "geodesic": (_v_geodesic, ("p0", "p1", "p2"), (), ()),
    "context": (_v_context, ("psi", "phi"), (), ()),
}


def _measure(c, kind, **data) -> float:
    fn, states, reals, matrices = _MEASURES[kind]
    return float(fn(c, *(data[k] for k in states + reals + matrices)))


def _serialize(kind: str, data: dict) -> dict:
    _, states, reals, matrices = _MEASURES[kind]
    out = {"kind": kind}
    for k in states:
        out[k] = state_record(data[k])
    for k in reals:
        out[k] = float(data[k])
    for k in matrices:
        out[k] = [complex_pairs(row) for row in np.asarray(data[k])]
    return out


def _deserialize(record: dict) -> tuple[str, dict]:
    kind = record.get("kind")
    if kind not in _MEASURES:
        raise FormatError(f"counterexample: unknown kind {kind!r}")
    _, states, reals, matrices = _MEASURES[kind]
    data = {}
    for k in states:
        pairs = np.asarray(record[k]["amplitudes"], dtype=float)
        data[k] = pairs[:, 0] + 1j * pairs[:, 1]
    for k in reals:
        data[k] = float(record[k])
    for k in matrices:
        arr = np.asarray(record[k], dtype=float)
        data[k] = arr[..., 0] + 1j * arr[..., 1]
    return kind, data


def replay(c: DistanceCandidate, counterexample: dict) -> float:
    """Recompute the violation recorded in a counterexample."""
    kind, data = _deserialize(counterexample)
    return _measure(c, kind, **data)


class _Tracker:
    """Keeps the worst trial seen so far."""

    def __init__(self):
        self.trials = 0
        self.worst = 0.0
        self.kind = None
        self.data = None

    def add(self, c, kind, **data):
        self.trials += 1
        v = _measure(c, kind, **data)
        if v > self.worst:
            self.worst, self.kind, self.data = v, kind, data
        return v

    def verdict(self, axiom, failed: bool, scope=None, evidence=None) -> AxiomVerdict:
        if failed:
            return AxiomVerdict(axiom, Status.FAIL, self.trials, self.worst, _serialize(self.kind, self.data), evidence, scope)
        return AxiomVerdict(axiom, Status.PASS, self.trials, self.worst, None, evidence, scope)


# -- sampling helpers --------------------------------------------------------------------

def _dims_for(c: DistanceCandidate, dims) -> list[int]:
    return [c.fixed_dim] if c.fixed_dim is not None else [int(d) for d in dims]


def _frame(dim: int, rng) -> tuple[np.ndarray, np.ndarray]:
    u = haar_unitary(dim, rng)
    return u[:, 0], u[:, 1]


def _basis_frame(dim: int, rng) -> tuple[np.ndarray, np.ndarray]:
    i, j = rng.choice(dim, size=2, replace=False)
    return _phase(rng.uniform(0, 2 * np.pi)) * basis_state(dim, i), _phase(rng.uniform(0, 2 * np.pi)) * basis_state(dim, j)


def _distinct_pair(dim: int, rng) -> tuple[np.ndarray, np.ndarray]:
    while True:
        psi, phi = haar_state(dim, rng), haar_state(dim, rng)
        if d_fs(psi, phi) > DISTINCT_GATE:
            return psi, phi


# -- individual axiom checks -------------------------------------------------------------

def check_ray(c: DistanceCandidate, dims, trials: int, rng) -> AxiomVerdict:
    t = _Tracker()
    for dim in _dims_for(c, dims):
        psi = haar_state(dim, rng)
        t.add(c, "ray", psi=psi, phi=psi.copy(), theta1=np.pi, theta2=0.0)
        for _ in range(trials - 1):
            t.add(c, "ray", psi=haar_state(dim, rng), phi=haar_state(dim, rng),
                  theta1=rng.uniform(0, 2 * np.pi), theta2=rng.uniform(0, 2 * np.pi))
    return t.verdict(Axiom.RAY, t.worst >= TOL_VIOLATION)


def check_unitary_invariance(c: DistanceCandidate, dims, trials: int, rng, scope: str = "global") -> AxiomVerdict:
    """Compare c(U psi, U phi) with c(psi, phi).

    ``scope="local"`` draws ``U = U_A (x) U_B`` for bipartite candidates.
    """
    if scope == "local" and c.bipartite is None:
        raise ValueError("local scope needs a bipartite candidate")
    t = _Tracker()
    for dim in _dims_for(c, dims):
        for _ in range(trials):
            if scope == "local":
                da, db = c.bipartite
                u = np.kron(haar_unitary(da, rng), haar_unitary(db, rng))
            else:
                u = haar_unitary(dim, rng)
            t.add(c, "unitary", psi=haar_state(dim, rng), phi=haar_state(dim, rng), unitary=u)
    return t.verdict(Axiom.UNITARY, t.worst >= TOL_VIOLATION, scope=scope if c.bipartite else None)


def _superposition_pair(dim: int, rng, basis: bool):
    e1, e2 = _basis_frame(dim, rng) if basis else _frame(dim, rng)
    while True:
        t = rng.uniform(0.05, np.pi / 2 - 0.05)
        ph1, ph2 = rng.uniform(0, 2 * np.pi, size=2)
        a = np.cos(t) * e1 + np.sin(t) * _phase(ph1) * e2
        b = np.cos(t) * e1 + np.sin(t) * _phase(ph2) * e2
        if not canonicalize(a).isclose(canonicalize(b)) and d_fs(a, b) > DISTINCT_GATE:
            return a, b


def check_superposition(c: DistanceCandidate, dims, trials: int, rng) -> AxiomVerdict:
    """Equal-weight superpositions of an orthogonal pair that differ only in relative phase."""
    t = _Tracker()
    for dim in _dims_for(c, dims):
        if dim < 2:
            continue
        e0, e1 = basis_state(dim, 0), basis_state(dim, 1)
        t.add(c, "separation", psi=(e0 + e1) / np.sqrt(2), phi=(e0 - e1) / np.sqrt(2))
        for k in range(trials - 1):
            psi, phi = _superposition_pair(dim, rng, basis=k % 2 == 0)
            t.add(c, "separation", psi=psi, phi=phi)
    if t.trials == 0:
        return AxiomVerdict(Axiom.SUPERPOSITION, Status.NA, 0, 0.0)
    return t.verdict(Axiom.SUPERPOSITION, t.worst > 0.0)


def check_nondegeneracy(c: DistanceCandidate, dims, trials: int, rng) -> AxiomVerdict:
    """Zero on re-phased copies of one ray and positive on rays at least DISTINCT_GATE apart."""
    t = _Tracker()
    for dim in _dims_for(c, dims):
        for _ in range(max(trials // 2, 1)):
            t.add(c, "coincidence", psi=haar_state(dim, rng), theta=rng.uniform(0, 2 * np.pi))
        if dim < 2:
            continue
        e0, e1 = basis_state(dim, 0), basis_state(dim, 1)
        t.add(c, "separation", psi=(e0 + e1) / np.sqrt(2), phi=(e0 - e1) / np.sqrt(2))
        for k in range(max(trials - trials // 2 - 1, 1)):
            if k % 2 == 0:
                psi, phi = _distinct_pair(dim, rng)
            else:
                psi, phi = _superposition_pair(dim, rng, basis=True)
            t.add(c, "separation", psi=psi, phi=phi)
    return t.verdict(Axiom.NONDEGENERACY, t.worst > 0.0)


def _geodesic_points(dim: int, rng, t1: float, t2: float):
    u, v = _frame(dim, rng)
    return tuple(np.cos(x) * u + np.sin(x) * v for x in (0.0, t1, t1 + t2))


def _geodesic_angles(rng) -> tuple[float, float]:
    total = rng.uniform(0, np.pi / 2)
    t1 = rng.uniform(0, total)
    return t1, total - t1


def check_triangle(c: DistanceCandidate, dims, trials: int, rng) -> AxiomVerdict:
    """Random triples plus triples lying on one geodesic, where the inequality is tightest."""
    t = _Tracker()
    for dim in _dims_for(c, dims):
        if dim >= 2:
            p0, p1, p2 = _geodesic_points(dim, rng, np.pi / 4, np.pi / 4)
            t.add(c, "triangle", psi=p0, phi=p2, chi=p1)
        for k in range(trials - 1):
            if dim >= 2 and k % 2 == 1:
                p0, p1, p2 = _geodesic_points(dim, rng, *_geodesic_angles(rng))
                phases = rng.uniform(0, 2 * np.pi, size=3)
                psi, chi, phi = (_phase(ph) * p for ph, p in zip(phases, (p0, p1, p2)))
            else:
                psi, phi, chi = (haar_state(dim, rng) for _ in range(3))
            t.add(c, "triangle", psi=psi, phi=phi, chi=chi)
    return t.verdict(Axiom.TRIANGLE, t.worst >= TOL_VIOLATION)


def check_geodesic_additivity(c: DistanceCandidate, trials: int, rng, dims=(2, 3)) -> AxiomVerdict:
    """Additivity along ``cos(t) u + sin(t) v`` for angle pairs summing to at most pi/2."""
    t = _Tracker()
    for dim in _dims_for(c, dims):
        if dim < 2:
            continue
        p0, p1, p2 = _geodesic_points(dim, rng, np.pi / 4, np.pi / 4)
        t.add(c, "geodesic", p0=p0, p1=p1, p2=p2)
        for _ in range(trials - 1):
            p0, p1, p2 = _geodesic_points(dim, rng, *_geodesic_angles(rng))
            t.add(c, "geodesic", p0=p0, p1=p1, p2=p2)
    if t.trials == 0:
        return AxiomVerdict(Axiom.GEODESIC, Status.NA, 0, 0.0)
    return t.verdict(Axiom.GEODESIC, t.worst >= TOL_VIOLATION)


def schmidt_phase_pair(dim_a: int, dim_b: int, phases, weights=None, local=None):
    """``sum_i sqrt(l_i) |ii>`` and the same with phases ``e^{i theta_i}`` on each term.

    ``local`` is an optional ``(U_A, U_B)`` applied to both states; it leaves
    the two marginals equal.
    """
    k = min(dim_a, dim_b)
    lam = np.full(k, 1.0 / k) if weights is None else np.asarray(weights, dtype=float)
    psi = np.zeros(dim_a * dim_b, dtype=complex)
    phi = np.zeros(dim_a * dim_b, dtype=complex)
    for i in range(k):
        psi[i * dim_b + i] = np.sqrt(lam[i])
        phi[i * dim_b + i] = np.sqrt(lam[i]) * _phase(phases[i])
    if local is not None:
        u = np.kron(*local)
        psi, phi = u @ psi, u @ phi
    return psi, phi


def _factorizations(dim: int) -> list[tuple[int, int]]:
    return [(a, dim // a) for a in range(2, dim // 2 + 1) if dim % a == 0 and dim // a >= 2]


def check_entanglement_awareness(c: DistanceCandidate, dims_ab, trials: int, rng) -> AxiomVerdict:
    """Look for equal-marginal Schmidt-phase pairs that the candidate separates."""
    if c.bipartite is not None:
        splits = [tuple(c.bipartite)]
    elif c.fixed_dim is not None:
        splits = _factorizations(c.fixed_dim)[:1]
    else:
        splits = [tuple(s) for s in dims_ab]
    splits = [s for s in splits if min(s) >= 2]
    if not splits:
        return AxiomVerdict(Axiom.ENTANGLEMENT, Status.NA, 0, 0.0)
    t = _Tracker()
    evidence = None
    for da, db in splits:
        k = min(da, db)
        for n in range(trials):
            if n == 0:
                phases = np.zeros(k)
                phases[1] = np.pi
                local = None
            else:
                phases = np.concatenate([[0.0], rng.uniform(0, 2 * np.pi, size=k - 1)])
                local = (haar_unitary(da, rng), haar_unitary(db, rng)) if n % 2 == 0 else None
            psi, phi = schmidt_phase_pair(da, db, phases, local=local)
            if d_fs(psi, phi) <= DISTINCT_GATE:
                continue
            gap = max(
                np.max(np.abs(partial_trace(BipartiteState(psi, da, db), keep)
                              - partial_trace(BipartiteState(phi, da, db), keep)))
                for keep in ("A", "B")
            )
            if gap >= 1e-10:
                # not a valid witness: the construction must leave both marginals untouched
                continue
            t.add(c, "separation", psi=psi, phi=phi)
            if evidence is None:
                value = _eval(c, psi, phi, Axiom.ENTANGLEMENT)
                if value > TOL_POSITIVE:
                    evidence = {"kind": "schmidt-phase", "dimA": da, "dimB": db, "phases": [float(p) for p in phases],
                                "distance": value, "psi": state_record(psi, da, db), "phi": state_record(phi, da, db)}
    if evidence is not None:
        return AxiomVerdict(Axiom.ENTANGLEMENT, Status.PASS, t.trials, 0.0, None, evidence)
    return t.verdict(Axiom.ENTANGLEMENT, True)


def _random_superposition(basis: np.ndarray, moduli: np.ndarray, rng) -> np.ndarray:
    phases = np.exp(1j * rng.uniform(0, 2 * np.pi, size=moduli.size))
    return basis @ (moduli * phases)


def collapse_pair(povm: Povm, rng, attempts: int = 20):
    """Two distinct rays with identical outcome statistics, or None.

    Commuting POVMs are handled exactly in their joint eigenbasis by
    changing relative phases; otherwise a least-squares search is tried.
    """
    if povm.is_informationally_complete():
        return None
    dim = povm.dim
    if povm.commutes():
        mix = np.einsum("m,mij->ij", rng.uniform(0.5, 1.5, size=povm.outcomes), povm.effects)
        _, basis = np.linalg.eigh(mix)
        moduli = np.sqrt(rng.dirichlet(np.ones(dim)))
        psi = _random_superposition(basis, moduli, rng)
        while True:
            phi = _random_superposition(basis, moduli, rng)
            if d_fs(psi, phi) > DISTINCT_GATE:
                return psi, phi
    psi = haar_state(dim, rng)
    target = povm.probabilities(psi)

    def residual(x, aim):
        phi = normalize(x[:dim] + 1j * x[dim:])
        return np.concatenate([povm.probabilities(phi) - target, [abs(np.vdot(psi, phi)) - aim]])

    for _ in range(attempts):
        aim = rng.uniform(0.2, 0.95)
        start = haar_state(dim, rng)
        sol = least_squares(residual, np.concatenate([start.real, start.imag]), args=(aim,), xtol=1e-15, ftol=1e-15, gtol=1e-15)
        phi = normalize(sol.x[:dim] + 1j * sol.x[dim:])
        if np.max(np.abs(povm.probabilities(phi) - target)) < 1e-12 and d_fs(psi, phi) > DISTINCT_GATE:
            return psi, phi
    return None


def check_measurement_contextuality(c: DistanceCandidate, povms, trials: int, rng) -> AxiomVerdict:
    """c = 0 exactly when the induced distributions agree; demonstrate collapse for non-complete POVMs."""
    if c.context is None:
        return AxiomVerdict(Axiom.CONTEXT, Status.NA, 0, 0.0)
    povms = list(povms) if povms else [c.context]
    dim = c.context.dim
    t = _Tracker()
    collapses = []
    for i, povm in enumerate(povms):
        pair = collapse_pair(povm, rng)
        entry = {"povm": povm.name, "informationallyComplete": povm.is_informationally_complete()}
        if pair is not None:
            entry.update(psi=state_record(pair[0]), phi=state_record(pair[1]), fsDistance=float(d_fs(*pair)))
            if povm is c.context:
                t.add(c, "context", psi=pair[0], phi=pair[1])
                entry["distance"] = _eval(c, *pair, Axiom.CONTEXT)
        collapses.append(entry)
    if dim >= 2:
        e0, e1 = basis_state(dim, 0), basis_state(dim, 1)
        t.add(c, "context", psi=(e0 + e1) / np.sqrt(2), phi=(e0 - e1) / np.sqrt(2))
    for k in range(trials):
        psi = haar_state(dim, rng)
        phi = _phase(rng.uniform(0, 2 * np.pi)) * psi if k % 3 == 0 else haar_state(dim, rng)
        t.add(c, "context", psi=psi, phi=phi)
    return t.verdict(Axiom.CONTEXT, t.worst >= TOL_VIOLATION, evidence={"collapse": collapses})


# -- full report --------------------------------------------------------------------------

@dataclass(frozen=True)
class ConformanceConfig:
    dims: tuple[int, ...] = (2, 3, 8)
    trials: int = 200
    seed: int = 0
    dims_ab: tuple[tuple[int, int], ...] = ((2, 2), (2, 3), (3, 3))
    povms: tuple[Povm, ...] = ()
    workers: int = 1


@dataclass
class ConformanceReport:
    candidate: str
    seed: int
    dims: list[int]
    verdicts: list[AxiomVerdict]
    flags: list[Flag]
    claimed: list[Axiom] = field(default_factory=list)

    def verdict(self, axiom: Axiom, scope: str | None = None) -> AxiomVerdict:
        for v in self.verdicts:
            if v.axiom is axiom and (scope is None or v.scope == scope):
                return v
        raise KeyError(axiom)

    @property
    def claims_hold(self) -> bool:
        return all(self._claim_verdict(a).status is Status.PASS for a in self.claimed)

    def _claim_verdict(self, axiom: Axiom) -> AxiomVerdict:
        scoped = [v for v in self.verdicts if v.axiom is axiom]
        local = [v for v in scoped if v.scope == "local"]
        return local[0] if local else scoped[0]

    def to_dict(self) -> dict:
        return {
            "candidate": self.candidate,
            "seed": self.seed,
            "dims": self.dims,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "flags": [f.value for f in self.flags],
            "claimed": [a.value for a in self.claimed],
            "claimsHold": self.claims_hold,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def claimed_axioms(c: DistanceCandidate) -> list[Axiom]:
    claims = [Axiom.RAY]
    if c.claims_metric:
        claims += [Axiom.UNITARY, Axiom.SUPERPOSITION, Axiom.NONDEGENERACY, Axiom.TRIANGLE]
    if c.bipartite is not None:
        claims.append(Axiom.ENTANGLEMENT)
    if c.context is not None:
        claims.append(Axiom.CONTEXT)
    return claims


def classify(verdicts: list[AxiomVerdict]) -> list[Flag]:
    """Flags from verdicts; for bipartite candidates the local-unitary verdict stands in for Axiom 2."""
    status = {}
    for v in verdicts:
        if v.axiom is Axiom.UNITARY and v.scope == "global" and any(w.scope == "local" for w in verdicts):
            continue
        status[v.axiom] = v.status
    ok = lambda *axes: all(status.get(a) is Status.PASS for a in axes)  # noqa: E731
    flags = []
    if ok(Axiom.RAY, Axiom.UNITARY, Axiom.SUPERPOSITION):
        flags.append(Flag.DISTANCE)
        if ok(Axiom.NONDEGENERACY, Axiom.TRIANGLE):
            flags.append(Flag.METRIC)
        if ok(Axiom.ENTANGLEMENT):
            flags.append(Flag.ENTANGLEMENT)
    if ok(Axiom.CONTEXT):
        flags.append(Flag.CONTEXTUAL)
    return flags


def run_conformance(c: DistanceCandidate, config: ConformanceConfig = ConformanceConfig()) -> ConformanceReport:
    """Run every axiom check with its own child seed; output depends only on (candidate, config)."""
    n = config.trials
    jobs = [
        (Axiom.RAY, lambda r: check_ray(c, config.dims, n, r)),
        (Axiom.UNITARY, lambda r: check_unitary_invariance(c, config.dims, n, r)),
    ]
    if c.bipartite is not None:
        jobs.append((Axiom.UNITARY, lambda r: check_unitary_invariance(c, config.dims, n, r, scope="local")))
    jobs += [
        (Axiom.SUPERPOSITION, lambda r: check_superposition(c, config.dims, n, r)),
        (Axiom.NONDEGENERACY, lambda r: check_nondegeneracy(c, config.dims, n, r)),
        (Axiom.TRIANGLE, lambda r: check_triangle(c, config.dims, n, r)),
        (Axiom.GEODESIC, lambda r: check_geodesic_additivity(c, n, r, dims=config.dims)),
        (Axiom.ENTANGLEMENT, lambda r: check_entanglement_awareness(c, config.dims_ab, n, r)),
        (Axiom.CONTEXT, lambda r: check_measurement_contextuality(c, config.povms, n, r)),
    ]

    def run(indexed):
        k, (axiom, job) = indexed
        try:
            return job(make_rng(child_seed(config.seed, k)))
        except CandidateError as exc:
            exc.axiom = exc.axiom or axiom.value
            raise

    workers = config.workers if c.thread_safe else 1
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            verdicts = list(pool.map(run, enumerate(jobs)))
    else:
        verdicts = [run(item) for item in enumerate(jobs)]
    return ConformanceReport(
        candidate=c.name,
        seed=config.seed,
        dims=_dims_for(c, config.dims),
        verdicts=verdicts,
        flags=classify(verdicts),
        claimed=claimed_axioms(c),
    )
