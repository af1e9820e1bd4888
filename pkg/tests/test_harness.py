import json

import numpy as np
import pytest

from qmetric.errors import CandidateError
from qmetric.harness import (
    Axiom,
    ConformanceConfig,
    Flag,
    Status,
    check_entanglement_awareness,
    check_geodesic_additivity,
    check_measurement_contextuality,
    check_nondegeneracy,
    check_ray,
    check_superposition,
    check_triangle,
    check_unitary_invariance,
    claimed_axioms,
    collapse_pair,
    replay,
    run_conformance,
    schmidt_phase_pair,
)
from qmetric.hilbert import BipartiteState, make_rng, partial_trace
from qmetric.metrics import (
    LINEAR_PROFILE,
    DistanceCandidate,
    bures_candidate,
    d_fs,
    distance_from_profile,
    entanglement_candidate,
    fs_candidate,
    hilbert_candidate,
    measurement_candidate,
)
from qmetric.povm import basis_povm, random_povm

DIMS = (2, 3, 8)
TRIALS = 60


def zero_candidate():
    return DistanceCandidate(lambda a, b: 0.0, "zero")


class TestRayCheck:
    def test_fs_passes(self, rng):
        v = check_ray(fs_candidate(), DIMS, TRIALS, rng)
        assert v.status is Status.PASS
        assert v.counterexample is None

    def test_hilbert_fails_with_sign_flip(self, rng):
        v = check_ray(hilbert_candidate(), DIMS, TRIALS, rng)
        assert v.status is Status.FAIL
        assert v.max_violation == pytest.approx(2.0, abs=1e-12)
        assert replay(hilbert_candidate(), v.counterexample) == pytest.approx(v.max_violation, abs=1e-12)

    def test_counterexample_is_json(self, rng):
        v = check_ray(hilbert_candidate(), DIMS, TRIALS, rng)
        assert replay(hilbert_candidate(), json.loads(json.dumps(v.counterexample))) == v.max_violation


class TestOtherChecks:
    def test_unitary(self, rng):
        assert check_unitary_invariance(bures_candidate(), DIMS, TRIALS, rng).status is Status.PASS

    def test_measurement_not_unitary_invariant(self, rng):
        c = measurement_candidate(basis_povm(2))
        v = check_unitary_invariance(c, DIMS, TRIALS, rng)
        assert v.status is Status.FAIL
        assert replay(c, v.counterexample) == pytest.approx(v.max_violation)

    def test_superposition_measurement_witness(self, rng):
        c = measurement_candidate(basis_povm(2))
        v = check_superposition(c, DIMS, TRIALS, rng)
        assert v.status is Status.FAIL
        assert v.max_violation == pytest.approx(np.pi / 2)
        ce = v.counterexample
        psi = np.array(ce["psi"]["amplitudes"])[:, 0] + 1j * np.array(ce["psi"]["amplitudes"])[:, 1]
        phi = np.array(ce["phi"]["amplitudes"])[:, 0] + 1j * np.array(ce["phi"]["amplitudes"])[:, 1]
        # equal moduli, opposite relative phase
        np.testing.assert_allclose(np.abs(psi), np.abs(phi), atol=1e-12)
        assert d_fs(psi, phi) == pytest.approx(np.pi / 2)

    def test_nondegeneracy_zero_candidate(self, rng):
        v = check_nondegeneracy(zero_candidate(), DIMS, TRIALS, rng)
        assert v.status is Status.FAIL
        assert v.max_violation > 1e-3

    def test_nondegeneracy_measurement(self, rng):
        assert check_nondegeneracy(measurement_candidate(basis_povm(2)), DIMS, TRIALS, rng).status is Status.FAIL

    def test_triangle(self, rng):
        assert check_triangle(fs_candidate(), DIMS, TRIALS, rng).status is Status.PASS

    def test_triangle_fails_for_linear(self, rng):
        c = distance_from_profile(LINEAR_PROFILE, validate=False)
        v = check_triangle(c, DIMS, TRIALS, rng)
        assert v.status is Status.FAIL
        assert replay(c, v.counterexample) == pytest.approx(v.max_violation)

    def test_geodesic(self, rng):
        assert check_geodesic_additivity(fs_candidate(), TRIALS, rng).status is Status.PASS
        v = check_geodesic_additivity(bures_candidate(), TRIALS, rng)
        assert v.status is Status.FAIL
        assert v.max_violation >= 0.1


class TestEntanglement:
    def test_schmidt_phase_pair_keeps_marginals(self, rng):
        psi, phi = schmidt_phase_pair(3, 3, [0.0, 1.0, 2.5])
        for keep in ("A", "B"):
            np.testing.assert_allclose(partial_trace(BipartiteState(psi, 3, 3), keep),
                                       partial_trace(BipartiteState(phi, 3, 3), keep), atol=1e-12)
        assert d_fs(psi, phi) > 0.1

    def test_bell_pair(self):
        psi, phi = schmidt_phase_pair(2, 2, [0.0, np.pi])
        assert d_fs(psi, phi) == pytest.approx(np.pi / 2)

    def test_entanglement_candidate(self, rng):
        v = check_entanglement_awareness(entanglement_candidate(), ((2, 2),), TRIALS, rng)
        assert v.status is Status.PASS
        assert v.evidence["kind"] == "schmidt-phase"

    def test_zero_fails(self, rng):
        v = check_entanglement_awareness(zero_candidate(), ((2, 2),), 10, rng)
        assert v.status is Status.FAIL


class TestContext:
    def test_not_applicable(self, rng):
        v = check_measurement_contextuality(fs_candidate(), (), TRIALS, rng)
        assert v.status is Status.NA

    def test_basis_collapse(self, rng):
        pair = collapse_pair(basis_povm(3), rng)
        assert pair is not None
        psi, phi = pair
        assert d_fs(psi, phi) > 1e-3
        np.testing.assert_allclose(basis_povm(3).probabilities(psi), basis_povm(3).probabilities(phi), atol=1e-9)

    def test_noncommuting_collapse(self, rng):
        m = random_povm(3, 3, rng)
        pair = collapse_pair(m, rng)
        assert pair is not None
        np.testing.assert_allclose(m.probabilities(pair[0]), m.probabilities(pair[1]), atol=1e-9)

    def test_informationally_complete(self, rng):
        assert collapse_pair(random_povm(2, 4, rng), rng) is None

    def test_measurement_l1_passes(self, rng):
        m = basis_povm(2)
        c = measurement_candidate(m, "l1")
        v = check_measurement_contextuality(c, (m,), TRIALS, rng)
        assert v.status is Status.PASS
        assert v.evidence["collapse"]


class TestConformance:
    def test_claims(self):
        assert claimed_axioms(hilbert_candidate())[0] is Axiom.RAY
        assert Axiom.ENTANGLEMENT in claimed_axioms(entanglement_candidate())
        assert Axiom.TRIANGLE not in claimed_axioms(measurement_candidate(basis_povm(2)))

    def test_fs_report(self):
        report = run_conformance(fs_candidate(), ConformanceConfig(trials=TRIALS))
        assert Flag.METRIC in report.flags and Flag.DISTANCE in report.flags
        assert report.claims_hold
        json.loads(report.to_json())

    def test_hilbert_report(self):
        report = run_conformance(hilbert_candidate(), ConformanceConfig(trials=TRIALS))
        assert report.verdict(Axiom.RAY).status is Status.FAIL
        assert Flag.DISTANCE not in report.flags
        assert not report.claims_hold

    def test_entanglement_scopes(self):
        report = run_conformance(entanglement_candidate(), ConformanceConfig(trials=TRIALS))
        assert report.verdict(Axiom.UNITARY, "global").status is Status.FAIL
        assert report.verdict(Axiom.UNITARY, "local").status is Status.PASS
        assert Flag.ENTANGLEMENT in report.flags
        assert report.claims_hold

    def test_measurement_flags(self):
        report = run_conformance(measurement_candidate(basis_povm(2)), ConformanceConfig(trials=TRIALS))
        assert report.flags == [Flag.CONTEXTUAL]
        assert report.claims_hold

    def test_deterministic(self):
        cfg = ConformanceConfig(trials=30, seed=7)
        assert run_conformance(bures_candidate(), cfg).to_json() == run_conformance(bures_candidate(), cfg).to_json()

    def test_threads_match_serial(self):
        serial = run_conformance(bures_candidate(), ConformanceConfig(trials=30, seed=3))
        pooled = run_conformance(bures_candidate(), ConformanceConfig(trials=30, seed=3, workers=4))
        assert serial.to_json() == pooled.to_json()

    def test_candidate_exception_wrapped(self):
        def boom(a, b):
            raise ArithmeticError("bad")

        with pytest.raises(CandidateError) as err:
            run_conformance(DistanceCandidate(boom, "boom"), ConformanceConfig(trials=5))
        assert err.value.axiom == "Ray"
