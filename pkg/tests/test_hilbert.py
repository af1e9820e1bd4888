import numpy as np
import pytest
from hypothesis import given
from scipy import stats

from qmetric.errors import DimensionError, FactorizationMismatch, NormalizationError, ZeroVectorError
from qmetric.hilbert import (
    BipartiteState,
    Ray,
    as_state,
    basis_state,
    canonicalize,
    child_seed,
    entanglement_entropy,
    haar_state,
    haar_states,
    haar_unitaries,
    haar_unitary,
    inner_product,
    is_density_matrix,
    make_rng,
    normalize,
    overlap,
    partial_trace,
    schmidt,
    schmidt_spectrum,
    splitmix64,
    tensor_product,
    von_neumann_entropy,
)

from conftest import phases, states

SQ2 = 1 / np.sqrt(2)
PHI_PLUS = np.array([SQ2, 0, 0, SQ2], dtype=complex)


class TestStates:
    def test_normalize(self):
        v = normalize([3, 4j])
        np.testing.assert_allclose(v, [0.6, 0.8j])

    def test_zero_vector(self):
        with pytest.raises(ZeroVectorError):
            normalize([0, 0])

    def test_as_state_rejects_unnormalized(self):
        with pytest.raises(NormalizationError):
            as_state([1.0, 1.0])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            inner_product(basis_state(2), basis_state(3))

    def test_inner_product_conjugates_first(self):
        a = np.array([1j, 0])
        b = np.array([1, 0])
        assert inner_product(a, b) == pytest.approx(-1j)

    def test_overlap_batch(self, rng):
        a = haar_states(5, 7, rng)
        r = overlap(a, a)
        np.testing.assert_allclose(r, 1.0, atol=1e-15)
        assert r.shape == (7,)


class TestRay:
    def test_gauge_positive_first(self):
        r = canonicalize(np.array([0, -1j, 0]))
        np.testing.assert_allclose(r.representative, [0, 1, 0])

    def test_phase_classes_coincide(self, rng):
        v = haar_state(4, rng)
        assert canonicalize(v).isclose(canonicalize(np.exp(0.7j) * v))

    def test_distinct_rays(self):
        assert not canonicalize(np.array([SQ2, SQ2])).isclose(canonicalize(np.array([SQ2, -SQ2])))

    @given(states(), phases)
    def test_canonical_is_phase_invariant(self, v, t):
        a = canonicalize(v).representative
        b = canonicalize(np.exp(1j * t) * v).representative
        np.testing.assert_allclose(a, b, atol=1e-10)

    def test_dim(self):
        assert Ray(basis_state(3)).dim == 3


class TestSeeding:
    def test_splitmix_known_value(self):
        # first output of SplitMix64 seeded with 0
        assert splitmix64(0) == 0xE220A8397B1DCDAF

    def test_children_differ(self):
        seeds = {child_seed(42, k) for k in range(100)}
        assert len(seeds) == 100

    def test_reproducible_streams(self):
        a = haar_states(3, 4, make_rng(9))
        b = haar_states(3, 4, make_rng(9))
        np.testing.assert_array_equal(a, b)


class TestHaar:
    def test_states_normalized(self, rng):
        s = haar_states(8, 100, rng)
        np.testing.assert_allclose(np.linalg.norm(s, axis=-1), 1.0, atol=1e-12)

    def test_unitaries(self, rng):
        u = haar_unitaries(5, 20, rng)
        eye = np.conj(np.swapaxes(u, -1, -2)) @ u
        np.testing.assert_allclose(eye, np.broadcast_to(np.eye(5), eye.shape), atol=1e-10)

    def test_overlap_law_matches_beta(self):
        # |<psi|phi>|^2 ~ Beta(1, d-1) for independent Haar states
        for d in (2, 5, 16):
            rng = make_rng(d)
            r2 = overlap(haar_states(d, 100_000, rng), haar_states(d, 100_000, rng)) ** 2
            assert stats.kstest(r2, stats.beta(1, d - 1).cdf).statistic < 0.01

    def test_unitary_eigenphases_uniform(self):
        # diagonal phase correction makes eigenphases rotation invariant
        rng = make_rng(3)
        phases = np.concatenate([np.angle(np.linalg.eigvals(haar_unitary(3, rng))) for _ in range(3000)])
        assert stats.kstest(phases, stats.uniform(-np.pi, 2 * np.pi).cdf).pvalue > 1e-3

    def test_first_column_is_haar_state(self):
        rng = make_rng(11)
        cols = haar_unitaries(4, 20_000, rng)[:, :, 0]
        r2 = np.abs(cols[:, 0]) ** 2
        assert stats.kstest(r2, stats.beta(1, 3).cdf).statistic < 0.02


class TestBipartite:
    def test_factorization_checked(self):
        with pytest.raises(FactorizationMismatch):
            BipartiteState(basis_state(6), 4, 2)

    def test_tensor_product_index_order(self):
        s = tensor_product(basis_state(2, 1), basis_state(3, 2))
        assert s.dim_a == 2 and s.dim_b == 3
        assert np.argmax(np.abs(s.state)) == 1 * 3 + 2

    def test_bell_marginals(self):
        s = BipartiteState(PHI_PLUS, 2, 2)
        for keep in ("A", "B"):
            np.testing.assert_allclose(partial_trace(s, keep), np.eye(2) / 2, atol=1e-15)

    def test_partial_trace_of_product(self, rng):
        a, b = haar_state(2, rng), haar_state(3, rng)
        s = tensor_product(a, b)
        np.testing.assert_allclose(partial_trace(s, "A"), np.outer(a, a.conj()), atol=1e-12)
        np.testing.assert_allclose(partial_trace(s, "B"), np.outer(b, b.conj()), atol=1e-12)

    def test_partial_trace_reference(self, rng):
        # against the explicit sum over the traced-out basis
        v = haar_state(6, rng)
        s = BipartiteState(v, 2, 3)
        rho = np.outer(v, v.conj()).reshape(2, 3, 2, 3)
        np.testing.assert_allclose(partial_trace(s, "A"), np.einsum("ijkj->ik", rho), atol=1e-12)
        np.testing.assert_allclose(partial_trace(s, "B"), np.einsum("jijk->ik", rho), atol=1e-12)
        assert is_density_matrix(partial_trace(s, "B"))

    def test_schmidt_reconstructs(self, rng):
        s = BipartiteState(haar_state(12, rng), 3, 4)
        dec = schmidt(s)
        np.testing.assert_allclose(dec.reconstruct(), s.state, atol=1e-12)
        assert np.all(np.diff(dec.sqrt_lambda) <= 0)

    def test_schmidt_spectrum_matches_marginal(self, rng):
        s = BipartiteState(haar_state(6, rng), 2, 3)
        lam = schmidt_spectrum(s)
        eig = np.sort(np.linalg.eigvalsh(partial_trace(s, "A")))[::-1]
        np.testing.assert_allclose(lam[: eig.size], eig, atol=1e-12)


class TestEntropy:
    def test_product_zero(self):
        assert entanglement_entropy(tensor_product(basis_state(2), basis_state(2))) == pytest.approx(0.0, abs=1e-15)

    def test_bell_log2(self):
        s = BipartiteState(PHI_PLUS, 2, 2)
        assert entanglement_entropy(s) == pytest.approx(np.log(2), abs=1e-15)
        assert entanglement_entropy(s, 2) == pytest.approx(1.0, abs=1e-15)

    def test_maximal_in_3x3(self):
        v = np.zeros(9, dtype=complex)
        v[[0, 4, 8]] = 1 / np.sqrt(3)
        assert entanglement_entropy(BipartiteState(v, 3, 3)) == pytest.approx(np.log(3), abs=1e-14)

    def test_von_neumann_mixed(self):
        assert von_neumann_entropy(np.diag([0.5, 0.25, 0.25])) == pytest.approx(1.5 * np.log(2))

    def test_both_sides_agree(self, rng):
        s = BipartiteState(haar_state(8, rng), 2, 4)
        a = von_neumann_entropy(partial_trace(s, "A"))
        b = von_neumann_entropy(partial_trace(s, "B"))
        assert a == pytest.approx(b, abs=1e-12)
