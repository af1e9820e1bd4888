"""Property-based checks of the distance inequalities on arbitrary states."""
import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from qmetric.experiments import bipartite_states, one_minus_fidelity, one_minus_overlap, trace_norm_pure_difference
from qmetric.hilbert import BipartiteState, entanglement_entropy, make_rng, overlap, partial_trace
from qmetric.metrics import d_bures, d_entanglement_aware, d_fs, d_trace_pure, fidelity

from conftest import state_pairs

SLACK = 1e-9


class TestComparison:
    @given(state_pairs())
    def test_fs_sandwich(self, pair):
        a, b = pair
        gap = one_minus_overlap(a, b)
        fs = d_fs(a, b)
        assert np.sqrt(2 * gap) <= fs + SLACK
        assert fs <= np.pi / 2 * np.sqrt(gap) + SLACK

    @given(state_pairs())
    def test_stable_gap_matches_naive(self, pair):
        a, b = pair
        assert abs(one_minus_overlap(a, b) - (1 - overlap(a, b))) <= 1e-15

    @given(state_pairs())
    def test_bures_sandwich(self, pair):
        a, b = pair
        fs, db = d_fs(a, b), d_bures(a, b)
        assert 2 / np.pi * fs <= db + SLACK
        assert db <= fs + SLACK

    @given(state_pairs())
    def test_fuchs_van_de_graaf(self, pair):
        a, b = pair
        f = fidelity(a, b)
        t = d_trace_pure(a, b)
        assert 1 - np.sqrt(f) <= t + SLACK
        assert t <= np.sqrt(one_minus_fidelity(a, b)) + SLACK

    @given(state_pairs())
    def test_trace_norm_route(self, pair):
        a, b = pair
        assert abs(0.5 * trace_norm_pure_difference(a, b) - np.sin(d_fs(a, b))) <= 1e-12


class TestTriangles:
    @given(state_pairs(count=3))
    def test_fs(self, triple):
        a, b, c = triple
        assert d_fs(a, b) <= d_fs(a, c) + d_fs(c, b) + SLACK

    @given(state_pairs(count=3))
    def test_bures(self, triple):
        a, b, c = triple
        assert d_bures(a, b) <= d_bures(a, c) + d_bures(c, b) + SLACK

    @given(state_pairs(count=3))
    def test_multiplicative_fidelity(self, triple):
        psi, phi, chi = triple
        f1, f2 = fidelity(psi, phi), fidelity(phi, chi)
        assert np.sqrt(fidelity(psi, chi)) >= np.sqrt(f1 * f2) - np.sqrt((1 - f1) * (1 - f2)) - SLACK


splits = st.sampled_from([(2, 2), (2, 3), (3, 3), (2, 4)])


class TestEntanglementBounds:
    @given(splits, st.integers(0, 2**32))
    def test_sandwich(self, split, seed):
        da, db = split
        rng = make_rng(seed)
        a, b = bipartite_states(da, db, 2, rng), bipartite_states(da, db, 2, rng)
        sa, sb = BipartiteState(a, da, db), BipartiteState(b, da, db)
        fs = d_fs(a, b)
        de = np.abs(entanglement_entropy(sa) - entanglement_entropy(sb))
        d_e = d_entanglement_aware(sa, sb)
        assert np.all(fs <= d_e + SLACK)
        assert np.all(d_e <= fs + de + SLACK)

    @given(splits, st.integers(0, 2**32))
    def test_triangle(self, split, seed):
        da, db = split
        rng = make_rng(seed)
        x, y, z = (BipartiteState(bipartite_states(da, db, 2, rng), da, db) for _ in range(3))
        assert np.all(d_entanglement_aware(x, y) <= d_entanglement_aware(x, z) + d_entanglement_aware(z, y) + SLACK)

    @given(splits, st.integers(0, 2**32))
    def test_fannes_audenaert(self, split, seed):
        da, db = split
        rng = make_rng(seed)
        a, b = (BipartiteState(bipartite_states(da, db, 2, rng), da, db) for _ in range(2))
        ra, rb = partial_trace(a, "A"), partial_trace(b, "A")
        t = 0.5 * np.abs(np.linalg.eigvalsh(ra - rb)).sum(axis=-1)
        h = np.where((t > 0) & (t < 1), -t * np.log(np.where(t > 0, t, 1)) - (1 - t) * np.log(np.where(t < 1, 1 - t, 1)), 0)
        bound = t * np.log(min(da, db) - 1) + h
        assert np.all(np.abs(entanglement_entropy(a) - entanglement_entropy(b)) <= bound + SLACK)
