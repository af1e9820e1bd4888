"""Distances between rays: Fubini-Study, Bures, trace distance, and why the plain
Euclidean distance between amplitude vectors is not one of them."""
import numpy as np

from qmetric import BipartiteState, basis_state, d_bures, d_entanglement_aware, d_fs, d_hilbert, d_trace_pure
from qmetric import entanglement_entropy, haar_states, make_rng

ket0 = basis_state(2, 0)
for theta in (0.0, np.pi / 6, np.pi / 4, np.pi / 2):
    phi = np.array([np.cos(theta), np.sin(theta)])
    print(f"theta={theta:.4f}  fs={d_fs(ket0, phi):.4f}  bures={d_bures(ket0, phi):.4f}  trace={d_trace_pure(ket0, phi):.4f}")

# a global sign is physically invisible, yet the amplitude distance sees it
psi = haar_states(3, 1, make_rng(0))[0]
print("fs(-psi, psi) =", d_fs(-psi, psi), "  hilbert(-psi, psi) =", d_hilbert(-psi, psi))

# Bures is a monotone reparameterization of the Fubini-Study angle
rng = make_rng(1)
a, b = haar_states(8, 5, rng), haar_states(8, 5, rng)
print("bures - 2 sin(fs/2):", np.max(np.abs(d_bures(a, b) - 2 * np.sin(d_fs(a, b) / 2))))

# Bell states share their marginals; only the global geometry tells them apart
s = 1 / np.sqrt(2)
plus = BipartiteState(np.array([s, 0, 0, s]), 2, 2)
minus = BipartiteState(np.array([s, 0, 0, -s]), 2, 2)
print("E(Phi+) =", entanglement_entropy(plus), " E(Phi-) =", entanglement_entropy(minus))
print("d_E(Phi+, Phi-) =", d_entanglement_aware(plus, minus), "= pi/2")
