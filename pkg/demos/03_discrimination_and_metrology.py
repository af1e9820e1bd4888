"""Operational meaning of the geometry: Helstrom discrimination and the quantum
Fisher information read off the Bures distance."""
import numpy as np

from qmetric import fs_from_popt, helstrom, make_rng, qfi_finite_difference, random_povm
from qmetric.metrics import measurement_distance_l1
from qmetric.operational import qubit_phase, qubit_rotation

a = np.array([1.0, 0.0])
b = np.array([np.cos(np.pi / 6), np.sin(np.pi / 6)])
res = helstrom(a, b)
print("P_succ =", res.p_success, " recovered angle =", fs_from_popt(res.p_success), "vs pi/6 =", np.pi / 6)

# no measurement beats the Helstrom one
rng = make_rng(2)
best_random = max(measurement_distance_l1(random_povm(2, 4, rng), a, b) for _ in range(500))
print("best random L1 =", best_random, " Helstrom L1 =", res.l1_distance, " 2 sin(fs) =", 2 * np.sin(res.fs_distance))

# finite-difference QFI converges to 1 for both qubit families
for family in (qubit_rotation, qubit_phase):
    for step in (1e-2, 1e-3, 1e-4):
        est = qfi_finite_difference(family, 0.3, step)
        print(f"{family.__name__:<15} step={step:.0e}  F_Q={est.value:.10f}")
