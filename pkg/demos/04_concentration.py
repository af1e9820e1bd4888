"""Random states in high dimension are almost orthogonal.

The overlap squared of two Haar states is Beta(1, d-1) distributed, so
E|<psi|phi>| * sqrt(d) tends to Gamma(3/2) = sqrt(pi)/2, about 0.886.
The printout puts the sampled value next to that prediction and next to
the pi/4 constant that is sometimes quoted for this limit.
"""
import numpy as np

from qmetric.experiments import ExperimentConfig, concentration_suite

records = concentration_suite(ExperimentConfig(seed=0, dims=(2, 8, 64, 512, 1000), samples=20_000))
print(f"{'d':>5} {'E[r]sqrt(d)':>12} {'Beta law':>10} {'pi/4':>8} {'mean fs':>9} {'tail(0.2)':>10}")
for r in records[:-1]:
    s = r.statistics
    print(f"{r.dim:>5} {s['meanR*sqrt(d)']:>12.4f} {s['betaMeanR*sqrt(d)']:>10.4f} {np.pi / 4:>8.4f} "
          f"{s['meanFs']:>9.4f} {s['tail[0.2]']:>10.4f}")
print("trend:", records[-1].verdict)
