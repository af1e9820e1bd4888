"""Run the axiom harness over the built-in candidates and print the verdict matrix."""
from qmetric import ConformanceConfig, run_conformance
from qmetric.metrics import bures_candidate, entanglement_candidate, fs_candidate, hilbert_candidate, measurement_candidate
from qmetric.povm import basis_povm

config = ConformanceConfig(trials=100, seed=0)
candidates = [fs_candidate(), bures_candidate(), hilbert_candidate(),
              measurement_candidate(basis_povm(2)), entanglement_candidate()]

for c in candidates:
    report = run_conformance(c, config)
    print(f"\n{c.name}: flags={[f.value for f in report.flags]} claims hold={report.claims_hold}")
    for v in report.verdicts:
        scope = f"[{v.scope}]" if v.scope else ""
        print(f"  {v.axiom.value + scope:<32} {v.status.value:<14} worst={v.max_violation:.3g}")
