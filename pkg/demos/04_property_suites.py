"""Falsification pressure: properties of semantics over random DLPs.

Run with an optional instance count, e.g. ``python demos/04_property_suites.py 300``.
"""

import sys

from dlplab import harness

n = int(sys.argv[1]) if len(sys.argv) > 1 else 200
dlps = harness.random_dlps(harness.GenConfig(atoms=3, layers=2, seed=42), n)

report = harness.run_suite(harness.PROPERTIES, ["ju", "as", "ds", "rd"], dlps, {"instances": n, "seed": 42})
print(report.to_markdown())
for v in report.failures[:3]:
    print("counterexample:", v.to_json(), "| re-verified:", harness.recheck(v))

print(harness.diff_semantics(["as", "ju", "ds", "rd"], dlps).to_markdown())
