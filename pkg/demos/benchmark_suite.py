"""
Running the benchmark harness from Python
=========================================

Same as ``smooth-tower bench`` but keeps the records in memory.
"""

import tempfile

from smooth_tower import bench

# the bivariate function over the ten-entry schedule
fn = next(f for f in bench.CORPUS if f.label == "sin-x-exp-y2")
records = bench.run_suite([fn], reps=3)

for rep in bench.REPRESENTATIONS:
    rows = [r for r in records if r.representation == rep]
    print(rep, [r.coeff_computations for r in rows])
    print("  growth exponent", round(bench.growth_exponent(rows), 3))

# CSV files land in multdiffupto-<representation>/<function>.csv
with tempfile.TemporaryDirectory() as out:
    for path in bench.write_results(records, out):
        print(path.relative_to(out))
        print(path.read_text().splitlines()[0])
