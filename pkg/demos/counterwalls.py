"""Bricks with crossing chords, and walls built from them."""

from flatwall.counterexample import (REDUCED_I, REDUCED_II, CounterwallSpec, build_counterwall, check_no_k6,
                                     counterwall_dot, full_brick, reduced_brick)
from flatwall.graph import is_planar

for name, b in [("full", full_brick()), ("reduced I", reduced_brick("I")), ("reduced II", reduced_brick("II"))]:
    print(f"{name:10} brick: {len(b)} vertices, {b.num_edges()} edges, omega degree {b.degree('omega')}")

for R in range(1, 5):
    full = build_counterwall(CounterwallSpec.uniform(R)).graph
    red = [is_planar(build_counterwall(CounterwallSpec.uniform(R, k)).graph) for k in (REDUCED_I, REDUCED_II)]
    print(f"R={R}: {len(full)} vertices, full planar {is_planar(full)}, reduced planar {red}")

for R in (2, 3):
    res = check_no_k6(CounterwallSpec.uniform(R))
    print(f"K6 minor in the full R={R} counterwall: {res.status} after {res.steps} steps")

with open("counterwall3.dot", "w") as fh:
    fh.write(counterwall_dot(build_counterwall(CounterwallSpec.uniform(3))))
print("wrote counterwall3.dot")
