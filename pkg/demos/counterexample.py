"""The strict flatness rule fails on a counterwall; the relaxed one holds.

Pass --r4 to also scan the three-brick window above a height-4 subwall
(61,875 peg choices, a few minutes).
"""

import sys
import time

from flatwall.counterexample import (CounterwallSpec, build_counterwall, exhibit_cross, parameter_report,
                                     reproduce_appendix, scan_window, window, window_intervals,
                                     window_peg_choices)

cw = build_counterwall(CounterwallSpec.uniform(6))
anchor, r = (1, 1), 3
print("window bricks above the subwall:", window(cw, anchor, r))

P = next(iter(window_peg_choices(window_intervals(cw, anchor, r))))
for case in "AB":
    c = exhibit_cross(cw, anchor, r, (), P, case)
    print(f"case {case}: {c.path1[0]}..{c.path1[-1]} ({len(c.path1)}) crosses "
          f"{c.path2[0]}..{c.path2[-1]} ({len(c.path2)})")

t = time.time()
rep = reproduce_appendix(6, 3)
print(f"{rep['strict']['choices']} peg choices, all refuted: {rep['strict']['ok']}; "
      f"relaxed certificate {rep['relaxed']['status']} and verified: {rep['relaxed']['verified']} "
      f"({time.time() - t:.0f}s)")

p = parameter_report()
print(f"t = 6: R = {p['R']} ({p['R_digits']} digits), routes agree: {p['agree']}, r even: {p['r_even']}")

if "--r4" in sys.argv:
    t = time.time()
    big = scan_window(cw, anchor, 4, full_check_every=5000)
    print(f"height 4: {big.choices} choices, ok {big.ok} ({time.time() - t:.0f}s)")
