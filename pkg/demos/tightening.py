"""Loosen a rendition by merging cells, then tighten it back."""

import random
import sys

sys.path.insert(0, __file__.rsplit("/", 2)[0])
from tests.helpers import coarsen, random_rural  # noqa: E402

from flatwall.tighten import check_tight_properties, tighten  # noqa: E402

rng = random.Random(7)
for trial in range(5):
    rho = random_rural(rng)
    loose = coarsen(rho, rng, 4)
    log = []
    tight = tighten(loose, log=log, check=True)
    print(f"{len(rho.graph)} vertices: {len(rho.cells)} cells, merged to {len(loose.cells)}, "
          f"rewrites {[name for name, _ in log]}, back to {len(tight.cells)} cells, "
          f"problems {check_tight_properties(tight)}")
