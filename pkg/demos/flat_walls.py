"""Certify a wall as flat, then pass flatness down to its subwalls."""

import itertools
import time

from flatwall.flatness import prove_wall_flat, subwall_flatness, verify_flat_new
from flatwall.walls import corner_access_paths, elementary_wall, subwall

host = elementary_wall(8)
g = host.graph()
D = host.boundary()
C = sorted(host.corners().values(), key=D.index)
w = subwall(host, (2, 2), 4)

t = time.time()
cert = prove_wall_flat(g, C, w, corner_access_paths(host, w))
print(f"certificate in {time.time() - t:.2f}s: |A∩B| = {len(cert.A & cert.B)}, Ω = {list(cert.omega)}")
print("verifier:", verify_flat_new(g, w, cert) or "ok")

for a, b in itertools.product(range(2), repeat=2):
    sub = subwall(w, (a, b), 3)
    c = subwall_flatness(g, w, cert, sub)
    print(f"subwall at {(a, b)}: |Ω| = {len(c.omega)}, verifier: {verify_flat_new(g, sub, c) or 'ok'}")
