"""Spin-j coupled to a field mode: Schmidt pairs from the conservation law.

Starting from (|-j> + |-j+4>)|0>/sqrt 2, the two excitation sectors overlap in
a predictable way, and the product vectors |-j+s>|4-s> for s = 1, 2, 3 stay
Schmidt pairs of the evolved state at every time. The check confirms them from
an SVD, then builds a Schmidt-known bound from those pairs alone.
"""
import math

import numpy as np

from negabound import dicke

c = 1 / math.sqrt(2)
m = dicke.superposition_model(4.0, 0, 4, g=0.2)
for t in (1.0, 3.7, 20.0, 137.0):
    rep = dicke.schmidt_vector_check(m, c, c, 0, 4, t)
    print(f"t={t:6.1f}", ", ".join(f"s={p['s']}:{p['status']}" for p in rep["pairs"]))

# Larger spins keep more weight in the identified pairs.
m6 = dicke.superposition_model(6.0, 0, 8, g=0.2)
cert, t = max(((dicke.dicke_schmidt_bound(m6, c, c, 0, 8, t), t) for t in np.linspace(1, 200, 200)), key=lambda x: x[0].lower_bound)
print(f"j=6: best bound {cert.lower_bound:.4f} at t={t:.1f}, exact {cert.exact_negativity:.4f}")

# j = 1/2 with one photon is a Rabi oscillation at frequency g.
m1 = dicke.DickeModel(0.5, 1, g=0.2)
ts = np.linspace(0, 30, 7)
print("rabi", np.round(dicke.rabi_population(m1, ts), 6), np.round(np.cos(0.2 * ts) ** 2, 6))
