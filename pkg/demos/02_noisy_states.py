"""Mixing the pure state with white noise.

rho = p |psi><psi| + (1 - p) I/4. The gap of the first condition shrinks to
p^2 l0 l1 - (1 - p)/4, and the negativity computed from the eigenvalues of the
partial transpose is max(0, p sqrt(l0 l1) - (1 - p)/4).
"""
import numpy as np

from negabound import bounds
from negabound import conditions as cond
from negabound.states import make_noisy, negativity_exact

pair = cond.sigma_minus_pair()
for p in (1.0, 0.9, 2 / 3, 0.5):
    print(f"p = {p:.3f}")
    for lam in (0.1, 0.3, 0.5):
        s = make_noisy(lam, p)
        k = cond.kappa_first(s, pair).kappa
        cert = bounds.certify(s, "first_qubit", pair)
        closed = max(0.0, p * np.sqrt(lam * (1 - lam)) - (1 - p) / 4)
        status = f"bound {cert.lower_bound:.4f}" if cert.applicable else "condition fails"
        print(f"  l0={lam:.1f} kappa={k:+.4f} N={negativity_exact(s):.4f} (closed form {closed:.4f}) {status}")

# The noise threshold for detection by this pair: kappa > 0 needs p^2 l0 l1 > (1-p)/4.
# At l0 = 1/2 that is p > (sqrt 5 - 1)/2, while the state is entangled for p > 1/3.
print()
print("detection threshold at l0=1/2:", (np.sqrt(5) - 1) / 2, "entanglement threshold:", 1 / 3)
