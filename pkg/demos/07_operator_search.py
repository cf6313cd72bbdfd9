"""Searching over rank-one operator pairs.

For a given state, the pair (eta0, eta1), (xi0, xi1) is parameterized by two
chains of phased Givens rotations per side; a coordinate pattern search then
maximizes the bound. Restart 0 starts at the canonical pair, so the result
can only improve on it.
"""
from negabound import bounds, search
from negabound import conditions as cond
from negabound.states import make_noisy, random_mixed

for lam, p in ((0.3, 1.0), (0.2, 0.95), (0.5, 0.9)):
    s = make_noisy(lam, p)
    for method in ("first_qubit", "second_qubit"):
        canon_pair = cond.sigma_plus_pair() if method == "second_qubit" else cond.sigma_minus_pair()
        canon = bounds.certify(s, method, canon_pair)
        res = search.optimize(s, search.SearchConfig(method, restarts=4))
        print(
            f"l0={lam} p={p} {method:13s} canonical {canon.lower_bound:.4f} "
            f"searched {res.best_certificate.lower_bound:.4f} exact {canon.exact_negativity:.4f}"
        )

# A qutrit-qubit state where no preset pair exists.
s = random_mixed((3, 2), 1, 4)
res = search.optimize(s, search.SearchConfig("first_qubit", restarts=6, seed=2))
print("3x2 rank-1 state:", res.best_certificate.lower_bound, "<=", res.best_certificate.exact_negativity)
