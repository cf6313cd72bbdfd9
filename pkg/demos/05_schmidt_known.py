"""When the Schmidt vectors are known, a better operator pair is available.

Splitting the Schmidt terms into two groups and summing each group's vectors
gives A, B with <A^dag A B^dag B> = 0, so the bound (4|<A^dag B>| - 1)/2 applies.
For maximally entangled states of even dimension it is exact.
"""
from negabound import bounds
from negabound.states import make_max_entangled, negativity_exact, random_pure

for n in range(2, 9):
    p = make_max_entangled(n)
    cert, K = bounds.best_schmidt_bound(p)
    print(f"n={n}: exact {negativity_exact(p):.3f}  bound {cert.lower_bound:.3f}  split K={K}")

print()
for seed in range(5):
    p = random_pure((4, 4), seed)
    cert = bounds.certify(p, "schmidt_known")
    print(f"random 4x4 #{seed}: exact {cert.exact_negativity:.4f}  bound {cert.lower_bound:.4f}")
