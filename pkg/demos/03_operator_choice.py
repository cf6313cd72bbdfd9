"""Different operator pairs see different parts of the same state.

kappa_1 uses A = B = |0><1|. kappa_2 uses the x-basis pair A = |+x><-x|,
B = |-x><+x|. The x-basis pair is weaker near the product states and fails
for l0 < 0.057109 and l0 > 0.942891; the sweep writes both columns as CSV.
"""
from negabound import sweep
from negabound import conditions as cond
from negabound.states import make_bell_like

header, rows = sweep.run_sweep(sweep.figure_recipes(11)["fig3"])
print(sweep.to_csv(header, rows))

pair = cond.x_basis_pair()
roots = sweep.zero_crossings(lambda lam: cond.kappa_first(make_bell_like(lam), pair).kappa, 0, 1)
print("kappa_2 changes sign at", [round(r, 6) for r in roots])
