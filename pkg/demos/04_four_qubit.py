"""Four qubits split 2|2, and why coarse operators can beat fine ones.

psi = sum_jk sqrt(l_jk) |jk>|jk>. A coarse pair acting on the first qubit of
each side only gives kappa = 1/4 for the symmetric family. Two fine pairs on
orthogonal blocks give kappa_1 = l00^2 and kappa_2 = (1/2 - l00)^2, and their
bounds add, but the sum stays below the single coarse bound.
"""
from negabound import bounds, sweep
from negabound import conditions as cond
from negabound.states import make_four_qubit, negativity_exact

header, rows = sweep.run_sweep(sweep.figure_recipes(11)["fig4"])
print(sweep.to_csv(header, rows))

ops = cond.four_qubit_operator_sets()
p = make_four_qubit(0.4, 0.1, 0.4, 0.1)
print("asymmetric example: exact negativity", negativity_exact(p))
print("  coarse bound ", bounds.certify(p, "first_qubit", ops["coarse"]).lower_bound)
print("  two fine pairs", bounds.certify(p, "multi_block", pairs=[ops["fine1"], ops["fine2"]]).lower_bound)
