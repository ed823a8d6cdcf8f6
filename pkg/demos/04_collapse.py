"""Pointer coupling and the inverse of the completion.

A CNOT copies qubit B into a pointer C.  Undoing the entanglement of A and
B with ``U_q^-1`` maps the state back to ``|00>``, but that unitary is not
a product across A|B.
"""

# %%
import numpy as np

from qvalues import twoqubit

np.set_printoptions(precision=3, suppress=True)
psi = twoqubit.bell_like_state(0.6, 0.0)
print("after CNOT on B -> C:", twoqubit.cnot_pointer(psi).amplitudes)

# %%
for r in (0.0, 0.3, 0.6):
    rep = twoqubit.collapse_analysis(r, 0.0)
    print(f"r = {r}: |U_q^-1 psi - e0| = {rep.inverse_residual:.1e}, "
          f"operator Schmidt rank of U_q^-1 = {rep.rank_inverse_AB}")
print("pointer coupling ranks:", twoqubit.collapse_analysis(0.6, 0.0).cnot_ranks)
