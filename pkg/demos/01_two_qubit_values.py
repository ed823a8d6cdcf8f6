"""Values of the basic observables of two entangled qubits.

Run with ``python3 demos/01_two_qubit_values.py``.  The state is the
generalized Bell state e^{-i zeta/2} q_+ |00> + e^{i zeta/2} q_- |11>.
"""

# %%
import numpy as np

from qvalues import dh_value, nc_value, twoqubit, uncertainty

np.set_printoptions(precision=4, suppress=True)
r, zeta = 0.6, np.pi / 2
psi = twoqubit.bell_like_state(r, zeta)
print("amplitudes z00, z01, z10, z11:", psi.amplitudes)

# %% [markdown]
# The Deutsch-Hayden value needs a unitary whose first column is the state.
# ``U_q`` is the simplest such completion for this family.

# %%
comp = twoqubit.u_q_completion(r, zeta)
for name, B in twoqubit.basic_observables().items():
    print(f"\n[{name}]_DH =")
    print(dh_value(B, comp).matrix)

# %% [markdown]
# The (0,0) entry of every DH value is the expectation value.  The rest of
# the matrix depends on how ``U_q`` was completed, which the noncommutative
# value avoids: it is built from the state alone.

# %%
for name, B in twoqubit.basic_observables().items():
    val = nc_value(B, psi)
    print(f"{name}: f = {val.f.real:+.4f}, V = {val.v}, sum |V|^2 = {uncertainty(val):.4f}")

print("\n1 - r^2 =", 1 - r * r, "(the spread of sigma3A)")
