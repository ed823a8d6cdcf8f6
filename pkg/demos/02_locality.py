"""Local operations elsewhere leave a subsystem's values untouched.

A unitary ``W`` acting on qubit B changes the global state, yet the DH
value of an observable on qubit A is unchanged and its noncommutative
value is only transported: ``f' = f`` and ``V' = conj(W) V``.
"""

# %%
import numpy as np

from qvalues import (complete_unitary, lift_local, nc_value, sample_random,
                     transport_under_local_process, verify_strong_locality)

dims = (2, 2)
phi = sample_random("state", 4, seed=1)
B_A = sample_random("hermitian", 2, seed=2).matrix
U_B = sample_random("unitary", 2, seed=3).matrix

# %% [markdown]
# Strong locality of DH values: ``[W^dag B W] = [B]`` for ``W`` on B.

# %%
comp = complete_unitary(phi)
print("DH residual:", verify_strong_locality(B_A, 0, U_B, comp, dims))

# %% [markdown]
# The same process seen through the noncommutative value.

# %%
B = lift_local(B_A, 0, dims)
W = lift_local(U_B, 1, dims)
before = nc_value(B, phi)
after = transport_under_local_process(before, B, W, phi)
print("f before/after:", before.f.real, after.f.real)
print("V' - conj(W) V:", np.max(np.abs(after.v - W.conj() @ before.v)))

# %% [markdown]
# An operation on A itself is not a local process for ``B`` and is refused.

# %%
try:
    transport_under_local_process(before, B, lift_local(U_B, 0, dims), phi)
except ValueError as exc:
    print("refused:", exc)
