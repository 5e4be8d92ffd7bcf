"""
The coherence vector of a three-level atom
==========================================

A density matrix of a qutrit is ``rho = 1/3 + x . lambda`` with eight real
numbers ``x`` and the Gell-Mann matrices ``lambda``. The Lindblad equation
turns into an affine ODE ``dx/dt = M x + b``. Here we build ``(M, b)`` in two
independent ways and check that they agree.
"""

import numpy as np

from eitlambda import LindbladChannel, assemble, model_from_superoperator, su, to_coherence
from eitlambda.su_algebra import operator_from_vector

basis, sc = su(3)
print("generators:", basis.size, " nonzero f_rst:", np.count_nonzero(sc.f), " nonzero d_rst:", np.count_nonzero(sc.d))

# f_123 = 1 and f_458 = sqrt(3)/2, as for the usual Gell-Mann matrices
print("f_123 =", sc.f[0, 1, 2], " f_458 =", sc.f[3, 4, 7])

# A pure state sits on the sphere |x|^2 = 1/3, a mixed one inside it.
pure = np.diag([1.0, 0, 0])
mixed = np.diag([0.5, 0.3, 0.2])
for name, rho in (("pure", pure), ("mixed", mixed)):
    x = to_coherence(rho, basis)
    print(f"{name:>5}: |x|^2 = {x @ x:.4f}")

# Random Hamiltonian and two random jump operators.
rng = np.random.default_rng(0)
omega = rng.normal(size=8)
channels = [LindbladChannel(f"L{i}", rng.normal(size=8) + 1j * rng.normal(size=8)) for i in range(2)]

contracted = assemble(omega, channels, sc)
direct = model_from_superoperator(operator_from_vector(omega, basis), channels, basis)
print("max |M - M_direct| =", np.abs(contracted.m - direct.m).max())
print("max |b - b_direct| =", np.abs(contracted.b - direct.b).max())
