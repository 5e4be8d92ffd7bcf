"""
Steady state of a driven Lambda atom
====================================

Two ground states ``|b>``, ``|c>`` share an excited state ``|a>``. A weak
probe drives b-a, a strong control drives c-a. With the fields on two-photon
resonance the atom is pumped into the dark state and stops absorbing.
"""

import numpy as np

from eitlambda import (
    ChannelRates,
    asymptotic,
    dark_state,
    evolution_model,
    evolve,
    from_coherence,
    probe_params,
    spectrum,
    su,
    to_coherence,
)

basis = su(3)[0]
p = probe_params(delta=0.0, omega_c=0.16)
model = evolution_model(p, ChannelRates())

rep = spectrum(model)
print("slowest decay rate:", -rep.max_real_part, " zero modes:", rep.zero_modes)

x_inf = asymptotic(model)
rho = from_coherence(x_inf, basis)
d = dark_state(p.omega_b, p.omega_c)
print("excited population:", rho[2, 2].real)
print("dark-state population:", (d.conj() @ rho @ d).real)

# Start in |b> and watch the population flow into the dark state.
x0 = to_coherence(np.diag([1.0, 0, 0]), basis)
for t in (0, 10, 100, 1000):
    x = evolve(x0, model, t)
    print(f"t = {t:5d}  |x - x_inf| = {np.linalg.norm(x - x_inf):.3e}")

# With a ground-state dephasing channel the dark state is no longer perfect.
leaky = asymptotic(evolution_model(p, ChannelRates(eta_z=0.1)))
print("excited population with dephasing:", from_coherence(leaky, basis)[2, 2].real)
