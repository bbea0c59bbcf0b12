"""Convolution of measures turns into composition of maps.

Conjugating by a unitary representation sends a complex measure mu on a
finite group to the map x -> sum_s mu({s}) pi(s) x pi(s)*. Convolving two
measures and mapping is the same as mapping each and composing, which we
check here on the transfer matrices (the maps written out as order d^2
matrices acting on vectorized inputs).
"""

import numpy as np

from ehtp import (
    convolve,
    dirac,
    from_density,
    gamma,
    make_cyclic_product,
    regular_rep,
    transfer_matrix,
)

rng = np.random.default_rng(0)

group = make_cyclic_product([12])
pi = regular_rep(group)

mu = from_density(group, rng.standard_normal(12) + 1j * rng.standard_normal(12))
nu = from_density(group, rng.standard_normal(12) + 1j * rng.standard_normal(12))

left = transfer_matrix(gamma(pi, convolve(mu, nu)).op)
right = transfer_matrix(gamma(pi, mu).op) @ transfer_matrix(gamma(pi, nu).op)

print("group:", "Z12", " rep dim:", pi.dim)
print("||transfer(map of mu*nu) - transfer(mu) transfer(nu)||_F =",
      np.linalg.norm(left - right))

# the unit of the measure algebra maps to the identity map
delta_e = dirac(group, group.identity)
unit = transfer_matrix(gamma(pi, delta_e).op)
print("point mass at e gives the identity map:",
      np.allclose(unit, np.eye(pi.dim ** 2)))

# a point mass at s acts by conjugation with pi(s)
s = 5
image = gamma(pi, dirac(group, s))
x = rng.standard_normal((pi.dim, pi.dim))
u = pi.matrices[s]
print("point mass at s conjugates by pi(s):",
      np.allclose(image.apply(x), u @ x @ u.conj().T))

# contractivity: the map never stretches more than the total variation norm
print("operator norm of transfer <= ||mu||_TV:",
      np.linalg.norm(transfer_matrix(image.op), 2) <= 1.0 + 1e-12)
