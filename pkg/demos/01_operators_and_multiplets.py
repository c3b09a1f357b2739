"""Spin operators on the dipositronium product space.

Builds the 16-dimensional spin space of two electrons and two positrons,
then inspects the total-spin spectrum and the magnetic-moment diagonal.
"""

import numpy as np

from spinzeeman import (
    ProductState,
    SpinSystem,
    hermitian_eigen,
    magnetic_moment_z,
    total_spin_squared,
    total_spin_z,
)

system = SpinSystem.dipositronium()
print("particles:", ", ".join(system.names))
print("dimension:", system.dimension)
print()

# S_z is diagonal in the product basis; each ket's eigenvalue is just the
# count of ups minus downs over two.
sz = total_spin_z(system)
ket = ProductState((0, 0, 0, 1))  # |up up up down>
print(f"S_z diagonal at {ket.label}:", sz.matrix[ket.index, ket.index].real)

# The S^2 spectrum sorts the 16 product states into multiplets:
# one S=2 quintet, three S=1 triplets, two S=0 singlets.
values, _vectors = hermitian_eigen(total_spin_squared(system))
rounded = np.round(values).astype(int)
print("S^2 eigenvalue multiplicities:",
      {int(v): int(np.sum(rounded == v)) for v in sorted(set(rounded))})
print()

# The magnetic moment mu_z = mu0 (sigma_p1 - sigma_e1 + sigma_p2 - sigma_e2)
# is diagonal here too, with signed sums in {-4, -2, 0, 2, 4} mu0.
mu = magnetic_moment_z(system)
diag = np.diag(mu.matrix).real
print("mu_z diagonal values and counts:")
for value in sorted(set(diag)):
    print(f"  {value:+.0f} mu0 x {int(np.sum(diag == value))}")

print()
print("examples:")
for bits in [(0, 0, 0, 0), (0, 0, 0, 1), (1, 0, 1, 0)]:
    ket = ProductState(bits)
    print(f"  {ket.label}: {diag[ket.index]:+.0f} mu0")
