import numpy as np

from twisted_yangian import AlgebraSpec, ground_state_density, hole_energy, inverse_kernel, kernel_matrix

# Every sl(N) falls into one of two families: N = 2n+1 (odd) or N = 2n (even).
for N in range(2, 9):
    print(N, AlgebraSpec.from_N(N))

# At exp(-|w|/2) = 1/2 the kernel entries are rational numbers.
w = 2 * np.log(2)
spec = AlgebraSpec("odd", 2)
K = kernel_matrix(spec)(w)
R = inverse_kernel(spec)(w)
print(K)
print(R)
print(K @ R)  # identity up to rounding

# The inverse stays finite far out in omega; the naive cosh ratios would overflow.
print(inverse_kernel(AlgebraSpec("even", 6))(np.array([50.0, 500.0, 5000.0]))[..., 0, 0])

# Ground-state densities and hole energies, odd family: identical, cosh ratio closed form.
w = np.linspace(0, 6, 7)
for j in (1, 2):
    print(j, ground_state_density(spec, j)(w).round(6), hole_energy(spec, j)(w).round(6))

# Even family: the last sea is special.  The kernel route gives 1/cosh(n w/2),
# the hole energy is half of that.
spec = AlgebraSpec("even", 3)
print(ground_state_density(spec, 3)(w) / hole_energy(spec, 3)(w))
