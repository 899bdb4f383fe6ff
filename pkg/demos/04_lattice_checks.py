import numpy as np

from twisted_yangian import lattice
from twisted_yangian.lattice import DefectRep

print(lattice.ybe_residual(2, 0.3, -0.8), lattice.ybe_residual(3, 1.1, 0.2))

# Defect representations: fundamental and the second symmetric power of gl(3).
for rep in (DefectRep.fundamental(3), DefectRep.symmetric(3, 2)):
    print(rep.name, rep.dim, rep.highest_weight, lattice.rll_residual(rep, 0.4, -0.7))

# Double-row transfer matrices commute, with or without a defect.
for defect in (None, DefectRep.fundamental(2)):
    t1 = lattice.build_transfer(2, 3, 0.2, defect, theta=0.7)
    t2 = lattice.build_transfer(2, 3, -1.3, defect, theta=0.7)
    print(t1.shape, lattice.commutator_residual(t1, t2))

# A trivial defect only multiplies t(lam) by a scalar.
lam, theta = 0.45, 0.3
plain = lattice.build_transfer(2, 2, lam)
dressed = lattice.build_transfer(2, 2, lam, DefectRep.trivial(2), theta=theta)
c = np.vdot(plain, dressed) / np.vdot(plain, plain)
print(c, -(lam - theta) * (lam + theta + 1j), np.max(np.abs(dressed - c * plain)))

# The two conjugate-L constructions agree only up to an overall sign.
rep = DefectRep.fundamental(3)
A = lattice.conjugate_L_transform(rep, 0.37)
B = lattice.conjugate_L_closed(rep, 0.37)
print(np.max(np.abs(A - B)), np.max(np.abs(A + B)))
