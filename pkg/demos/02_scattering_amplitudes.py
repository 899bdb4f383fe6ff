import numpy as np

from twisted_yangian import AlgebraSpec, DefectSpec, amplitude, boundary_phase, bulk_closed_form, bulk_phase, transmission_phase
from twisted_yangian.scattering import bulk_components

# Bulk phase density for sl(3) at exp(-|w|/2) = 1/2.
w = 2 * np.log(2)
print(bulk_phase(AlgebraSpec.from_N(3)).fn(w), bulk_closed_form(3)(w))

# The closed form splits into particle-particle and particle-antiparticle parts.
ws = np.linspace(-8, 8, 9)
for N in (3, 4, 5):
    bs, bsb = bulk_components(N)
    print(N, np.max(np.abs(bs(ws) + bsb(ws) - bulk_closed_form(N)(ws))))

# sl(2) is the exception: the kernel route and the universal formula differ by a constant.
spec = AlgebraSpec.from_N(2)
print(bulk_phase(spec).fn(ws) - bulk_closed_form(2)(ws))

# Amplitudes are exp(-PV int dw/w exp(-i w lam) B(w)); even B makes them pure phases.
lam = np.linspace(-4, 4, 9)
for ph in (bulk_phase(AlgebraSpec.from_N(5)), boundary_phase(AlgebraSpec.from_N(5))):
    a = amplitude(ph, lam)
    print(ph.channel, np.round(np.angle(a.value), 6), np.max(np.abs(np.abs(a.value) - 1)), a.quadrature_error.max())

# A fundamental defect at Theta = 0.5: four transmission channels.
d = transmission_phase(AlgebraSpec.from_N(5), DefectSpec(0.5, (1, 0, 0, 0, 0)))
print(d.sum_residual(ws), d.symmetry_residual(ws))
for name, ch in d.channels.items():
    a = amplitude(ch, lam)
    print(name, np.round(np.angle(a.value), 4))

# For even N the channel sum misses the last-sea kernel term.  The fundamental
# defect hides this (its last-sea factors are trivial); a generic weight shows it.
for alpha in ((1, 0, 0, 0), (2, 1, 0, 0)):
    d = transmission_phase(AlgebraSpec.from_N(4), DefectSpec(0.5, alpha))
    print(alpha, d.sum_residual(ws))
