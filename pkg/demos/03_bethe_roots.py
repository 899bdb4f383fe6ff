import numpy as np

from twisted_yangian import AlgebraSpec, DefectSpec, bae

# Ground state of the sl(5) chain with 32 sites.
spec = AlgebraSpec("odd", 2)
st = bae.solve(spec, 32)
print(st.M, st.report.max_residual, st.report.condition)
print(st.roots[0][:6])

# Root spacings against the thermodynamic density.
for L in (64, 128):
    h = bae.density_histogram(bae.solve(spec, L), 1, bins=5)
    print(L, np.round(h.empirical, 4), np.round(h.predicted, 4))

# One hole in the first sea.
new, lam_h = bae.hole_insert(st, 1, 3)
print(new.M, lam_h, bae.hole_count(new, 1))

# A fundamental defect adds one site and two extra phase factors per root.
dst = bae.solve(spec, 16, defect=DefectSpec(0.3, (1, 0, 0, 0, 0)))
print(dst.sites, dst.M, dst.report.max_residual)

# Single root, sl(2), five sites: the root is 1/(2 sqrt 3).
one = bae.solve(AlgebraSpec("even", 1), 5, seed=[[1.0 if bae.branch_is_integer(AlgebraSpec("even", 1), 5, 1) else 0.5]])
print(one.roots[0][0], 1 / (2 * np.sqrt(3)))

# States are plain JSON.
text = st.to_json()
back = bae.BetheState.from_json(text)
print(np.array_equal(bae.bae_residual(back).residuals, st.report.residuals))
