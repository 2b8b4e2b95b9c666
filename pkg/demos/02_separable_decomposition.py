# Building a separable decomposition
#
# For a PPT family state, mixing the weighted eigenvectors with a 3x3
# unitary of flat moduli and tuned phases yields three product vectors.
# We generate a PPT instance with random local phases, run the
# construction and check the reconstruction.

import numpy as np

from shiftppt import build_coefficient_matrices, build_density, decompose, ppt_analytic, sample_ppt, verify_decomposition
from shiftppt.linalg import singular_values

np.set_printoptions(precision=4, suppress=True, linewidth=120)

params = sample_ppt(seed=2026, phase_twist=True)
report = ppt_analytic(params)
print("PPT:", report.is_ppt, " angles:", np.round([report.theta, report.theta_p, report.theta_pp], 4))
print("theta + theta' + theta'' =", round(report.theta + report.theta_p + report.theta_pp, 12))

dec = decompose(params)
print("mixing unitary |U| =\n", np.abs(dec.unitary.U))

# Every coefficient matrix has a single nonzero singular value.
for l, B in enumerate(build_coefficient_matrices(params, dec.unitary)):
    print(f"B_{l} singular values:", singular_values(B))

for l, (w, a, b) in enumerate(zip(dec.weights, dec.a, dec.b)):
    print(f"psi_{l}: weight {w:.6f}\n  a = {a}\n  b = {b}")

print("max |rho - sum w |ab><ab||| =", verify_decomposition(build_density(params), dec))

# Rotating the column phases gives another valid decomposition.
other = decompose(params, base_phis=(0.4, -1.0, 2.2))
print("alternative residual:", other.residual)
