# Crossing from separable to distillable
#
# Interpolate linearly from the symmetric PPT state to a state with
# unequal weights. The smallest eigenvalue of the partial transpose moves
# continuously and leaves zero once; there is no bound-entangled stretch.

import numpy as np

from shiftppt import ShiftStateParams, sample_ppt, sweep, symmetric_params

u = (1 / np.sqrt(3),) * 3
end = ShiftStateParams((0.5, 0.3, 0.2), u, u, u)

records = sweep(symmetric_params(), end, steps=20)
print(f"{'t':>5} {'min eig(rho^pt)':>16} {'spread':>8}  verdict")
for r in records:
    print(f"{r.t:5.2f} {r.min_eigenvalue_pt:16.3e} {r.magnitude_spread:8.4f}  {r.verdict}")

# The same from a generated PPT start point, summarised.
records = sweep(sample_ppt(seed=9), end, steps=100)
first_bad = next(r.t for r in records if r.verdict != "Separable")
print("\ngenerated start: first entangled sample at t =", first_bad)
