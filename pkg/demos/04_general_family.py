# Odd dimensions beyond three
#
# The shift construction extends to rank-d states on d x d systems for odd
# d. Only the numeric PPT test applies there.

import numpy as np

from shiftppt import GeneralShiftParams, build_density_general, matrix_rank, ppt_numeric

rng = np.random.default_rng(0)
for d in (3, 5, 7):
    flat = GeneralShiftParams(d, (1 / d,) * d, ((d**-0.5,) * d,) * d)
    rho = build_density_general(flat)
    print(f"d={d} flat:   rank {matrix_rank(rho)}, trace {np.trace(rho).real:.12f}, PPT {ppt_numeric(rho, d, d)}")

    lam = rng.dirichlet(np.ones(d))
    amps = []
    for _ in range(d):
        v = rng.normal(size=d) + 1j * rng.normal(size=d)
        amps.append(tuple(v / np.linalg.norm(v)))
    rho = build_density_general(GeneralShiftParams(d, tuple(lam / lam.sum()), tuple(amps)))
    print(f"d={d} random: PPT {ppt_numeric(rho, d, d)}")
