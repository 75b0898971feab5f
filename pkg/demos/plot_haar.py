"""
Haar random unitaries
=====================

QR of a complex Ginibre matrix, with the phases of R's diagonal pushed
back into Q, gives a unitary distributed by Haar measure. Without the
phase fix the distribution is biased.
"""

import numpy as np

from bosonex import first_columns, haar_unitary, stream, unitarity_residual

u = haar_unitary(5, stream(0))
print("||U^H U - I|| =", unitarity_residual(u))

# the first n columns are the interferometer seen by n input photons
a = first_columns(u, 3)
print("column block shape", a.shape)

# E|U_11|^2 = 1/m for Haar measure
m = 4
vals = [abs(haar_unitary(m, stream(1, t))[0, 0]) ** 2 for t in range(4000)]
print(f"mean |U_11|^2 over 4000 draws: {np.mean(vals):.4f} (exact {1 / m})")
