"""
Permanents three ways
=====================

The same permanent from the brute-force definition, from Ryser's
inclusion-exclusion with a binary Gray code, and from the repeated-row
variant that walks multiplicity tuples instead of row subsets.
"""

import math

import numpy as np

from bosonex import expand_rows, permanent_naive, permanent_repeated, permanent_ryser

rng = np.random.default_rng(7)

# a 4-column base matrix; row multiplicities s say how often each row repeats
base = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
s = [2, 0, 2]
b = expand_rows(base, s)
print("expanded matrix is", b.shape)

print("naive     ", permanent_naive(b))
print("ryser     ", permanent_ryser(b))
value, steps = permanent_repeated(base, s, with_steps=True)
print("repeated  ", value)

# Ryser visits 2^4 row subsets; the repeated-row walk only prod(s + 1) tuples
print("subsets visited by ryser:", 2 ** b.shape[0])
print("tuples visited by the multiplicity walk:", steps)

# the all-ones k x k matrix has permanent k!; the alternating sum loses a
# few digits to cancellation as k grows
for k in (5, 10, 15):
    value = permanent_ryser(np.ones((k, k))).real
    print(f"per(J_{k}) = {value:.6e}, relative error {abs(value / math.factorial(k) - 1):.1e}")
