"""
Counting identities behind the cost model
=========================================

Averaged over Haar unitaries, every output multiset is equally likely.
That turns the expected sampler cost into pure counting, with exact
closed forms that can be checked by enumeration.
"""

from bosonex import (asymptotic_growth_constant, average_complexity_sum,
                     enumerated_multiplicity_product, expected_multiplicity_product,
                     marginal_uniformity_check, stream)

# Haar-averaged pmf is uniform: 1/3 for each of the three multisets at m=n=2
est = marginal_uniformity_check(2, 2, 2000, stream(3))
for z, mu in est.mean.items():
    print(z, f"{mu:.4f} +- {est.stderr[z]:.4f}  target {est.target}")

# mean of prod(s + 1) over all multisets, enumerated vs closed form
for m, n in [(2, 2), (4, 3), (6, 6)]:
    print((m, n), enumerated_multiplicity_product(m, n), expected_multiplicity_product(m, n))

print("complexity sum at (2, 2):", average_complexity_sum(2, 2))

for theta in (1, 2, 10, 1e4):
    print(f"growth constant theta={theta}: {asymptotic_growth_constant(theta):.6f}")
