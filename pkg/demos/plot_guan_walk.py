"""
Walking mixed-radix tuples
==========================

A reflected mixed-radix Gray code (a Guan code) lists every tuple
``0 <= r_i <= s_i`` so that neighbours differ by one in one coordinate.
That single-step property is what makes the repeated-row permanent cheap:
each step updates one row sum and one binomial weight.
"""

from bosonex.combinatorics import guan_steps

s = (1, 2)
it = guan_steps(s)
print(tuple(it.current), "start")
for v, delta in it:
    print(tuple(it.current), f"coordinate {v} moved {delta:+d}")

# zero radices are simply skipped
s = (2, 0, 1, 3)
visited = {tuple(guan_steps(s).current)}
it = guan_steps(s)
for _ in it:
    visited.add(tuple(it.current))
print(f"s = {s}: visited {len(visited)} distinct tuples, expected {3 * 1 * 2 * 4}")
