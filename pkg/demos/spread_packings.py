"""
Spread lines, unions and packings
=================================

The 2^m + 1 lines of the Desarguesian spread partition Z_2^{2m} minus 0.
Unions of lines are partial difference sets; grouping lines into blocks
gives several splits of the same matrix at once.
"""

# %%
from itertools import combinations

from bshm import constructions as C
from bshm.core import verify_bshm
from bshm.pds import verify_packing
from bshm.z2 import spread_lines

lines = spread_lines(3)
print(len(lines), "lines of size", len(lines[0]))

# %%
# Unions of s lines, with and without the identity.
for s in range(1, 9):
    d = C.spread_union_pds(3, s)
    _, c1 = C.pds_to_bshm(d)
    _, c2 = C.pds_to_bshm(d.with_identity())
    print(f"s={s}  {c1.params} {c1.kind:11s}  +0: {c2.params} {c2.kind}")

# %%
# Packing check: each part's character sums are a_i or a_i + delta, and each
# character lifts exactly one part.
parts = [l.without_identity() for l in spread_lines(2)]
w = verify_packing(parts, 4, [-1] * 5)
print("elevated part per character:", w.elevated[1:].tolist())

# %%
# Three blocks {0}, {1,2}, {3,4}; block 0 also takes the all-ones row.
h, certs = C.packing_to_multibshm(2, [[0], [1, 2], [3, 4]], 0)
for c in certs:
    print(c.params, c.kind, "rows", c.rows)

# %%
blocks = [list(c.rows) for c in certs]
for a, b in combinations(range(3), 2):
    print(a, b, verify_bshm(h, blocks[a] + blocks[b]).params)
