"""
Feasible parameters and the tables they form
============================================

Sweeps over (n, ell, a, b) filtered by divisibility, the mod 4 rule and
strongly regular graph feasibility.
"""

# %%
from bshm.params import classify_params
from bshm.tables import GOLDEN_FILES, format_tsv, reproduce_tables, sweep

for p in [(16, 6, 2, -2), (64, 50, 2, -6), (48, 11, 11, -1), (36, 10, 4, -2)]:
    res = classify_params(*p)
    print(p, "->", res.class_id if res else f"infeasible ({res.rule})")

# %%
print(format_tsv("equiangular", sweep("equiangular")))

# %%
# Regenerated tables against the bundled golden copies.
for fam, d in reproduce_tables().items():
    print(f"{GOLDEN_FILES[fam]}: {'ok' if d.clean else d.report()}")

# %%
# Without the Hadamard conjecture more imprimitive cases stay open.
from bshm.params import HadamardPolicy, enumerate_imprimitive

for pol in (HadamardPolicy(), HadamardPolicy(assume_conjecture=False, range_limit=100)):
    rows = enumerate_imprimitive("b0", 40, 40, policy=pol)
    print(pol.assume_conjecture, pol.range_limit, sum(r.exists == "open" for r in rows), "open")
