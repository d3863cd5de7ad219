"""
Imprimitive splits and exhaustive row search
============================================
"""

# %%
from bshm import constructions as C
from bshm.core import add_allones_row, structure_decompose

big, cert = C.construct_ns_n_n_0(C.hadamard_matrix(12), C.hadamard_matrix(4))
print(cert.params, cert.graph.as_tuple())

perm, L = structure_decompose(big, cert.rows)
print("column classes of size", len(perm) // L.n_cols, "; L Hadamard:", L.is_hadamard())

# %%
# Flip column classes until the last block row is all ones, then drop it.
h, c = C.b0_to_bm1(big, cert.rows)
print(c.params, c.graph.as_tuple(), "all-ones row:", h.all_ones_rows())
print("back:", add_allones_row(h, c.rows)[1].params)

# %%
# Brute force over row subsets; blocks can be checkpointed and resumed.
import tempfile, os
from bshm.search import search_bshm_rows, search_with_normalization

with tempfile.TemporaryDirectory() as tmp:
    ck = os.path.join(tmp, "ck.txt")
    hits = search_bshm_rows(C.sylvester(4), 6, (2, -2), shards=8, checkpoint=ck)
    print(len(hits), "subsets;", sum(l.startswith("SHARD") for l in open(ck)), "blocks logged")

# %%
# Order 12: three rows with values {3, -1} never occur.
print(search_with_normalization(C.paley_hadamard(11), 3, (3, -1)))
