"""
Equiangular splits from bent functions
======================================

The support of x.y on GF(2)^m x GF(2)^m is a difference set in Z_2^{2m}.
Its rows in the character table give a Hadamard matrix whose top block has
column inner products +/-2^{m-1}.
"""

# %%
import numpy as np

from bshm import constructions as C
from bshm.core import extract_unbiased_mate, to_regular_form, verify_bshm
from bshm.z2 import character_table

d = C.bent_difference_set(2)
print(len(d), "elements, spectrum", sorted(set(d.spectrum[1:].tolist())))

# %%
# The certificate is the whole story: parameters, type, graph.
h, cert = C.pds_to_bshm(d)
print(cert.to_json(indent=2))

# %%
# Negating columns to make one row all ones keeps the split and makes the
# graph strongly regular. Which graph depends on where that row sits.
outside = next(i for i in range(16) if i not in d)
for label, pivot in (("outside", outside), ("inside", d.elements[0])):
    g = verify_bshm(to_regular_form(h, d.elements, pivot), d.elements).graph
    print(f"pivot {label:7s} -> {g.as_tuple()}")

# %%
# At n = 4a^2 the split hands us a second Hadamard matrix unbiased to H.
L = extract_unbiased_mate(h, d.elements)
cross = h.to_array(np.int64) @ L.to_array(np.int64).T
print("H L^T entries:", sorted(set(cross.ravel().tolist())))

# %%
for m in (3, 4):
    _, c = C.pds_to_bshm(C.bent_difference_set(m))
    print(m, c.params, c.graph.as_tuple())
