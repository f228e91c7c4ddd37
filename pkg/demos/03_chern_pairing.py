"""
Chern characters of idempotents
===============================

Each minimal idempotent of a block algebra gives an even cyclic cycle.
Pairing those cycles with the normalized block traces gives the identity
matrix: the characters separate the blocks.
"""
from cyclic_workbench import algebra as A
from cyclic_workbench.chern import chern_character, chern_matrix
from cyclic_workbench.cyclic import mixed_complex

a, blocks = A.truncated_convolution("SU2", 3)
print("block sizes:", blocks.block_sizes)
for row in chern_matrix(a, blocks, 4).to_dense():
    print(" ".join(str(x) for x in row))

# The higher components are genuine chains, not zero, yet they close up
# under b + B.
mc = mixed_complex(a, 4)
e = blocks.minimal_idempotent(2)
ch = chern_character(a, e, 4, complex=mc)
print("component sizes:", [len(c) for c in ch.components])
print("closed:", ch.is_closed(mc))
