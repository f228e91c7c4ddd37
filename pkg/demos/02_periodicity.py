"""
Cyclic homology and the periodicity operator
============================================

For a truncated convolution algebra of the circle (a sum of copies of Q)
the periodicity map S: HC_{n+2} -> HC_n is an isomorphism from the start,
so HP can be read off at a small cutoff.  The dual numbers need a longer
look: S is not injective, but its image stabilizes.
"""
from cyclic_workbench import algebra as A
from cyclic_workbench.cyclic import hc_dims, hp_dims, sbi_report

s1, blocks = A.truncated_convolution("S1", 2)
print("blocks:", s1.labels)
print("HC =", hc_dims(s1, 4).dims)

hp = hp_dims(s1, 4)
print("HP =", hp.periodic, "conclusive:", hp.certificate.conclusive)

# %%
# Every node of the SBI sequence  HH_n -I-> HC_n -S-> HC_{n-2} -B-> HH_{n-1}
# is checked by comparing ranks of induced maps with kernel dimensions.
cert = sbi_report(A.dual_numbers(), 4)
for node in cert.nodes[:6]:
    print(f"{node.group:5} in {node.incoming:22} rank {node.rank_in}  dim {node.dim}  "
          f"out {node.outgoing:22} kernel {node.kernel_out}")
print("exact:", cert.exact)

# %%
# Dual numbers: HC is 2 in every even degree, yet HP is one-dimensional.
for cutoff in (4, 6):
    rep = hp_dims(A.dual_numbers(), cutoff)
    c = rep.certificate
    print(f"cutoff {cutoff}: conclusive={c.conclusive} HP={c.hp}")
