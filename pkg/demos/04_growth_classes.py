"""
Growth classes of sequences
===========================

Sequences indexed by irreducible representations, sorted into five
classes.  Membership is decided from the symbolic form of the sequence.
"""
from cyclic_workbench.growth import (GrowthClass, GrowthSequence, classify, inclusion_witness, lim_prod_demo,
                                     strict_inclusions)

mark = {True: "yes", False: "no", None: "?"}
names = [c.value for c in GrowthClass]
print(f"{'sequence':>14}  " + "  ".join(f"{n[:12]:>12}" for n in names))
for text in ["0", "1", "n^3", "1/(n+1)^2", "2^n", "1/fact(n)"]:
    seq = GrowthSequence.parse(text, "0:1" if text == "0" else None)
    row = classify(seq)
    print(f"{text:>14}  " + "  ".join(f"{mark[row[c]]:>12}" for c in GrowthClass))

# %%
# Each strict inclusion comes with a separating sequence.
for lower, upper in strict_inclusions():
    print(f"{lower.value} < {upper.value}: {inclusion_witness(lower, upper)}")

# %%
# A product of colimits is not a colimit of products: the all-ones vector
# is available coordinate by coordinate but at no single stage.
cert = lim_prod_demo(5)
print("support at stage m:", cert.support_bounds)
print("first coordinate missing:", cert.first_missing)
