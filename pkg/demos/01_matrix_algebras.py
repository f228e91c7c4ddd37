"""
Hochschild homology of matrix algebras
======================================

Matrix algebras have the Hochschild homology of the ground field, and a
separability idempotent explains why everything above degree 0 vanishes.
"""
from cyclic_workbench import algebra as A
from cyclic_workbench.hochschild import hh_dims
from cyclic_workbench.verifiers import separability_idempotent

# M_2 and Q side by side; the normalized complex keeps C_4 small.
for name, a in [("Q", A.field()), ("M2", A.matrix_algebra(2)), ("M3", A.matrix_algebra(3))]:
    print(f"HH({name}) =", hh_dims(a, 3).dims)

# A non-semisimple algebra for contrast: the dual numbers Q[x]/(x^2).
print("HH(Q[x]/x^2) =", hh_dims(A.dual_numbers(), 4).dims)

# The bimodule section of multiplication.  Among all solutions the one of
# least norm is returned, which for M_2 is the familiar symmetric element.
m2 = A.matrix_algebra(2)
e = separability_idempotent(m2)
print(" + ".join(f"{c} {m2.labels[i]}(x){m2.labels[j]}" for i, j, c in e.terms()))
