"""
Composition products and free operads
=====================================

Symmetric sequences compose by summing over partitions of the inputs.  The
free operad on a sequence is spanned by rooted trees decorated by it.
"""

from dgcoalg.field import F2, QQ
from dgcoalg.symmetric_sequence import compose_product, sphere_sequence, unit_sequence
from dgcoalg.trees import ainfty_presentation, free_operad

# S^0(2): one binary operation in degree 0, with S_2 acting freely
M = sphere_sequence(QQ, 0, 2)
print("dim M(2):", M.dims(2))

# (M o M)(4) counts pairs of binary operations grafted on a partition of {1,2,3,4}
MM = compose_product(M, M, 4)
print("dim (M o M)(4):", MM.dims(4))

# the unit sequence is a two-sided unit
I = unit_sequence(QQ)
print("I o M == M o I in arity 2:", compose_product(I, M, 2).dims(2) == compose_product(M, I, 2).dims(2))

# free operad on one binary generator: planar binary trees with labelled leaves
T = free_operad(sphere_sequence(F2, 0, 2), 4)
print("dims of T(S^0(2)) in arities 1..4:", [T.dim(n) for n in range(1, 5)])

# the A-infinity operad as a quasi-free presentation, one cell per arity
P = ainfty_presentation(QQ, 4)
for g in P.generators:
    print(g["name"], "arity", g["arity"], "degree", g["degree"])
A = P.realize(4)
print("d^2 = 0 on every tree through arity 4:", A.check_d_squared().passed)
