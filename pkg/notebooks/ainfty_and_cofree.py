"""
A-infinity coalgebras, negative controls and cofree coalgebras
===============================================================

The linear dual of a truncated polynomial algebra is a coassociative
coalgebra, so it satisfies the A-infinity relations with all higher
cooperations zero.  Random perturbations touching the counit break them.
"""

from dgcoalg.chain_complex import ChainComplex, GradedVectorSpace
from dgcoalg.coalgebra import perturb_ainfty, truncated_polynomial_dual, verify_ainfty
from dgcoalg.dual_schur import cofree_coalgebra
from dgcoalg.field import F2
from dgcoalg.symmetric_sequence import sphere_sequence
from dgcoalg.trees import free_operad

# dual of F_2[t]/t^3, keeping the counit
A = truncated_polynomial_dual(F2, 3, counital=True)
print("carrier:", A.carrier.dims())
print("relations through n = 4:", verify_ainfty(A, 4).status)

# a seeded perturbation of a term involving the counit element fails, with a witness
B, (n, key, c) = perturb_ainfty(A, 0, 4, involving="x0")
R = verify_ainfty(B, 4)
print("perturbed Delta_%d at %s:" % (n, key), R.status)
print("first witness:", R.witnesses[0])

# cofree coalgebra on the ground field over the free operad on one unary
# generator of degree 1: one class in each degree of the window
P = free_operad(sphere_sequence(F2, 1, 1), 1, (0, 5))
k = ChainComplex(F2, GradedVectorSpace({0: ["v"]}), {})
res = cofree_coalgebra(P, k, 1, (-5, 0))
print("L(T(S^1(1)))(k) dims:", dict(sorted(res.complex.dims().items())))
print("provenance:", res.provenance)
