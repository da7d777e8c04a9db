"""
Steenrod squares from the chain-level E-infinity structure
===========================================================

Normalized chains on a simplicial set carry an action of the Barratt-Eccles
operad.  Dualizing the arity-2 part gives the cup-i products, and
``Sq^i(x) = x cup_{q-i} x`` on a class of degree q.
"""

from dgcoalg.field import F2, QQ
from dgcoalg.simplicial import rp2, torus
from dgcoalg.steenrod import cohomology, commutativity_defect, cup, steenrod_square, structure

# the 6-vertex real projective plane
X = rp2()
print(X)

# mod 2 cohomology is F_2 in degrees 0, 1, 2; rational cohomology only in degree 0
print("H^*(RP^2; F_2) betti:", cohomology(X, F2).betti())
print("H^*(RP^2; Q)   betti:", cohomology(X, QQ).betti())

# Sq^1 on the generator of H^1 is the Bockstein, which is nonzero here
H = cohomology(X, F2)
(a,) = H.generators(1)
r = steenrod_square(X, 1, a)
print("Sq^1 a lands in degree", r.degree, "with class", r.coordinates)

# the top square is the cup square, and squares above the degree vanish
S = structure(X)
print("Sq^1 a == a cup a:", r.cochain == cup(S, a, a))
print("Sq^2 a is zero:", steenrod_square(X, 2, a, S, H).is_zero)

# on the torus the cup_1 product is an explicit homotopy for graded commutativity
T = torus()
HT, ST = cohomology(T, QQ), structure(T, QQ)
x, y = HT.generators(1)
diff, homotopy = commutativity_defect(ST, x, y)
print("x cup y - (-1) y cup x == -delta(x cup_1 y):", diff == homotopy)
