"""Rook matrices over I_3 and their translation into bijections of tagged sets."""

import random

from imean import bim, rook
from imean.affine import AFFINE, AffineMap

rng = random.Random(5)
I3 = bim.symmetric(3)
A = rook.random_rook(I3, 2, 3, rng)
print("A =", A.to_json())
print("A A* A == A:", rook.product(rook.product(A, rook.star(A)), A) == A)

X, Y, f = rook.rook_to_bijection(A)
print("as a bijection of tagged points:")
for (x, j), (y, i) in sorted(f.items()):
    print(f"  ({x}, col {j}) -> ({y}, row {i})")
print("back to the same matrix:", rook.bijection_to_rook(X, Y, f, I3) == A)

print("\ndegree-1 Tarski matrix over I_3:", rook.search_tarski_degree1(I3))
T = rook.RookMatrix(AFFINE, 1, 2, {(0, 0): AffineMap.affine(2), (0, 1): AffineMap.affine(2, 1)})
print("[2n  2n+1] over the affine monoid is Tarski:", rook.is_tarski(T, 1))
