"""Invariant means on a few small inverse monoids.

A mean is pinned down by its values on atom classes.  For a symmetric
inverse monoid there is one class and the mean is forced; for a product of
blocks the means form a simplex whose corners put all mass on one block.
"""

from imean import bim, means

I3 = bim.symmetric(3)
sol = means.solve(I3)
print("I_3:", sol.status, sol.witness.as_dict())
for e in (0b001, 0b011, 0b111):
    print(f"  mu({bin(e)}) = {sol.witness(e)}")

S = bim.semisimple([1, 2])
sol = means.solve(S)
print("\nI_1 x I_2:", sol.status, "dimension", sol.dim)
for v in sol.vertices:
    print("  vertex", v.as_dict(), "faithful:", means.is_faithful(S, v))
print("  barycentre", sol.witness.as_dict(), "faithful:", means.is_faithful(S, sol.witness))

rep = means.check_axioms(S, sol.witness)
print(f"  axiom audit: ok={rep.ok} after {rep.checked} checks")

# rescaling to a corner eSe
local = means.restrict(I3, means.solve(I3).witness, 0b011)
print("\nrestricted to a two-point corner of I_3:", local.values)
