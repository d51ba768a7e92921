"""Type monoids and the degree-by-degree search for a Tarski obstruction."""

from imean import bim, typemonoid as tm
from imean.typemonoid import TypeElement, Verdict

P = tm.present(bim.semisimple([2, 3]))
print("I_2 x I_3 presentation:", P.to_json())
print("delta of one point in each block:", tm.delta(P, 0b00101).coeffs)

x, y = P.element([1, 2]), P.element([2, 3])
print("x <= y:", tm.leq(P, x, y).value, "  y <= x:", tm.leq(P, y, x).value)
print(tm.tarski_obstruction(P, 10).describe())

# a hand-written presentation where the unit absorbs itself
Q = tm.TypePresentation(["u"], [((1,), (2,))], TypeElement((1,)))
ob = tm.tarski_obstruction(Q, 5)
print("\nwith u = 2u:", ob.describe())

# bounded searches can be honest about what they did not reach
R = tm.TypePresentation(["g"], [((2,), (4,))], Q.unit)
v = tm.leq(R, R.element([3]), R.element([2]), bound=3)
print("3g <= 2g under 2g = 4g with bound 3:", v.value)
assert v is Verdict.UNKNOWN
