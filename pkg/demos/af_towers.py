"""Means on towers of semisimple monoids, pulled back level by level."""

from fractions import Fraction

from imean import af_tower as af, means
from imean.af_tower import AFTower

T = AFTower.uhf([2] * 6)
mu = af.uhf_unique_mean(T, 6)
print("2^infinity tower:", [str(x[0]) for x in mu.values])

S = af.realize_level(T, 3)
print("level 3 realized on", S.n, "points; solver says", means.solve(S).status)

# two blocks that mix
B = AFTower([[1], [1, 2], [3, 5]], [[[1], [2]], [[1, 1], [1, 2]]])
af.validate_tower(B)
for seed in ([Fraction(1, 3), 0], [0, Fraction(1, 5)], [Fraction(1, 8), Fraction(1, 8)]):
    m = af.tower_mean(B, 2, seed)
    print("seed", [str(s) for s in seed], "->", m.to_json()["levels"])

rep = af.check_embedding(B, 1)
print(f"\nembedding of level 1 into level 2: ok={rep.ok}, {rep.checked_pairs} pairs checked")
print("pull-back agrees with the realized map:",
      af.check_pullback_against_embedding(B, 1, [Fraction(1, 8), Fraction(1, 8)]) is None)
