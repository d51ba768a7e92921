"""A bijection assembled from two matchings and a connecting bijection."""

import random

from imean import bim, paradox

rng = random.Random(3)
k = 4
E = list(range(2 * k))
M, N = E[:k], E[k:]
phi = dict(zip(M, rng.sample(N, k)))
E2 = [f"y{i}" for i in range(2 * k)]
P, Q = E2[:k], E2[k:]
psi = dict(zip(P, rng.sample(Q, k)))
alpha = dict(zip(E, rng.sample(E2, 2 * k)))

res = paradox.kuratowski_bijection(E, M, N, phi, E2, P, Q, psi, alpha)
print("M -> Q:", res.bijection)
for word, piece in sorted(res.pieces.items()):
    print(f"  {' . '.join(word):>18}: {piece}")

for n in range(1, 5):
    print(f"property holds on I_{n}:", paradox.check_kuratowski_property(bim.symmetric(n)))
