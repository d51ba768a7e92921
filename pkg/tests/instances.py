"""Hand-built and random instances shared by the unit and acceptance suites."""

from fractions import Fraction

from imean.af_tower import AFTower
from imean.affine import AffineMap


def bike_instances():
    """Twenty pairs ``(a, pencil)``: ``a`` total, the pencil covers N and lands off r(a)."""
    out = []
    # the two worked cases
    out.append((AffineMap.affine(2, 0), [AffineMap.affine(2, 1)]))
    out.append((AffineMap.affine(4, 0), [AffineMap([(2, 0, 4, 1)]), AffineMap([(2, 1, 4, 2)])]))
    for k in (2, 3, 4, 5):
        for r in (0, k - 1):
            for m in (1, 2, 3):
                if len(out) == 20:
                    return out
                if (k, r, m) in ((2, 0, 1), (4, 0, 2)):
                    continue
                a = AffineMap.affine(k, r)
                # target classes modulo k*m avoiding r mod k
                M2 = k * m
                free = [t for t in range(M2) if t % k != r]
                pencil = [AffineMap([(m, i, M2, free[(i * 7 + k) % len(free)])]) for i in range(m)]
                # distinct targets keep each b_i injective; ranges of different b_i may overlap
                out.append((a, pencil))
    return out


def random_kuratowski(rng, max_half=5):
    k = rng.randint(0, max_half)
    E = list(range(2 * k))
    rng.shuffle(E)
    M, N = E[:k], E[k:]
    phi = dict(zip(M, rng.sample(N, k)))
    E2 = [f"y{i}" for i in range(2 * k)]
    rng.shuffle(E2)
    P, Q = E2[:k], E2[k:]
    psi = dict(zip(P, rng.sample(Q, k)))
    alpha = dict(zip(E, rng.sample(E2, 2 * k)))
    return E, M, N, phi, E2, P, Q, psi, alpha


def random_tower(rng, depth=None):
    """A random valid tower: pick each map, then the next level is forced."""
    depth = depth if depth is not None else rng.randint(1, 5)
    levels, maps = [[1]], []
    for _ in range(depth):
        k = rng.randint(1, 4)
        M = [[rng.randint(0, 3) for _ in levels[-1]] for _ in range(k)]
        for j in range(len(levels[-1])):
            if all(M[l][j] == 0 for l in range(k)):
                M[rng.randrange(k)][j] = rng.randint(1, 3)
        nxt = [sum(a * b for a, b in zip(row, levels[-1])) for row in M]
        # rows of zeros would give empty blocks; give them one copy of block 0
        for l in range(k):
            if nxt[l] == 0:
                M[l][0] = 1
                nxt[l] = levels[-1][0]
        levels.append(nxt)
        maps.append(M)
    return AFTower(levels, maps)


def random_seed_vector(rng, m, positive=False):
    w = [Fraction(rng.randint(1 if positive else 0, 5)) for _ in m]
    if not any(w):
        w[0] = Fraction(1)
    total = sum(a * b for a, b in zip(m, w))
    return [x / total for x in w]
