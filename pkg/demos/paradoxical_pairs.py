"""Paradoxical pairs of affine maps on the natural numbers."""

from imean import paradox
from imean.affine import AffineMap

two_n, two_n1 = AffineMap.affine(2), AffineMap.affine(2, 1)
weak = paradox.detect_weak([two_n, two_n1], 1)
print("found:", weak.to_json())
strong = paradox.arden_upgrade(weak, two_n1)
print("upgraded:", strong.kind, strong.verify())

# amplification: a = 4n leaves three residue classes free; a two-piece pencil fills them
a = AffineMap.affine(4)
pencil = [AffineMap([(2, 0, 4, 1)]), AffineMap([(2, 1, 4, 2)])]
amp = paradox.bike_amplify(a, pencil)
print("\namplified pair:")
print("  a^m :", amp.certificate.a.to_json())
print("  b   :", amp.certificate.b.to_json())
print("  disjoint family:", [str(s) for s in amp.family])
print("  verifies:", amp.certificate.verify())
