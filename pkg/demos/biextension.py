"""
Partial group laws on a bilinear-twist biextension
===================================================

Points carry a unit fiber over a pair (x, y).  Adding along a common y
multiplies fibers; adding along a common x also multiplies by the twist
exp-of-bilinear factor.  The two laws commute through the compatibility
square, which the axiom suite samples at random.
"""
import random

from qchab.biext import (BiextensionModel, axiom_suite, check_compatibility, iterate,
                         partial_add)
from qchab.padic import SemiLocalRing, Zp

# rank one over Z_5 with twist x*y*y' and gamma = 6
model = BiextensionModel(Zp(5, 4), 1, 1, [{(0, 0, 0): 1}], gamma=6)
a = model.point([1], [1], [1])
print("a +_2 a =", partial_add(2, a, a))
print("3 ._2 a fiber:", iterate(2, 3, a).fiber, "(6^3 = 216)")

# two places of Q_5, two factors, a random symmetric twist
rng = random.Random(1)
tau = []
for _ in range(2):
    t = {}
    for i in range(4):
        for j in range(4):
            for k in range(j, 4):
                t[(i, j, k)] = t[(i, k, j)] = rng.randrange(-2, 3)
    tau.append(t)
big = BiextensionModel(SemiLocalRing([Zp(5, 4), Zp(5, 4)]), 2, 2, tau)

# failure counts per axiom: all zero
print(axiom_suite(big, trials=200))
print("compatibility square holds:", check_compatibility(big, trials=200))

# an asymmetric twist breaks the square
skew = BiextensionModel(Zp(5, 4), 1, 2, [{(0, 0, 1): 1}])
res = check_compatibility(skew, trials=200)
print("x*y1*y2' twist symmetric:", skew.is_symmetric(), "compatible:", bool(res))
print("fails on:", res.witness["check"], "left fiber", res.witness["left"].fiber, "right fiber", res.witness["right"].fiber)
