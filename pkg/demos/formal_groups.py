"""
Formal logarithms and the Z_p-action on a disk
===============================================

The multiplicative law U + V + UV is the law of 1 + t under multiplication.
Its logarithm is log(1 + t); on the disk t in pZ_p the rescaled series are
integral and n-fold addition extends to every p-adic integer n.
"""
from fractions import Fraction

from qchab.formal import (DiskPoint, FormalGroupLaw, disk_rescale_check, fg_exp, fg_log,
                          roundtrip, zp_action)
from qchab.padic import Zp

ring = Zp(5, 4)
G = FormalGroupLaw.multiplicative(ring, cap=12)

# log(1 + t) = t - t^2/2 + t^3/3 - ...
log, exp = fg_log(G), fg_exp(G)
print("log:", [str(log.rational(0, (k,))) for k in range(1, 7)])
print("exp:", [str(exp.rational(0, (k,))) for k in range(1, 7)])

# exp(log(t)) and log(exp(t)) are the identity mod 5^4
log_exp, exp_log = roundtrip(G)
print("round trip:", log_exp[0].coeffs, exp_log[0].coeffs)

# the rescaling test for an unramified disk passes ...
print("e=1:", bool(disk_rescale_check(G, ring)))

# ... and fails at p = 3 with ramification 3, witnessed by pi^8/9!
bad = disk_rescale_check(FormalGroupLaw.multiplicative(Zp(3, 4), cap=12), e=3)
w = bad.find("exp", (9,))
print("p=3, e=3 exp witness at degree 9:", w["valuation"], "=", Fraction(8, 3) - 4)

# the disk point 1 + 5 = 6; the action of 7 lands on 6^7 mod 5^4
g = DiskPoint.from_unscaled(G, ring, [5])
print("7 . (1 + 5) =", 1 + zp_action(7, g).unscaled()[0].value, "=", pow(6, 7, 625))

# a 5-adically small change of exponent moves the result by one more digit
a = zp_action(123, g).unscaled()[0].value
b = zp_action(123 + 25, g).unscaled()[0].value
print("123 vs 148 differ by", (a - b) % 625, "(divisible by 125)")
