from fractions import Fraction

import pytest

from qchab.errors import IntegralityUnverified, NonIntegrableDifferential
from qchab.formal import (DiskPoint, FormalGroupLaw, disk_rescale_check, fg_exp, fg_log,
                          iterate_law, roundtrip, zp_action)
from qchab.padic import LocalRing, Zp
from qchab.series import TateSeries


def _is_identity(comps):
    m = len(comps)
    for i, S in enumerate(comps):
        want = {tuple(int(k == i) for k in range(m)): (1,)}
        if S.coeffs != want:
            return False
    return True


def test_additive_log_and_exp():
    G = FormalGroupLaw.additive(Zp(5, 4), cap=8)
    assert fg_log(G)[0].coeffs == {(1,): (1,)}
    assert fg_exp(G)[0].coeffs == {(1,): (1,)}


def test_multiplicative_coefficients():
    G = FormalGroupLaw.multiplicative(Zp(5, 6), cap=8)
    log, exp = fg_log(G), fg_exp(G)
    assert log.rational(0, (1,)) == 1
    assert log.rational(0, (2,)) == Fraction(-1, 2)
    assert log.rational(0, (3,)) == Fraction(1, 3)
    assert exp.rational(0, (3,)) == Fraction(1, 6)


def test_degree_one_part_is_the_coordinate():
    G = FormalGroupLaw.additive(Zp(7, 3), dim=3, cap=4)
    for i, L in enumerate(fg_log(G)):
        lin = {J: c for J, c in L.coeffs.items() if sum(J) == 1}
        assert lin == {tuple(int(k == i) for k in range(3)): (1,)}


def test_conjugated_log_numerators():
    ring = Zp(5, 5)
    G = FormalGroupLaw.conjugated_additive(ring, {2: 3, 3: 1}, cap=6)
    # log = phi, so the numerator |J| a_J is k * phi_k
    nums = fg_log(G)[0].coeffs
    assert nums[(2,)] == (6,) and nums[(3,)] == (3,)


@pytest.mark.parametrize("law", ["additive", "multiplicative", "conjugated"])
def test_roundtrip_is_identity(law):
    ring = Zp(5, 5)
    if law == "additive":
        G = FormalGroupLaw.additive(ring, dim=2, cap=10)
    elif law == "multiplicative":
        G = FormalGroupLaw.multiplicative(ring, cap=10)
    else:
        G = FormalGroupLaw.conjugated_additive(ring, {2: 1, 4: -2, 5: 7}, cap=10)
    log_exp, exp_log = roundtrip(G)
    assert _is_identity(log_exp) and _is_identity(exp_log)


def test_non_closed_differential():
    ring = Zp(5, 3)
    G = FormalGroupLaw.additive(ring, dim=2, cap=4)
    one = TateSeries.constant(ring, 2, 1, 4)
    zero = TateSeries.zero(ring, 2, 4)
    U1 = TateSeries.variable(ring, 2, 1, 4)
    bad = FormalGroupLaw(G.components, differentials=[[one + U1, zero], [zero, one]], exact=True)
    with pytest.raises(NonIntegrableDifferential):
        fg_log(bad)


def test_rescale_passes_for_small_ramification():
    G = FormalGroupLaw.multiplicative(Zp(5, 4), cap=50)
    assert disk_rescale_check(G, e=1)
    G7 = FormalGroupLaw.multiplicative(Zp(7, 4), cap=30)
    for e in range(1, 6):
        assert disk_rescale_check(G7, e=e)


def test_rescale_fails_for_p3_e3():
    G = FormalGroupLaw.multiplicative(Zp(3, 4), cap=12)
    check = disk_rescale_check(G, e=3)
    assert not check
    w = check.find("exp", (9,))
    assert w is not None and w["valuation"] == Fraction(8, 3) - 4
    assert check.witness["valuation"] < 0


def _disk(N=4):
    ring = Zp(5, N)
    G = FormalGroupLaw.multiplicative(Zp(5, N), cap=16)
    return ring, G


def test_action_needs_the_check():
    ring, G = _disk()
    g = DiskPoint(G, ring, [1])
    with pytest.raises(IntegralityUnverified):
        zp_action(3, g)


def test_action_examples():
    ring, G = _disk()
    assert disk_rescale_check(G, ring)
    g = DiskPoint.from_unscaled(G, ring, [5])      # the point 1 + 5 = 6
    seven = zp_action(7, g)
    assert 1 + seven.unscaled()[0].value == 561 == pow(6, 7, 625)
    assert zp_action(0, g).coords == (ring.zero_raw(),)
    assert zp_action(1, g) == g


def test_action_matches_iteration_and_is_additive(rng):
    ring, G = _disk()
    disk_rescale_check(G, ring)
    for _ in range(5):
        g = DiskPoint(G, ring, [rng.randrange(625)])
        for z in range(0, 21, 4):
            assert zp_action(z, g) == iterate_law(z, g)
        a, b = rng.randrange(10 ** 6), rng.randrange(10 ** 6)
        assert zp_action(a + b, g) == zp_action(a, g) + zp_action(b, g)


def test_action_is_continuous(rng):
    ring, G = _disk()
    disk_rescale_check(G, ring)
    g = DiskPoint(G, ring, [rng.randrange(625)])
    for j in range(1, 4):
        z = rng.randrange(10 ** 5)
        a = zp_action(z, g).unscaled()[0].value
        b = zp_action(z + 5 ** j, g).unscaled()[0].value
        assert (a - b) % 5 ** (j + 1) == 0


def test_ramified_disk_action():
    ring = LocalRing(7, 3, e=2)
    G = FormalGroupLaw.multiplicative(Zp(7, 3), cap=16)
    assert disk_rescale_check(G, ring)
    g = DiskPoint(G, ring, [ring.one().coords])
    assert zp_action(5, g) == iterate_law(5, g)
