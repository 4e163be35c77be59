import pytest

from qchab.errors import NonUnit, RingMismatch, ZeroResidue
from qchab.padic import (AtLeast, LocalRing, SemiLocalRing, Zp, ring_ops, teichmuller,
                         unit_decompose)


def test_add_and_inverse(z5):
    assert ring_ops(z5(2), z5(3), "add").value == 5
    assert ring_ops(z5(57), None, "inv").value == 68
    assert (z5(57) * z5(68)).value == 1


def test_norm_identity(gaussian7):
    i = gaussian7.omega()
    one = gaussian7.one()
    assert (one + i) * (one - i) == gaussian7(2)


def test_inverse_of_nonunit_raises(z5):
    with pytest.raises(NonUnit):
        z5(10).inverse()


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        ring_ops(Zp(5, 3)(1), Zp(5, 4)(1), "add")


def test_valuations():
    z = Zp(5, 3)
    assert z(50).valuation() == 2
    ram = LocalRing(5, 3, e=2)
    assert ram.pi().valuation() == 1
    v = z(0).valuation()
    assert isinstance(v, AtLeast) and int(v) == 3
    assert int(ram.zero().valuation()) == 6


def test_teichmuller_values(z5):
    assert teichmuller(1, z5).value == 1
    w = teichmuller(2, z5)
    assert w.value == 57
    assert pow(57, 4, 125) == 1
    assert (w ** 4).value == 1
    with pytest.raises(ZeroResidue):
        teichmuller(0, z5)


def test_teichmuller_is_multiplicative(rng, gaussian7):
    for _ in range(20):
        a = gaussian7([rng.randrange(1, 343), rng.randrange(343)])
        b = gaussian7([rng.randrange(1, 343), rng.randrange(343)])
        if not (a.is_unit() and b.is_unit()):
            continue
        assert teichmuller(a * b, gaussian7) == teichmuller(a, gaussian7) * teichmuller(b, gaussian7)
        w = teichmuller(a, gaussian7)
        assert w ** gaussian7.q == w


@pytest.mark.parametrize("u, teich, principal", [(7, 57, 101), (6, 1, 6), (57, 57, 1)])
def test_unit_decompose(z5, u, teich, principal):
    t, pr = unit_decompose(z5(u))
    assert (t.value, pr.value) == (teich, principal)


def test_unit_decompose_semilocal(two_places, rng):
    for _ in range(10):
        u = two_places([[rng.randrange(1, 5) + 5 * rng.randrange(125)], [rng.randrange(1, 5)]])
        t, pr = unit_decompose(u)
        assert t * pr == u
        assert all(int(v) >= 1 for v in (pr - two_places.one()).valuation())


def test_ring_axioms(rng):
    ring = LocalRing(5, 4, e=2, f=2)
    m = ring.modulus
    for _ in range(30):
        a, b, c = (ring([rng.randrange(m) for _ in range(4)]) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        va, vb = a.valuation(), b.valuation()
        if not isinstance(va, AtLeast) and not isinstance(vb, AtLeast):
            vab = (a * b).valuation()
            assert isinstance(vab, AtLeast) or vab == va + vb
        assert int((a + b).valuation()) >= min(int(va), int(vb))


def test_rejects_bad_towers():
    with pytest.raises(ValueError):
        Zp(2, 3)
    with pytest.raises(ValueError):
        LocalRing(7, 3, f=2, unramified_poly=[-1, 0, 1])
    with pytest.raises(RingMismatch):
        SemiLocalRing([Zp(5, 3), Zp(7, 3)])
