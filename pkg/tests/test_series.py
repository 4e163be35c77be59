from fractions import Fraction

import pytest

from qchab.errors import BasisRankMismatch, CapMismatch, IndeterminateTail, UncertifiedTail
from qchab.formal import FormalGroupLaw, disk_rescale_check, rescaled_log_outer
from qchab.padic import Zp
from qchab.series import (TateSeries, recombine, reduce_mod_p, series_ops, split_scalars,
                          strassmann_count)


def poly(ring, coeffs, cap=8):
    return TateSeries(ring, 1, {(k,): c for k, c in enumerate(coeffs)}, cap)


def test_evaluate(z5):
    f = poly(z5, [1, 5, 25])
    assert f.evaluate([1]).value == 31


def test_product(z5):
    z = TateSeries.variable(z5, 1, 0)
    f = (1 + z) * (1 - z)
    assert f.coeffs == {(0,): (1,), (2,): (124,)}


def test_compose_into_small_argument(z5):
    f = poly(z5, [0, 1, 1])
    w = TateSeries.variable(z5, 1, 0).scale(5)
    g = series_ops(f, [w], "compose")
    assert g.coeffs == {(1,): (5,), (2,): (25,)}


def test_cap_mismatch(z5):
    with pytest.raises(CapMismatch):
        poly(z5, [1, 1], cap=4) + poly(z5, [1, 1], cap=5)


def test_evaluate_is_a_homomorphism(rng):
    ring = Zp(5, 4)
    for _ in range(20):
        f = TateSeries(ring, 2, {(i, j): rng.randrange(625) for i in range(3) for j in range(3)}, 6)
        g = TateSeries(ring, 2, {(i, j): rng.randrange(625) for i in range(2) for j in range(3)}, 6)
        pt = [rng.randrange(625), rng.randrange(625)]
        if (f * g).tail_bound(7) < 4:
            continue
        assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)


def test_split_scalars_square(gaussian7):
    X = TateSeries.variable(gaussian7, 1, 0)
    re, im = split_scalars(X * X)
    m = 343
    assert re.coeffs == {(2, 0): (1,), (0, 2): (m - 1,)}
    assert im.coeffs == {(1, 1): (2,)}
    a, b = split_scalars(TateSeries.constant(gaussian7, 1, [3, 4]))
    assert a.coeffs == {(0, 0): (3,)} and b.coeffs == {(0, 0): (4,)}
    x1, x2 = split_scalars(X)
    assert x1.coeffs == {(1, 0): (1,)} and x2.coeffs == {(0, 1): (1,)}


def test_split_then_recombine(gaussian7, rng):
    m = gaussian7.modulus
    for _ in range(5):
        f = TateSeries(gaussian7, 2, {(i, j): [rng.randrange(m), rng.randrange(m)]
                                      for i in range(3) for j in range(2)}, 5)
        parts = f.coordinate_series()
        assert recombine(parts, gaussian7) == f


def test_split_rejects_short_basis(gaussian7):
    X = TateSeries.variable(gaussian7, 1, 0)
    with pytest.raises(BasisRankMismatch):
        split_scalars(X, basis=[1])


@pytest.mark.parametrize("coeffs, expected", [([6, -7, 1], 2), ([1, 5], 0), ([5, -1], 1)])
def test_strassmann_examples(coeffs, expected):
    assert strassmann_count(poly(Zp(5, 4), coeffs)) == expected


def test_strassmann_indeterminate(z5):
    with pytest.raises(IndeterminateTail):
        strassmann_count(TateSeries.zero(z5, 1))
    f = poly(z5, [5, 5], cap=1)
    weak = TateSeries._make(z5, 1, 1, f.coeffs, f.env.minimum(TateSeries(z5, 1, {(3,): 5}, 1).env))
    with pytest.raises(IndeterminateTail):
        strassmann_count(weak)


def test_reduce_mod_p(z5):
    assert reduce_mod_p(poly(z5, [6, -7, 1])) == {(0,): 1, (1,): 3, (2,): 1}
    assert reduce_mod_p(poly(z5, [5, 10, 25])) == {}


def test_rescaled_log_reduces_to_identity():
    ring = Zp(5, 4)
    G = FormalGroupLaw.multiplicative(ring, cap=12)
    assert disk_rescale_check(G, ring)
    X = TateSeries.variable(ring, 1, 0, cap=12)
    L = X.apply_outer(rescaled_log_outer(G, ring))
    assert reduce_mod_p(L) == {(1,): 1}


def test_uncertified_tail_refuses_reduction(z5):
    f = poly(z5, [1, 1], cap=2)
    weak = TateSeries._make(z5, 1, 2, f.coeffs, f.env.minimum(_weak_env(z5)))
    with pytest.raises(UncertifiedTail):
        reduce_mod_p(weak)


def _weak_env(ring):
    # a series with a unit coefficient past the cap
    return TateSeries(ring, 1, {(5,): 1}, 2).env


def test_tail_bound_is_sound():
    # 1/(1 - 5z) = sum 5^k z^k; truncating at the cap must leave a tail >= k
    ring = Zp(5, 6)
    f = poly(ring, [5 ** k for k in range(10)], cap=3)
    for k in range(4, 6):
        assert f.tail_bound(k) == Fraction(k)
    # past the precision every dropped coefficient is 0 mod 5^6
    assert f.tail_bound(6) >= 6
