import random
from itertools import product

import pytest
import sympy

from qchab.bound import (CurveDisk, FpDimension, IdealModP, bound_report, fp_dimension,
                         groebner, hensel_counts, hensel_oracle, is_groebner, pullback_ideal,
                         strassmann_bound_1d, zp_roots)
from qchab.chabauty import build_kappa
from qchab.errors import ArityMismatch, UncertifiedTail
from qchab.padic import Zp
from qchab.series import TateSeries


def ideal(p, nv, polys):
    return IdealModP(p, nv, [dict(f) for f in polys])


def test_fp_dimension_examples():
    d = fp_dimension(ideal(5, 2, [{(2, 0): 1}, {(1, 1): 1}, {(0, 3): 1}]))
    assert d.finite and d.dim == 4
    assert d.standard_monomials == [(0, 0), (0, 1), (1, 0), (0, 2)]
    assert fp_dimension(ideal(7, 1, [{(1,): 1}])).dim == 1
    inf = fp_dimension(ideal(5, 2, [{(1, 0): 1, (0, 2): 4}]), cap=8)
    assert not inf.finite and str(inf) == "infinite at cap D=8"


def test_bound_report_examples():
    assert bound_report([4, 3]).total == 7
    rep = bound_report([FpDimension(True, 2), FpDimension(False, None, cap=8)])
    assert rep.total is None and "infinite" in rep.note
    assert rep.to_json()["total"] == "no bound at this prime"
    assert bound_report([]).total == 0


def _random_ideal(rng, p, nv, count, degree):
    monos = [J for J in product(range(degree + 1), repeat=nv) if 0 < sum(J) <= degree]
    out = []
    for _ in range(count):
        f = {J: rng.randrange(1, p) for J in rng.sample(monos, min(len(monos), 4))}
        f[(0,) * nv] = rng.randrange(p)
        out.append({J: c for J, c in f.items() if c})
    return out


def _to_sympy(f, gens):
    return sum(c * sympy.prod([g ** k for g, k in zip(gens, J)]) for J, c in f.items())


def _monic_strings(polys, gens):
    return {str(sympy.Poly(f, *gens, modulus=5).monic()) for f in polys}


def test_groebner_matches_sympy():
    rng = random.Random(5)
    z = sympy.symbols("z0 z1 z2")
    for trial in range(30):
        nv = 2 + trial % 2
        polys = _random_ideal(rng, 5, nv, 3, 2)
        G = groebner([dict(f) for f in polys], 5)
        assert is_groebner(G, 5)
        ref = sympy.groebner([_to_sympy(f, z[:nv]) for f in polys], *z[:nv], modulus=5, order="grlex")
        assert _monic_strings([_to_sympy(g, z[:nv]) for g in G], z[:nv]) == \
            _monic_strings(ref.exprs, z[:nv])


def _enumerated_dimension(polys, nv, bound):
    """Standard monomials of degree <= bound, read off sympy's basis."""
    z = sympy.symbols(f"z0:{nv}")
    ref = sympy.groebner([_to_sympy(f, z) for f in polys], *z, modulus=5, order="grlex")
    leads = [sympy.Poly(g, *z, modulus=5).monoms(order="grlex")[0] for g in ref.exprs]
    return sum(1 for J in product(range(bound + 1), repeat=nv)
               if sum(J) <= bound and not any(all(a <= b for a, b in zip(L, J)) for L in leads))


def test_dimension_agrees_with_enumeration():
    rng = random.Random(11)
    checked = 0
    for _ in range(40):
        gens = _random_ideal(rng, 5, 2, 3, 2)
        d = fp_dimension(ideal(5, 2, gens))
        if d.finite:
            assert _enumerated_dimension(gens, 2, 4) == d.dim
            checked += 1
    assert checked >= 10


def _zp_poly(coeffs, N=3):
    return TateSeries(Zp(5, N), 1, {(k,): c for k, c in enumerate(coeffs)}, 4)


def test_hensel_examples():
    assert hensel_oracle([_zp_poly([-5, 1])], 3) == [(5,)]
    assert hensel_oracle([_zp_poly([-5, 0, 1])], 3) == []
    # roots distinct mod p: one branch each at every depth
    simple = _zp_poly([2, -3, 1], 4)
    assert hensel_counts([simple], 4) == [2, 2, 2, 2]
    # a repeated root keeps p residues alive at depth 2 and 3
    assert hensel_counts([_zp_poly([0, 0, 1])], 3) == [1, 5, 5]


def test_hensel_branches_project_down():
    f = _zp_poly([0, 0, 1, 5], 4)
    for j in range(2, 5):
        upper = hensel_oracle([f], j)
        lower = set(hensel_oracle([f], j - 1))
        assert {tuple(x % 5 ** (j - 1) for x in s) for s in upper} <= lower


def test_hensel_requires_a_tail(z5):
    weak = TateSeries(z5, 1, {(1,): 1, (5,): 5}, 2)
    with pytest.raises(UncertifiedTail):
        hensel_oracle([weak], 3)


@pytest.mark.parametrize("coeffs, expected", [([6, -7, 1], 2), ([1, 5], 0), ([5, -1], 1)])
def test_strassmann_examples(coeffs, expected):
    assert strassmann_bound_1d(_zp_poly(coeffs, 5)) == expected


def test_zp_roots():
    assert sorted(r for r, _ in zp_roots([6, -7, 1], 5)) == [1, 6]
    assert zp_roots([-5, 0, 1], 5) == []
    assert [d for _, d in zp_roots([0, 0, 1], 5, max_depth=6)] == [None]


def test_pullback_shapes(bundled):
    e = bundled.disks[0]
    kappa = build_kappa(e.lifts, e.disk, cap=bundled.degree_cap)
    gens = pullback_ideal(kappa, e.curve)
    assert len(gens) == bundled.equation_count
    nv = len(kappa)
    ring = Zp(bundled.p, bundled.N)
    zero = CurveDisk([TateSeries.zero(ring, nv, 8)] * bundled.equation_count)
    assert all(g.is_zero() for g in pullback_ideal(kappa, zero))
    first = TateSeries.variable(ring, nv, 0, 8)
    coord = CurveDisk([first] * bundled.equation_count)
    assert pullback_ideal(kappa, coord)[0] == kappa.series[0]
    with pytest.raises(ArityMismatch):
        CurveDisk([first], expected=4)
    with pytest.raises(ArityMismatch):
        pullback_ideal(kappa, CurveDisk([TateSeries.variable(ring, 2, 0, 8)] * 4))
