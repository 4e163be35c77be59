"""Acceptance criteria, one test each.

Every test prints a single ``PASS`` / ``FAIL`` line with its timing, also
when run directly: ``python tests/test_acceptance.py``.
"""
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import product

import sympy

from qchab.app import (chabauty_conditions, disk_generators, load_instance,
                       oracle_solutions)
from qchab.biext import BiextensionModel, axiom_suite, check_compatibility
from qchab.bound import IdealModP, fp_dimension, strassmann_bound_1d
from qchab.chabauty import (build_kappa, kappa_matches, map_E, map_Eprime, reduction,
                            xi)
from qchab.cli import sample_path
from qchab.formal import FormalGroupLaw, disk_rescale_check, roundtrip
from qchab.padic import SemiLocalRing, Zp
from qchab.series import TateSeries
from qchab.synth import PLANTED_POINTS

SEED = 0


@contextmanager
def criterion(number, title, limit, capsys=None):
    """Time the block, print one PASS/FAIL line and enforce the time limit."""
    state = {"ok": False, "detail": ""}
    start = time.perf_counter()
    try:
        yield state
    finally:
        elapsed = time.perf_counter() - start
        passed = state["ok"] and elapsed < limit
        line = (f"{'PASS' if passed else 'FAIL'} [{number}] {title}: {state['detail']} "
                f"({elapsed:.2f}s, limit {limit}s)")
        if capsys is not None:
            with capsys.disabled():
                print("\n" + line)
        else:
            print(line)
    assert state["ok"], state["detail"]
    assert elapsed < limit, f"took {elapsed:.2f}s (limit {limit}s)"


def _bundled():
    return load_instance(sample_path("bundled"))


def _rigged():
    return load_instance(sample_path("rigged"))


def _identity(comps):
    m = len(comps)
    return all(S.coeffs == {tuple(int(k == i) for k in range(m)): (1,)}
               for i, S in enumerate(comps))


def _symmetric_tau(rng, n):
    tau = {}
    for a in range(n):
        for b in range(n):
            for c in range(b, n):
                tau[(a, b, c)] = tau[(a, c, b)] = rng.randrange(-2, 3)
    return tau


# -- 1 ---------------------------------------------------------------------------------

def check_biextension_axioms(capsys=None):
    rng = random.Random(SEED)
    ring = SemiLocalRing([Zp(5, 4), Zp(5, 4)])
    model = BiextensionModel(ring, 2, 2, [_symmetric_tau(rng, 4), _symmetric_tau(rng, 4)])
    with criterion(1, "biextension axioms on 1000 quadruples, p=5 N=4", 10, capsys) as st:
        fails = axiom_suite(model, trials=1000, seed=SEED)
        square = check_compatibility(model, trials=1000, seed=SEED)
        total = sum(fails.values()) + (0 if square else 1)
        st["ok"] = total == 0
        st["detail"] = f"{total} failures {dict((k, v) for k, v in fails.items() if v)}"


# -- 2 ---------------------------------------------------------------------------------

def check_formal_roundtrip(capsys=None):
    rng = random.Random(SEED)
    ring = Zp(5, 5)
    laws = [("additive", FormalGroupLaw.additive(ring, cap=20)),
            ("multiplicative", FormalGroupLaw.multiplicative(ring, cap=20))]
    for i in range(20):
        phi = {k: rng.randrange(-25, 26) for k in rng.sample(range(2, 21), rng.randint(1, 6))}
        laws.append((f"conjugated-{i}", FormalGroupLaw.conjugated_additive(ring, phi, cap=20)))
    with criterion(2, "exp/log round-trip to degree 20 at N=5 on 22 laws", 30, capsys) as st:
        bad = [name for name, G in laws if not all(_identity(c) for c in roundtrip(G))]
        st["ok"] = not bad
        st["detail"] = f"{len(laws) - len(bad)}/{len(laws)} exact" + (f", failing {bad}" if bad else "")


# -- 3 ---------------------------------------------------------------------------------

def check_integrality(capsys=None):
    with criterion(3, "rescaled log/exp integrality to degree 50, witness at (3, 3)", 10, capsys) as st:
        G5 = FormalGroupLaw.multiplicative(Zp(5, 4), cap=50)
        G7 = FormalGroupLaw.multiplicative(Zp(7, 4), cap=50)
        passes = [bool(disk_rescale_check(G5, e=1))]
        passes += [bool(disk_rescale_check(G7, e=e)) for e in range(1, 6)]
        G3 = FormalGroupLaw.multiplicative(Zp(3, 4), cap=12)
        check = disk_rescale_check(G3, e=3)
        witness = check.find("exp", (9,))
        want = Fraction(8, 3) - 4
        st["ok"] = all(passes) and not check and witness is not None and witness["valuation"] == want
        st["detail"] = (f"{sum(passes)}/6 integral cases pass; (3,3) exp degree 9 valuation "
                        f"{witness and witness['valuation']} (expected {want})")


# -- 4 ---------------------------------------------------------------------------------

def check_interpolation_exactness(capsys=None):
    inst = _bundled()
    entry = inst.disks[0]
    rng = random.Random(SEED)
    with criterion(4, "kappa equals E' at 200 tuples mod p^4 (bundled)", 60, capsys) as st:
        kappa = build_kappa(entry.lifts, entry.disk, cap=inst.degree_cap)
        nv = entry.disk.nvars
        tuples = [[rng.randrange(-10 ** 4, 10 ** 4) for _ in range(nv)] for _ in range(200)]
        misses = [t for t in tuples if not kappa_matches(kappa, entry.lifts, entry.disk, t)]
        st["ok"] = not misses
        st["detail"] = f"{200 - len(misses)}/200 exact"


# -- 5 ---------------------------------------------------------------------------------

def check_qstar_sandwich(capsys=None):
    inst = _bundled()
    entry = inst.disks[0]
    disk, lifts = entry.disk, entry.lifts
    q = disk.qstar
    red_t = reduction(disk.t_point())
    one = inst.ring.one_raw()
    with criterion(5, "q*-sandwich on a 5-wide box", 30, capsys) as st:
        bad = 0
        for params in product(range(-2, 3), repeat=disk.nvars):
            m, n = disk.split_params(list(params))
            E = map_E([q * v for v in m], [q * v for v in n], lifts, disk)
            if reduction(E) != red_t or any(w != one for w in xi(E, disk)):
                bad += 1
            if reduction(map_Eprime(m, n, lifts, disk)) != red_t:
                bad += 1
        st["ok"] = bad == 0
        st["detail"] = f"{5 ** disk.nvars} box points, {bad} failures"


# -- 6 ---------------------------------------------------------------------------------

def check_oracle_against_bound(capsys=None):
    with criterion(6, "Hensel oracle against fp_dimension (bundled, rigged)", 300, capsys) as st:
        details, ok = [], True
        for name, inst in (("bundled", _bundled()), ("rigged", _rigged())):
            entry = inst.disks[0]
            gens, _ = disk_generators(inst, entry)
            dim = fp_dimension(IdealModP.from_series(gens), cap=inst.degree_cap)
            sols, _ = oracle_solutions(inst, entry.label)
            if name == "bundled":
                ok &= dim.finite and len(sols) <= dim.dim
            else:
                ok &= sorted(sols) == sorted(PLANTED_POINTS) and dim.finite and dim.dim >= 3
            details.append(f"{name}: {len(sols)} solutions, dim {dim}")
        st["ok"] = bool(ok)
        st["detail"] = "; ".join(details)


# -- 7 ---------------------------------------------------------------------------------

# building blocks over Z, coefficients low degree first
_NO_ROOT = [-2, 0, 1]       # z^2 - 2: 2 is not a square mod 5
_TWO_ROOTS = [1, 0, 1]      # z^2 + 1: roots in Z_5 outside Q
_NON_INTEGRAL = [-1, 5]     # 5z - 1: root 1/5


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _zp_root_count(coeffs, p=5):
    """Roots in Z_p with multiplicity, from sympy's factorization over Q."""
    z = sympy.symbols("z")
    poly = sympy.Poly(list(reversed(coeffs)), z)
    count = 0
    for factor, mult in poly.factor_list()[1]:
        c = factor.all_coeffs()
        if factor.degree() == 1:
            # root -c0/c1 lies in Z_p iff p does not divide c1 / gcd
            if Fraction(-c[1], c[0]).denominator % p:
                count += mult
        elif factor.degree() == 2:
            a, b, cc = c
            disc = b * b - 4 * a * cc
            assert a % p and disc % p, "corpus keeps quadratic factors unramified"
            if sympy.legendre_symbol(disc % p, p) == 1:
                count += 2 * mult
        else:
            raise AssertionError("corpus factors have degree <= 2")
    return count


def _newton_slopes_nonpositive(coeffs, p=5):
    vals = [sympy.multiplicity(p, c) if c else None for c in coeffs]
    lead = vals[-1]
    return all(v is None or v >= lead for v in vals)


def _strassmann_corpus(rng):
    corpus = []
    while len(corpus) < 50:
        degree = rng.choice([2, 3])
        factors, distinct, roots = [], True, set()
        remaining = degree
        while remaining:
            pick = rng.random()
            if remaining >= 2 and pick < 0.15:
                factors.append(rng.choice([_NO_ROOT, _TWO_ROOTS]))
                remaining -= 2
            elif pick < 0.25:
                factors.append(_NON_INTEGRAL)
                remaining -= 1
            else:
                a = rng.randrange(-30, 31)
                distinct &= a not in roots
                roots.add(a)
                factors.append([-a, 1])
                remaining -= 1
        coeffs = [rng.choice([1, 2, 3, 4, 5, 10])]
        for f in factors:
            coeffs = _mul(coeffs, f)
        corpus.append((coeffs, factors, distinct))
    return corpus


def check_strassmann_sanity(capsys=None):
    rng = random.Random(SEED)
    ring = Zp(5, 12)
    with criterion(7, "Strassmann bound on 50 quadratics/cubics over Z_5", 10, capsys) as st:
        bad, equal_cases = [], 0
        for coeffs, factors, distinct in _strassmann_corpus(rng):
            f = TateSeries(ring, 1, {(k,): c for k, c in enumerate(coeffs)}, len(coeffs))
            bound = strassmann_bound_1d(f)
            count = _zp_root_count(coeffs)
            if bound < count:
                bad.append((coeffs, bound, count))
            split = all(len(g) == 2 and g[1] == 1 or g == _TWO_ROOTS for g in factors)
            if _newton_slopes_nonpositive(coeffs) and distinct and split:
                equal_cases += 1
                if bound != count:
                    bad.append((coeffs, bound, count))
        st["ok"] = not bad
        st["detail"] = f"50 polynomials, {equal_cases} equality cases, {len(bad)} failures"


# -- 8 ---------------------------------------------------------------------------------

def check_condition_sweep(capsys=None):
    with criterion(8, "condition forms agree on r<=20 g<=5 rho<=4 r1<=4 r2<=3", 5, capsys) as st:
        cases = disagree = 0
        for r, g, rho, r1, r2 in product(range(21), range(1, 6), range(1, 5), range(5), range(4)):
            if r1 + r2 == 0:
                continue
            c = chabauty_conditions(g, rho, r, r1, r2)
            cases += 1
            disagree += c["geometric"] != c["equivalent_form"]
        st["ok"] = disagree == 0
        st["detail"] = f"{cases} grid points, {disagree} disagreements"


# -- pytest entry points -------------------------------------------------------------

def test_biextension_axioms(capsys):
    check_biextension_axioms(capsys)


def test_formal_roundtrip(capsys):
    check_formal_roundtrip(capsys)


def test_integrality(capsys):
    check_integrality(capsys)


def test_interpolation_exactness(capsys):
    check_interpolation_exactness(capsys)


def test_qstar_sandwich(capsys):
    check_qstar_sandwich(capsys)


def test_oracle_against_bound(capsys):
    check_oracle_against_bound(capsys)


def test_strassmann_sanity(capsys):
    check_strassmann_sanity(capsys)


def test_condition_sweep(capsys):
    check_condition_sweep(capsys)


CHECKS = [check_biextension_axioms, check_formal_roundtrip, check_integrality,
          check_interpolation_exactness, check_qstar_sandwich, check_oracle_against_bound,
          check_strassmann_sanity, check_condition_sweep]


if __name__ == "__main__":
    for check in CHECKS:
        try:
            check()
        except AssertionError:
            pass
