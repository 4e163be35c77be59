"""From the interpolation map to a bound on points: pullback of the curve
equations, reduction mod p, the F_p-dimension of the quotient via a
Groebner basis, and brute-force oracles used to cross-check it.

Polynomials over F_p are dicts {exponent tuple: residue}; the monomial order
is degree-lexicographic throughout.
"""
from dataclasses import dataclass, field
from itertools import product
from typing import List, Optional

from .errors import ArityMismatch, IndeterminateTail, UncertifiedTail
from .series import TateSeries, reduce_mod_p, strassmann_count


# -- curve data and pullback --------------------------------------------------

@dataclass
class CurveDisk:
    """Equations of the curve inside one torsor residue disk, as Z_p-series
    in the (g + rho - 1) d rescaled disk coordinates."""

    equations: List[TateSeries]
    label: str = ""
    expected: Optional[int] = None

    def __post_init__(self):
        if not self.equations:
            raise ArityMismatch("a curve disk needs at least one equation")
        nv = self.equations[0].nvars
        if any(f.nvars != nv for f in self.equations):
            raise ArityMismatch("equations must share their variables")
        if any(f.ring.rank != 1 for f in self.equations):
            raise ArityMismatch("curve equations must be Z_p-series")
        if self.expected is not None and len(self.equations) != self.expected:
            raise ArityMismatch(f"expected (g+rho-2)d = {self.expected} equations, got {len(self.equations)}")

    @property
    def nvars(self):
        return self.equations[0].nvars


def _recap(f, cap):
    if f.cap == cap:
        return f
    return TateSeries(f.ring, f.nvars, f.coeffs, cap)


def pullback_ideal(kappa, curve):
    """Generators f(kappa) of the ideal in the parameter variables."""
    series = list(kappa.series if hasattr(kappa, "series") else kappa)
    if curve.nvars != len(series):
        raise ArityMismatch(f"equations in {curve.nvars} variables, kappa has {len(series)} components")
    if curve.expected is None and hasattr(kappa, "disk"):
        disk = kappa.disk
        g = disk.model.g_a
        expected = (g + disk.factors - 1) * disk.model.ring.rank
        if len(curve.equations) != expected:
            raise ArityMismatch(f"expected (g+rho-2)d = {expected} equations, got {len(curve.equations)}")
    cap = series[0].cap
    out = []
    for f in curve.equations:
        f = _recap(f, cap)
        if f.ring != series[0].ring:
            raise ArityMismatch("equations and kappa use different coefficient rings")
        out.append(f.compose(series))
    return out


@dataclass
class IdealModP:
    """Generators of the reduced ideal over F_p."""

    p: int
    nvars: int
    generators: list

    @classmethod
    def from_series(cls, gens):
        if not gens:
            raise ValueError("no generators")
        p, nv = gens[0].ring.p, gens[0].nvars
        return cls(p, nv, [reduce_mod_p(f) for f in gens])


# -- Groebner bases -------------------------------------------------------------

def _key(m):
    return (sum(m), m)


def _lead(f):
    return max(f, key=_key)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _monic(f, p):
    lm = _lead(f)
    inv = pow(f[lm], -1, p)
    return {m: c * inv % p for m, c in f.items()}


def _sub_scaled(f, g, c, shift, p):
    """f - c * z^shift * g."""
    out = dict(f)
    for m, a in g.items():
        mm = tuple(x + y for x, y in zip(m, shift))
        v = (out.get(mm, 0) - c * a) % p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def normal_form(f, basis, p):
    """Full reduction of f modulo a list of monic polynomials."""
    f = {m: c % p for m, c in f.items() if c % p}
    leads = [(_lead(g), g) for g in basis]
    rem = {}
    while f:
        lm = _lead(f)
        c = f[lm]
        for glm, g in leads:
            if _divides(glm, lm):
                shift = tuple(a - b for a, b in zip(lm, glm))
                f = _sub_scaled(f, g, c, shift, p)
                break
        else:
            rem[lm] = c
            del f[lm]
    return rem


def _spoly(f, g, p):
    a, b = _lead(f), _lead(g)
    lcm_ = tuple(max(x, y) for x, y in zip(a, b))
    sf = tuple(x - y for x, y in zip(lcm_, a))
    sg = tuple(x - y for x, y in zip(lcm_, b))
    out = {}
    for m, c in f.items():
        out[tuple(x + y for x, y in zip(m, sf))] = c
    return _sub_scaled(out, g, 1, sg, p)


def groebner(gens, p):
    """Reduced Groebner basis (degree-lex) by Buchberger's algorithm with the
    coprime-leading-monomial criterion."""
    basis = []
    for f in gens:
        f = normal_form(f, basis, p)
        if f:
            basis.append(_monic(f, p))
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    while pairs:
        pairs.sort(key=lambda ij: _key(tuple(max(x, y) for x, y in zip(_lead(basis[ij[0]]), _lead(basis[ij[1]])))),
                   reverse=True)
        i, j = pairs.pop()
        a, b = _lead(basis[i]), _lead(basis[j])
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue
        h = normal_form(_spoly(basis[i], basis[j], p), basis, p)
        if h:
            basis.append(_monic(h, p))
            k = len(basis) - 1
            pairs.extend((k, m) for m in range(k))
    return _reduce_basis(basis, p)


def _reduce_basis(basis, p):
    basis = [g for g in basis if g]
    minimal = []
    for i, g in enumerate(basis):
        lg = _lead(g)
        if any(_divides(_lead(h), lg) and (_lead(h) != lg or j < i) for j, h in enumerate(basis) if j != i):
            continue
        minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        lm = _lead(g)
        tail = {m: c for m, c in g.items() if m != lm}
        red = normal_form(tail, others, p)
        red[lm] = 1
        out.append(red)
    return sorted(out, key=lambda g: _key(_lead(g)))


def is_groebner(basis, p):
    """Every S-polynomial reduces to zero."""
    for i in range(len(basis)):
        for j in range(i):
            if normal_form(_spoly(basis[i], basis[j], p), basis, p):
                return False
    return True


@dataclass
class FpDimension:
    """Outcome of :func:`fp_dimension`: finite with ``dim``, or infinite
    (as computed from the truncation at ``cap``)."""

    finite: bool
    dim: Optional[int]
    basis: list = field(repr=False, default_factory=list)
    standard_monomials: list = field(repr=False, default_factory=list)
    cap: Optional[int] = None

    def __str__(self):
        if self.finite:
            return str(self.dim)
        return "infinite" + (f" at cap D={self.cap}" if self.cap is not None else "")


def fp_dimension(ideal, cap=None):
    """dim over F_p of F_p[z] / ideal by counting standard monomials."""
    p, nv = ideal.p, ideal.nvars
    gens = [g for g in ideal.generators if g]
    if nv == 0:
        return FpDimension(True, 0 if gens else 1, [], [], cap)
    G = groebner(gens, p)
    leads = [_lead(g) for g in G]
    bounds = []
    for i in range(nv):
        pure = [m[i] for m in leads if all(x == 0 for k, x in enumerate(m) if k != i)]
        if not pure:
            return FpDimension(False, None, G, [], cap)
        bounds.append(min(pure))
    std = [m for m in product(*(range(b) for b in bounds))
           if not any(_divides(lm, m) for lm in leads)]
    return FpDimension(True, len(std), G, sorted(std, key=_key), cap)


@dataclass
class BoundReport:
    """Per-disk dimensions and their sum; ``total`` is None when some disk
    gives no finite bound at this prime."""

    per_disk: list
    total: Optional[int]
    note: str = ""

    def to_json(self):
        return {"per_disk": [str(d) for d in self.per_disk],
                "total": self.total if self.total is not None else "no bound at this prime",
                "note": self.note}


def bound_report(dims):
    dims = list(dims)
    values = []
    for d in dims:
        if isinstance(d, FpDimension):
            values.append(d.dim if d.finite else None)
        elif d is None or d == "infinite":
            values.append(None)
        else:
            values.append(int(d))
    if any(v is None for v in values):
        return BoundReport(dims, None, "a disk has an infinite quotient; see the dimension diagnostics")
    return BoundReport(dims, sum(values))


# -- oracles ----------------------------------------------------------------------

def _integer_terms(f):
    return [(J, c[0]) for J, c in f.coeffs.items()]


def _eval_mod(terms, point, modulus):
    acc = 0
    for J, c in terms:
        t = c
        for x, k in zip(point, J):
            if k:
                t = t * pow(x, k, modulus) % modulus
        acc += t
    return acc % modulus


def hensel_oracle(generators, depth):
    """All solutions in (Z/p^depth)^n of the generators, found by
    enumerating mod p and lifting one p-adic digit per layer.

    Returns the sorted list of solution tuples with entries in [0, p^depth)."""
    if not generators:
        raise ValueError("no generators")
    f0 = generators[0]
    ring, nv = f0.ring, f0.nvars
    p = ring.p
    if depth < 1 or depth > ring.N:
        raise ValueError(f"depth must lie in 1..{ring.N}")
    for f in generators:
        if f.tail_bound(f.cap + 1) < depth:
            raise UncertifiedTail(
                f"tail bound {f.tail_bound(f.cap + 1)} does not certify evaluation mod p^{depth}")
    terms = [_integer_terms(f) for f in generators]
    layer = [tuple(z) for z in product(range(p), repeat=nv)
             if all(_eval_mod(t, z, p) == 0 for t in terms)]
    for j in range(1, depth):
        mod = p ** (j + 1)
        step = p ** j
        nxt = []
        for z in layer:
            for w in product(range(p), repeat=nv):
                cand = tuple(a + step * b for a, b in zip(z, w))
                if all(_eval_mod(t, cand, mod) == 0 for t in terms):
                    nxt.append(cand)
        layer = nxt
    return sorted(layer)


def hensel_counts(generators, depth):
    """Solution counts at every depth 1..depth."""
    return [len(hensel_oracle(generators, j)) for j in range(1, depth + 1)]


def strassmann_bound_1d(f):
    """Strassmann bound on the zeros in Z_p of a univariate series."""
    if f.nvars != 1:
        raise ArityMismatch("strassmann_bound_1d needs a univariate series")
    return strassmann_count(f)


def _poly_shift_scale(coeffs, a, p):
    """Coefficients of f(a + p z) for an integer polynomial."""
    n = len(coeffs)
    # Taylor shift by a, then scale by p
    c = list(coeffs)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            c[k] += a * c[k + 1]
    return [x * p ** k for k, x in enumerate(c)]


def zp_roots(coeffs, p, max_depth=60):
    """Roots in Z_p of an integer polynomial (coefficients low degree first).

    Returns a list of (residue, depth) pairs, one per root; a root is
    certified once a branch reduces to a simple root mod p, after which
    Hensel's lemma gives exactly one lift.  Branches still ambiguous at
    ``max_depth`` are reported with depth ``None`` (a repeated root)."""
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        if coeffs and coeffs[0] == 0 or not coeffs:
            raise IndeterminateTail("the zero polynomial has every point as a root")
        return []
    out = []
    _zp_roots_rec(coeffs, p, 0, 1, 0, max_depth, out)
    return out


def _content_vp(coeffs, p):
    v = None
    for c in coeffs:
        if c:
            k = 0
            while c % p == 0:
                c //= p
                k += 1
            v = k if v is None else min(v, k)
    return v


def _zp_roots_rec(coeffs, p, base, scale, depth, max_depth, out):
    v = _content_vp(coeffs, p)
    if v is None:
        out.append((base, None))
        return
    g = [c // p ** v for c in coeffs]
    red = [c % p for c in g]
    for a in range(p):
        val = sum(c * pow(a, k, p) for k, c in enumerate(red)) % p
        if val:
            continue
        deriv = sum(k * c * pow(a, k - 1, p) for k, c in enumerate(red) if k) % p
        if deriv:
            out.append((base + scale * a, depth + 1))
            continue
        if depth + 1 >= max_depth:
            out.append((base + scale * a, None))
            continue
        _zp_roots_rec(_poly_shift_scale(g, a, p), p, base + scale * a, scale * p, depth + 1, max_depth, out)


__all__ = ["CurveDisk", "pullback_ideal", "IdealModP", "groebner", "normal_form", "is_groebner",
           "FpDimension", "fp_dimension", "BoundReport", "bound_report", "hensel_oracle",
           "hensel_counts", "strassmann_bound_1d", "zp_roots"]
