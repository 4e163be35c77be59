"""The residue-disk pipeline: initial lifts, the maps D, E and E', and the
interpolation map kappa.

Parameters are ordered (m_{k,l} for k < delta, l < rho-1, k-major) followed by
(n_1..n_r).  The same formulas serve integer parameters and Tate-series
variables; only the algebra changes.
"""
from dataclasses import dataclass, field
from typing import List

from .biext import TorsorPoint, gm_act, iterate, partial_add
from .errors import BaseMismatch, NonUnitFiber
from .padic import lcm, teichmuller


def qstar(residue_field_sizes, p=None):
    """lcm of (q_i - 1) over the residue fields; prime to p."""
    sizes = [int(q) for q in residue_field_sizes]
    if not sizes or any(q < 2 for q in sizes):
        raise ValueError("residue field sizes must be prime powers")
    if p is not None:
        for q in sizes:
            x = q
            while x % p == 0:
                x //= p
            if x != 1:
                raise ValueError(f"{q} is not a power of {p}")
    return lcm(*(q - 1 for q in sizes))


@dataclass
class DiskData:
    """Everything attached to one residue disk of the torsor.

    ``basis`` are A-vectors reducing to zero; ``units`` are units of O (the
    torsion-free unit basis); ``t_fiber`` has one unit per torsor factor."""

    model: object
    alpha: object
    t_fiber: tuple
    x_t: tuple
    basis: List[tuple]
    units: List[tuple]
    qstar: int = field(init=False)

    def __post_init__(self):
        alg = self.model.ints
        ring = self.model.ring
        self.x_t = alg.base(self.x_t)
        self.basis = [alg.base(x) for x in self.basis]
        self.units = [alg.fiber(u) for u in self.units]
        self.t_fiber = tuple(alg.fiber(u) for u in self.t_fiber)
        for x in self.basis:
            for a in x:
                if ring.residue_raw(a) != ring.residue_raw(ring.zero_raw()):
                    raise ValueError("basis points must reduce to zero")
        for u in list(self.units) + list(self.t_fiber):
            if not ring.is_unit_raw(u):
                raise NonUnitFiber("unit data must be units at every place")
        if len(self.t_fiber) != self.model.factors:
            raise ValueError("t~ needs one fiber entry per torsor factor")
        self.qstar = qstar(ring.residue_field_sizes, ring.p)

    @property
    def r(self):
        return len(self.basis)

    @property
    def delta(self):
        return len(self.units)

    @property
    def factors(self):
        return self.model.factors

    @property
    def nvars(self):
        return self.delta * self.factors + self.r

    def t_point(self, alg=None):
        alg = alg or self.model.ints
        pt = TorsorPoint(self.model, self.model.ints, self.t_fiber, self.x_t,
                         self.alpha(self.x_t, self.model.ints))
        return pt if alg == self.model.ints else pt.lift(alg)

    def x_n(self, n):
        alg = self.model.ints
        x = self.x_t
        for ni, xi in zip(n, self.basis):
            x = alg.base_add(x, alg.base_scale(xi, ni))
        return x

    def split_params(self, params):
        k = self.delta * self.factors
        if len(params) != self.nvars:
            raise ValueError(f"expected {self.nvars} parameters (m then n)")
        return list(params[:k]), list(params[k:])


@dataclass
class InitialLifts:
    """Lifts P[i][j], R[i], S[j] and the unit points V[k][l], W[k][l][i]."""

    P: list
    R: list
    S: list
    V: list
    W: list
    primed: bool = False


def build_lifts(disk, P_fibers, R_fibers, S_fibers):
    """Place instance-supplied fibers over their prescribed base points.

    P_{i,j} lies over (x_i, hm f(x_j)), R_i over (x_i, alpha(x_t)),
    S_j over (x_t, hm f(x_j)); V_{k,l} and W_{k,l,i} carry u_k in factor l
    over (x_t, 0) and (x_i, 0)."""
    model, alpha, alg = disk.model, disk.alpha, disk.model.ints
    r, rho1 = disk.r, model.factors
    ring = model.ring

    def fib(values):
        if len(values) != rho1:
            raise ValueError("each lift needs one fiber entry per torsor factor")
        out = tuple(alg.fiber(u) for u in values)
        for u in out:
            if not ring.is_unit_raw(u):
                raise NonUnitFiber("lift fibers must be units")
        return out

    hf = [alpha.linear(x, alg) for x in disk.basis]
    y_t = alpha(disk.x_t, alg)
    zero_y = tuple(alg.base_zero(model.g_b) for _ in range(rho1))
    if len(P_fibers) != r or any(len(row) != r for row in P_fibers):
        raise ValueError("P needs r x r fibers")
    if len(R_fibers) != r or len(S_fibers) != r:
        raise ValueError("R and S need r fibers each")
    P = [[TorsorPoint(model, alg, fib(P_fibers[i][j]), disk.basis[i], hf[j]) for j in range(r)]
         for i in range(r)]
    R = [TorsorPoint(model, alg, fib(R_fibers[i]), disk.basis[i], y_t) for i in range(r)]
    S = [TorsorPoint(model, alg, fib(S_fibers[j]), disk.x_t, hf[j]) for j in range(r)]

    def unit_fiber(k, l):
        return tuple(disk.units[k] if ll == l else ring.one_raw() for ll in range(rho1))

    V = [[TorsorPoint(model, alg, unit_fiber(k, l), disk.x_t, zero_y) for l in range(rho1)]
         for k in range(disk.delta)]
    W = [[[TorsorPoint(model, alg, unit_fiber(k, l), disk.basis[i], zero_y) for i in range(r)]
          for l in range(rho1)] for k in range(disk.delta)]
    return InitialLifts(P, R, S, V, W)


def _principal(pt):
    ring = pt.model.ring
    fiber = []
    for u in pt.fiber:
        if not ring.is_unit_raw(u):
            raise NonUnitFiber("cannot normalize a fiber that is not a unit")
        fiber.append(ring.mul_raw(u, ring.inv_raw(teichmuller(ring.wrap(u), ring).coords)))
    return TorsorPoint(pt.model, pt.alg, tuple(fiber), pt.x, pt.y)


def normalize_lifts(lifts):
    """Multiply every fiber by the Teichmueller lift of its inverse reduction."""
    if lifts.primed:
        return lifts
    return InitialLifts(
        P=[[_principal(q) for q in row] for row in lifts.P],
        R=[_principal(q) for q in lifts.R],
        S=[_principal(q) for q in lifts.S],
        V=[[_principal(q) for q in row] for row in lifts.V],
        W=[[[_principal(q) for q in col] for col in row] for row in lifts.W],
        primed=True)


# -- the maps, generic over the algebra -------------------------------------------

def _sum(axis, points, neutral):
    acc = neutral
    for q in points:
        acc = partial_add(axis, acc, q)
    return acc


def _lift(pt, alg):
    return pt if pt.alg == alg else pt.lift(alg)


def _map_D(n, lifts, disk, alg):
    model = disk.model
    r = disk.r
    t = disk.t_point(alg)
    P = [[_lift(q, alg) for q in row] for row in lifts.P]
    R = [_lift(q, alg) for q in lifts.R]
    S = [_lift(q, alg) for q in lifts.S]
    A = _sum(2, [iterate(2, n[j], S[j]) for j in range(r)], model.neutral(2, t.x, alg))
    y_t = t.y
    B = _sum(1, [iterate(1, n[i], R[i]) for i in range(r)], model.neutral(1, y_t, alg))
    inner = []
    for i in range(r):
        base_i = P[i][0].x if r else None
        row = _sum(2, [iterate(2, n[j], P[i][j]) for j in range(r)], model.neutral(2, base_i, alg))
        inner.append(iterate(1, n[i], row))
    if r:
        C = inner[0]
        for q in inner[1:]:
            C = partial_add(1, C, q)
    else:
        C = model.neutral(1, model.neutral(2, alg.base_zero(model.g_a), alg).y, alg)
    return partial_add(1, partial_add(2, C, B), partial_add(2, A, t))


def _map_E(m, n, lifts, disk, alg):
    model = disk.model
    rho1 = model.factors
    D = _map_D(n, lifts, disk, alg)
    terms = []
    for k in range(disk.delta):
        for l in range(rho1):
            V = _lift(lifts.V[k][l], alg)
            W = [_lift(w, alg) for w in lifts.W[k][l]]
            U = V
            for i in range(disk.r):
                U = partial_add(1, U, iterate(1, n[i], W[i]))
            terms.append(iterate(2, m[k * rho1 + l], U))
    acc = _sum(2, terms, model.neutral(2, D.x, alg))
    return partial_add(2, acc, D)


def _check_lengths(m, n, disk):
    if len(n) != disk.r:
        raise ValueError(f"n must have length r = {disk.r}")
    if len(m) != disk.delta * disk.factors:
        raise ValueError(f"m must have length delta*(rho-1) = {disk.delta * disk.factors}")


def map_D(n, lifts, disk):
    """D(n) = (C(n) +_2 B(n)) +_1 (A(n) +_2 t~), lying over x_n."""
    if len(n) != disk.r:
        raise ValueError(f"n must have length r = {disk.r}")
    return _map_D([int(v) for v in n], lifts, disk, disk.model.ints)


def map_E(m, n, lifts, disk):
    """E(m, n) = (sum_2 m_{k,l} ._2 U_{k,l}(n)) +_2 D(n)."""
    _check_lengths(m, n, disk)
    return _map_E([int(v) for v in m], [int(v) for v in n], lifts, disk, disk.model.ints)


def reduction(pt):
    """Residues of the fiber and base coordinates of a concrete point."""
    ring = pt.model.ring
    return (tuple(ring.residue_raw(u) for u in pt.fiber),
            tuple(ring.residue_raw(a) for a in pt.x),
            tuple(tuple(ring.residue_raw(a) for a in v) for v in pt.y))


def xi(E, disk):
    """The Teichmueller tuple with xi * E reducing to t~."""
    ring = disk.model.ring
    out = []
    for u, ut in zip(E.fiber, disk.t_fiber):
        ratio = ring.mul_raw(ut, ring.inv_raw(u))
        out.append(teichmuller(ring.wrap(ratio), ring).coords)
    return tuple(out)


def map_Eprime(m, n, lifts, disk):
    """E'(m, n) = xi(m, n) * E(m, n), computed from the raw lifts."""
    E = map_E(m, n, lifts, disk)
    return gm_act(xi(E, disk), E)


def map_Eprime_formula(m, n, primed, disk):
    """E'(m, n) by running the E formula on normalized lifts."""
    _check_lengths(m, n, disk)
    if not primed.primed:
        raise ValueError("expected normalized lifts")
    return _map_E([int(v) for v in m], [int(v) for v in n], primed, disk, disk.model.ints)


def t_coordinates(pt, disk):
    """Unscaled offsets of a concrete point from t~: (x - x_t, u/u_t - 1).

    These are pi times the rescaled disk coordinates."""
    ring = disk.model.ring
    base = tuple(ring.sub_raw(a, b) for a, b in zip(pt.x, disk.x_t))
    fib = tuple(ring.sub_raw(ring.mul_raw(u, ring.inv_raw(ut)), ring.one_raw())
                for u, ut in zip(pt.fiber, disk.t_fiber))
    return base, fib


# -- the interpolation map ------------------------------------------------------

class Kappa:
    """The interpolation map as Tate series in the rescaled coordinates.

    ``base`` holds g O-series and ``fiber`` rho-1 O-series; ``series`` is the
    flat list of (g + rho - 1) * d Z_p-series (each O-series split into its
    Z_p-coordinates, base components first)."""

    def __init__(self, disk, base, fiber):
        self.disk = disk
        self.base = list(base)
        self.fiber = list(fiber)
        zp = disk.model.series_algebra(disk.nvars, base[0].cap).zp if base else None
        self.series = [c for s in self.base + self.fiber for c in s.coordinate_series(zp)]

    @property
    def nvars(self):
        return self.disk.nvars

    @property
    def cap(self):
        return self.series[0].cap

    def __len__(self):
        return len(self.series)

    def __getitem__(self, i):
        return self.series[i]

    def unscaled_at(self, params):
        """pi * kappa(params) in O, as (base offsets, fiber offsets)."""
        ring = self.disk.model.ring
        pt = [int(v) for v in params]
        base = tuple(ring.mul_raw(ring.pi_raw, s.evaluate(pt).coords) for s in self.base)
        fib = tuple(ring.mul_raw(ring.pi_raw, s.evaluate(pt).coords) for s in self.fiber)
        return base, fib

    def rescaled_at(self, params):
        pt = [int(v) for v in params]
        return [s.evaluate(pt) for s in self.series]

    def certified_precision(self):
        return min(s.certified_precision() for s in self.series)

    def min_tail_bound(self):
        return min(s.tail_bound(s.cap + 1) for s in self.series)


def build_kappa(lifts, disk, cap=8):
    """kappa: the E' formula with parameters replaced by Z_p-variables.

    Uses the normalized lifts so that every symbolic iterate acts on a
    principal fiber."""
    primed = normalize_lifts(lifts)
    model = disk.model
    alg = model.series_algebra(disk.nvars, cap)
    variables = [alg.variable(i) for i in range(disk.nvars)]
    m, n = disk.split_params(variables)
    pt = _map_E(m, n, primed, disk, alg)
    ring = model.ring
    fiber = []
    for f, ut in zip(pt.fiber, disk.t_fiber):
        # c (1 + pi S) / u_t - 1 = pi (a + S + pi a S) with c / u_t = 1 + pi a
        ratio = ring.mul_raw(f.const, ring.inv_raw(ut))
        shift = ring.sub_raw(ratio, ring.one_raw())
        if any(int(v) < 1 for v in ring.valuations_raw(shift)):
            raise BaseMismatch("symbolic fiber does not reduce to the fiber of t~")
        a = ring.divide_by_pi_raw(shift)
        if not any(a):
            fiber.append(f.series)
        else:
            fiber.append(alg.const_series(a) + f.series + f.series.scale(a).times_pi())
    base = [(x - alg.const_series(a)).divide_by_pi() for x, a in zip(pt.x, disk.x_t)]
    return Kappa(disk, base, fiber)


def kappa_matches(kappa, lifts, disk, params):
    """Compare pi*kappa(params) with the t~-offsets of E'(params)."""
    m, n = disk.split_params(list(params))
    return kappa.unscaled_at(params) == t_coordinates(map_Eprime(m, n, lifts, disk), disk)


__all__ = ["qstar", "DiskData", "InitialLifts", "build_lifts", "normalize_lifts", "map_D", "map_E",
           "map_Eprime", "map_Eprime_formula", "xi", "reduction", "t_coordinates", "Kappa",
           "build_kappa", "kappa_matches"]
