"""Truncated multivariate restricted power series with certified tails.

A :class:`TateSeries` stores the coefficients of total degree <= D exactly
(mod p^N) together with an :class:`~qchab.tail.Envelope` bounding the
valuations of every coefficient, including those that were dropped.
"""
from fractions import Fraction

from . import tail as _tail
from .errors import (BasisRankMismatch, CapMismatch, CompositionDivergence,
                     IndeterminateTail, RingMismatch, UncertifiedTail)
from .padic import LocalElement, LocalRing, Zp
from .tail import INF, Envelope

DEFAULT_CAP = 8


def monomials(nvars, max_degree):
    """All exponent tuples of total degree <= max_degree, graded."""
    out = []
    for deg in range(max_degree + 1):
        out.extend(_monomials_of_degree(nvars, deg))
    return out


def _monomials_of_degree(nvars, deg):
    if nvars == 0:
        return [()] if deg == 0 else []
    if nvars == 1:
        return [(deg,)]
    out = []
    for first in range(deg, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, deg - first):
            out.append((first,) + rest)
    return out


def _raw(ring, value):
    if isinstance(value, LocalElement):
        if value.ring != ring:
            raise RingMismatch(f"{value.ring} vs {ring}")
        return value.coords
    if isinstance(value, int):
        return ring.int_raw(value)
    return ring.normalize(value)


class OuterSeries:
    """A univariate series sum c_k T^k applied to other series, e.g. a
    rescaled logarithm or exponential.

    ``coeff(k)`` returns raw ring coordinates (or None when unknown past
    ``known``); ``tail_rate`` (s1, s0) in v_p gives v(c_k) >= s1*k + s0 for
    every k >= 1.
    """

    def __init__(self, ring, coeff, known, tail_rate, name="outer"):
        self.ring = ring
        self._coeff = coeff
        self._cache = {}
        self.known = known
        self.tail_rate = tuple(Fraction(x) for x in tail_rate)
        self.name = name

    def coeff(self, k):
        if k > self.known:
            return None
        if k not in self._cache:
            self._cache[k] = self._coeff(k)
        return self._cache[k]

    def val_units(self, k, Q):
        s1, s0 = self.tail_rate
        if k > self.known:
            return _floor_units(s1 * k + s0, Q)
        c = self.coeff(k)
        if self.ring.is_zero_raw(c):
            # zero at precision: the true coefficient is at least p^N-divisible
            return max(self.ring.N * Q, _floor_units(s1 * k + s0, Q)) if k else self.ring.N * Q
        return self.ring.val_units(c) * (Q // self.ring.vdenom)


def _floor_units(x, Q):
    y = Fraction(x) * Q
    return y.numerator // y.denominator


class TateSeries:
    """Truncated restricted power series over Z_p or a (semi-)local ring."""

    __slots__ = ("ring", "nvars", "cap", "coeffs", "env")

    def __init__(self, ring, nvars, coeffs=None, cap=DEFAULT_CAP, env=None):
        self.ring = ring
        self.nvars = nvars
        self.cap = cap
        Q, H = _tail.unit_for(ring), _tail.horizon_for(cap)
        kept = {}
        dropped = {}
        for J, c in (coeffs or {}).items():
            J = tuple(int(x) for x in J)
            if len(J) != nvars:
                raise ValueError("exponent length does not match nvars")
            c = _raw(ring, c)
            if ring.is_zero_raw(c):
                continue
            deg = sum(J)
            if deg <= cap:
                kept[J] = c
            else:
                v = ring.val_units(c) * (Q // ring.vdenom)
                dropped[deg] = min(dropped.get(deg, INF), v)
        self.coeffs = kept
        base = env if env is not None else Envelope.exact(Q, H, self._degree_valuations())
        if dropped:
            extra = Envelope.exact(Q, H, dropped)
            far_min = min(dropped.values())
            if max(dropped) > H:
                extra.far = [min(f, far_min) for f in extra.far]
            base = base.minimum(extra)
        self.env = base.raise_known(cap, self._degree_valuations())

    # -- constructors
    @classmethod
    def _make(cls, ring, nvars, cap, coeffs, env):
        obj = object.__new__(cls)
        obj.ring, obj.nvars, obj.cap, obj.coeffs = ring, nvars, cap, coeffs
        obj.env = env.raise_known(cap, obj._degree_valuations())
        return obj

    @classmethod
    def zero(cls, ring, nvars, cap=DEFAULT_CAP):
        return cls(ring, nvars, {}, cap)

    @classmethod
    def constant(cls, ring, nvars, value, cap=DEFAULT_CAP):
        return cls(ring, nvars, {(0,) * nvars: value}, cap)

    @classmethod
    def variable(cls, ring, nvars, index, cap=DEFAULT_CAP):
        J = [0] * nvars
        J[index] = 1
        return cls(ring, nvars, {tuple(J): 1}, cap)

    def _like(self, coeffs, env):
        return TateSeries._make(self.ring, self.nvars, self.cap, coeffs, env)

    def _degree_valuations(self):
        """Per-degree valuations of the stored coefficients; a degree with no
        stored term only certifies divisibility by p^N."""
        Q = _tail.unit_for(self.ring)
        scale = Q // self.ring.vdenom
        vals = dict.fromkeys(range(self.cap + 1), self.ring.N * Q)
        for J, c in self.coeffs.items():
            d = sum(J)
            vals[d] = min(vals[d], self.ring.val_units(c) * scale)
        return vals

    # -- inspection
    def coeff(self, J):
        return self.ring.wrap(self.coeffs.get(tuple(J), self.ring.zero_raw()))

    def __getitem__(self, J):
        if isinstance(J, int):
            J = (J,)
        return self.coeff(J)

    def terms(self):
        return sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0])))

    def degree(self):
        return max((sum(J) for J in self.coeffs), default=-1)

    def constant_term(self):
        return self.coeffs.get((0,) * self.nvars, self.ring.zero_raw())

    def tail_bound(self, k):
        """Proven lower bound (in v_p) on every true coefficient of degree >= k."""
        return self.env.to_fraction(self.env.tail_from(k))

    @property
    def mod_p_exact(self):
        return self.tail_bound(self.cap + 1) >= 1

    def certified_precision(self):
        """Largest j with the dropped tail divisible by p^j (capped at N)."""
        t = self.tail_bound(self.cap + 1)
        if t == float("inf"):
            return self.ring.N
        return max(0, min(self.ring.N, int(t // 1)))

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, TateSeries):
            return NotImplemented
        return (self.ring == other.ring and self.nvars == other.nvars
                and self.cap == other.cap and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.nvars, self.cap, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        parts = []
        for J, c in self.terms()[:8]:
            parts.append(f"{list(c) if len(c) > 1 else c[0]}*z^{list(J)}")
        more = " + ..." if len(self.coeffs) > 8 else ""
        return f"TateSeries({' + '.join(parts) or '0'}{more}; D={self.cap})"

    # -- arithmetic
    def _check(self, other):
        if not isinstance(other, TateSeries):
            raise TypeError("expected a TateSeries")
        if other.ring != self.ring:
            raise RingMismatch(f"{other.ring} vs {self.ring}")
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        if other.cap != self.cap:
            raise CapMismatch(f"degree caps {self.cap} and {other.cap} differ")

    def _as_series(self, other):
        if isinstance(other, TateSeries):
            self._check(other)
            return other
        return TateSeries.constant(self.ring, self.nvars, other, self.cap)

    def __add__(self, other):
        other = self._as_series(other)
        add = self.ring.add_raw
        out = dict(self.coeffs)
        for J, c in other.coeffs.items():
            out[J] = add(out[J], c) if J in out else c
        out = {J: c for J, c in out.items() if any(c)}
        return self._like(out, self.env.minimum(other.env))

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.neg_raw
        return self._like({J: neg(c) for J, c in self.coeffs.items()}, self.env)

    def __sub__(self, other):
        return self + (-self._as_series(other))

    def __rsub__(self, other):
        return self._as_series(other) - self

    def scale(self, c):
        """Multiply by a ring constant (raw coordinates, element or int)."""
        c = _raw(self.ring, c)
        mul = self.ring.mul_raw
        out = {}
        for J, x in self.coeffs.items():
            y = mul(x, c)
            if any(y):
                out[J] = y
        Q = self.env.Q
        if self.ring.is_zero_raw(c):
            shift = self.ring.N * Q
        else:
            shift = self.ring.val_units(c) * (Q // self.ring.vdenom)
        return self._like(out, self.env.shift(shift))

    def __mul__(self, other):
        if not isinstance(other, TateSeries):
            return self.scale(other)
        self._check(other)
        cap = self.cap
        mul, add = self.ring.mul_raw, self.ring.add_raw
        a = sorted(((J, c, sum(J)) for J, c in self.coeffs.items()), key=lambda t: t[2])
        b = sorted(((J, c, sum(J)) for J, c in other.coeffs.items()), key=lambda t: t[2])
        out = {}
        for J1, c1, d1 in a:
            room = cap - d1
            for J2, c2, d2 in b:
                if d2 > room:
                    break
                J = tuple(x + y for x, y in zip(J1, J2))
                prod = mul(c1, c2)
                out[J] = add(out[J], prod) if J in out else prod
        out = {J: c for J, c in out.items() if any(c)}
        return self._like(out, self.env.convolve(other.env))

    __rmul__ = __mul__

    def __pow__(self, k):
        result = TateSeries.constant(self.ring, self.nvars, 1, self.cap)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- composition and evaluation
    def apply_outer(self, outer):
        """sum_k c_k * self^k for an :class:`OuterSeries` (Horner, truncated)."""
        if outer.ring != self.ring:
            raise RingMismatch("outer series over a different ring")
        Q, H = self.env.Q, self.env.H
        N_units = self.ring.N * Q
        mu = min(self.env.prof[j] for j in range(self.cap + 1))
        if mu < 0:
            raise CompositionDivergence("inner series is not integral")
        s1, s0 = (_floor_units(x, Q) for x in outer.tail_rate)
        K = self._truncation_index(outer, mu, s1, s0, N_units, Q)
        if K > outer.known:
            raise UncertifiedTail(f"{outer.name} known only to degree {outer.known}, need {K}")
        ovals = [outer.val_units(k, Q) for k in range(H + 1)]
        env = _tail.compose(ovals, [(s1, s0)], self.env)
        if env is None:
            raise CompositionDivergence(f"{outer.name} tail bound diverges")
        acc = TateSeries.constant(self.ring, self.nvars, outer.coeff(K), self.cap)
        for k in range(K - 1, -1, -1):
            acc = acc * self + outer.coeff(k)
        return self._like(acc.coeffs, env)

    def _truncation_index(self, outer, mu, s1, s0, N_units, Q):
        """Smallest K such that terms k > K vanish mod p^N in degrees <= cap."""
        no_constant = not any(self.constant_term())
        rate = s1 + mu
        if rate <= 0:
            if no_constant:
                return self.cap
            raise CompositionDivergence(
                f"{outer.name} does not converge: inner constant term too large")
        # beyond k0 the affine bound alone guarantees divisibility by p^N
        k0 = max(1, -(-(N_units - s0) // rate))
        if no_constant:
            k0 = min(k0, self.cap + 1)
        K = k0 - 1
        while K > 0 and outer.val_units(K, Q) + K * mu >= N_units:
            K -= 1
        return K

    def compose(self, inners):
        """Substitute series for the variables."""
        if len(inners) != self.nvars:
            raise ValueError("need one inner series per variable")
        if not inners:
            return self
        for g in inners:
            if g.ring != self.ring:
                raise RingMismatch("inner series over a different ring")
            if g.cap != self.cap:
                raise CapMismatch("inner series with a different degree cap")
        g0 = inners[0]
        nv = g0.nvars
        if any(g.nvars != nv for g in inners):
            raise ValueError("inner series must share their variables")
        Q, H = self.env.Q, self.env.H
        N_units = self.ring.N * Q
        inner_env = inners[0].env
        for g in inners[1:]:
            inner_env = inner_env.minimum(g.env)
        if any(any(g.constant_term()) for g in inners):
            mu = min(inner_env.prof[j] for j in range(self.cap + 1))
            if mu < 0:
                raise CompositionDivergence("inner series is not integral")
            # the unknown outer tail must vanish mod p^N in degrees <= cap
            near_ok = all(self.env.at(k) + k * mu >= N_units
                          for k in range(self.cap + 1, H + 1))
            far_ok = any(f + (int(_tail.SLOPES[i] * Q) + mu) * (H + 1) >= N_units
                         for i, f in enumerate(self.env.far))
            if not (near_ok and far_ok):
                raise CompositionDivergence(
                    "inner constant term too large for the uncertified outer tail")
        ovals = [self.env.at(k) for k in range(H + 1)]
        tails = [(int(_tail.SLOPES[i] * Q), f) for i, f in enumerate(self.env.far)]
        env = _tail.compose(ovals, tails, inner_env)
        if env is None:
            raise CompositionDivergence("composition tail bound diverges")
        cache = {(0,) * self.nvars: TateSeries.constant(self.ring, nv, 1, self.cap)}

        def power(J):
            if J in cache:
                return cache[J]
            i = max(k for k, x in enumerate(J) if x)
            prev = J[:i] + (J[i] - 1,) + J[i + 1:]
            cache[J] = power(prev) * inners[i]
            return cache[J]

        acc = TateSeries.zero(self.ring, nv, self.cap)
        for J, c in sorted(self.coeffs.items(), key=lambda kv: sum(kv[0])):
            acc = acc + power(J).scale(c)
        return TateSeries._make(self.ring, nv, self.cap, acc.coeffs, env)

    def evaluate(self, point):
        """Value of the truncated series at an integral point."""
        if len(point) != self.nvars:
            raise ValueError("point dimension mismatch")
        ring = self.ring
        pt = [_raw(ring, x) for x in point]
        powers = [[ring.one_raw()] for _ in pt]
        result = ring.zero_raw()
        for J, c in self.coeffs.items():
            term = c
            for i, k in enumerate(J):
                if k:
                    pw = powers[i]
                    while len(pw) <= k:
                        pw.append(ring.mul_raw(pw[-1], pt[i]))
                    term = ring.mul_raw(term, pw[k])
            result = ring.add_raw(result, term)
        return ring.wrap(result)

    def __call__(self, *point):
        return self.evaluate(point)

    def divide_by_pi(self):
        """Some series g with pi*g == self (coefficientwise); the top pi-digit
        of each coefficient is not determined."""
        ring = self.ring
        coeffs = {}
        for J, c in self.coeffs.items():
            y = ring.divide_by_pi_raw(c)
            if any(y):
                coeffs[J] = y
        e_min = min(pl.e for pl in ring.places)
        env = self.env.shift(-(self.env.Q // e_min))
        return TateSeries._make(ring, self.nvars, self.cap, coeffs, env)

    def times_pi(self):
        return self.scale(self.ring.pi_raw)

    # -- change of rings
    def embed(self, target):
        """Coefficients of a Z_p-series viewed in an extension ring."""
        if self.ring.rank != 1:
            raise RingMismatch("only Z_p series can be embedded")
        Qt = _tail.unit_for(target)
        coeffs = {J: target.int_raw(c[0]) for J, c in self.coeffs.items()}
        env = self.env.convert(Qt)
        return TateSeries._make(target, self.nvars, self.cap, coeffs, env)

    def coordinate_series(self, base=None):
        """Split coefficients into Z_p-coordinates (variables stay Z_p-valued)."""
        ring = self.ring
        base = base or Zp(ring.p, ring.N)
        Qb = _tail.unit_for(base)
        e_max = max(pl.e for pl in ring.places)
        shift = Fraction(e_max - 1, e_max)
        env = self.env.convert(Qb, shift=shift, integral=True)
        out = []
        for i in range(ring.rank):
            coeffs = {J: (c[i],) for J, c in self.coeffs.items() if c[i]}
            out.append(TateSeries._make(base, self.nvars, self.cap, coeffs, env))
        return out

    def to_report(self):
        return [{"exponents": list(J), "coeff": [str(x) for x in c] if len(c) > 1 else str(c[0])}
                for J, c in self.terms()]


def series_ops(a, b, op):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "compose":
        return a.compose(b if isinstance(b, (list, tuple)) else [b])
    if op == "evaluate":
        return a.evaluate(b)
    raise ValueError(f"unknown op {op}")


def split_scalars(f, basis=None):
    """Restriction of scalars for a series over a local ring of rank k.

    Every variable X_v is replaced by sum_i X_{v,i} e_i with Z_p-valued
    X_{v,i} (variables ordered v-major); the result is the list of k
    coordinate series f_1..f_k with f = sum f_i e_i.
    """
    ring = f.ring
    k = ring.rank
    if basis is None:
        basis = [tuple(1 if i == j else 0 for j in range(k)) for i in range(k)]
    else:
        basis = [_raw(ring, b) for b in basis]
    if len(basis) != k:
        raise BasisRankMismatch(f"basis of length {len(basis)} for a ring of rank {k}")
    _check_basis(ring, basis)
    nv = f.nvars * k
    subs = []
    for v in range(f.nvars):
        terms = {}
        for i in range(k):
            J = [0] * nv
            J[v * k + i] = 1
            terms[tuple(J)] = basis[i]
        subs.append(TateSeries(ring, nv, terms, f.cap))
    expanded = f.compose(subs) if f.nvars else f
    coords = expanded.coordinate_series()
    return _change_basis(coords, basis, ring)


def _check_basis(ring, basis):
    # the coordinate matrix must be invertible mod p
    p = ring.p
    rows = [[c % p for c in b] for b in basis]
    n = len(rows)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            raise BasisRankMismatch("elements do not form a Z_p-basis")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = pow(rows[col][col], -1, p)
        for r in range(n):
            if r != col and rows[r][col]:
                t = rows[r][col] * inv
                rows[r] = [(x - t * y) % p for x, y in zip(rows[r], rows[col])]


def _change_basis(coords, basis, ring):
    """Coordinates in the tower basis -> coordinates in ``basis``."""
    k = len(basis)
    if all(basis[i] == tuple(1 if i == j else 0 for j in range(k)) for i in range(k)):
        return coords
    m = ring.modulus
    # solve sum_i y_i basis_i = x, i.e. B^T y = x, by inverting B^T mod p^N
    inv = _inverse_matrix_mod([[basis[i][j] for i in range(k)] for j in range(k)], ring.p, m)
    out = []
    for i in range(k):
        acc = None
        for j in range(k):
            if inv[i][j] % m:
                term = coords[j] * inv[i][j]
                acc = term if acc is None else acc + term
        out.append(acc if acc is not None else TateSeries.zero(coords[0].ring, coords[0].nvars, coords[0].cap))
    return out


def _inverse_matrix_mod(A, p, m):
    n = len(A)
    M = [[x % m for x in row] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] % p)
        M[col], M[piv] = M[piv], M[col]
        inv = pow(M[col][col], -1, m)
        M[col] = [x * inv % m for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                t = M[r][col]
                M[r] = [(x - t * y) % m for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def recombine(parts, ring, basis=None):
    """Inverse of :meth:`TateSeries.coordinate_series`: sum_i parts_i * e_i."""
    k = ring.rank
    if len(parts) != k:
        raise BasisRankMismatch(f"{len(parts)} parts for a ring of rank {k}")
    if basis is None:
        basis = [tuple(1 if i == j else 0 for j in range(k)) for i in range(k)]
    acc = None
    for part, b in zip(parts, basis):
        term = part.embed(ring).scale(b)
        acc = term if acc is None else acc + term
    return acc


def strassmann_count(f):
    """Largest index at which the coefficient valuation is minimal."""
    if f.nvars != 1:
        raise ValueError("strassmann_count needs a univariate series")
    if f.is_zero():
        raise IndeterminateTail("series vanishes at the working precision")
    vals = {J[0]: f.ring.valuation_raw(c) for J, c in f.coeffs.items()}
    vmin = min(int(v) for v in vals.values())
    tail = f.tail_bound(f.cap + 1)
    if tail <= Fraction(vmin, f.ring.e):
        raise IndeterminateTail(
            f"tail bound {tail} does not exceed the minimal valuation {Fraction(vmin, f.ring.e)}")
    return max(k for k, v in vals.items() if int(v) == vmin)


def reduce_mod_p(f):
    """Exact image of a Z_p-series in F_p[z]: dict exponent -> residue."""
    if f.ring.rank != 1:
        raise RingMismatch("reduce_mod_p expects a Z_p series")
    if not f.mod_p_exact:
        raise UncertifiedTail(f"tail bound {f.tail_bound(f.cap + 1)} < 1 past degree {f.cap}")
    p = f.ring.p
    return {J: c[0] % p for J, c in f.coeffs.items() if c[0] % p}
