"""Fixed-precision arithmetic in Z_p, in unramified-then-Eisenstein towers over
Z_p, and in finite products of such towers (semi-local rings).

Elements are stored as tuples of integer coordinates reduced mod p^N.  A local
ring of ramification index e and residue degree f has the Z_p-basis
pi^a * omega^b (0 <= a < e, 0 <= b < f), flattened at index a*f + b, where
omega is a root of the unramified polynomial and pi a root of the Eisenstein
polynomial.
"""
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd

from .errors import NonUnit, RingMismatch, ZeroResidue


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def vp_int(n, p):
    """p-adic valuation of a nonzero integer (None for zero)."""
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_factorial(k, p):
    """Legendre's formula."""
    v, q = 0, p
    while q <= k:
        v += k // q
        q *= p
    return v


def lcm(*xs):
    return reduce(lambda a, b: a * b // gcd(a, b), xs, 1)


class AtLeast(int):
    """Valuation sentinel: the element vanishes at the working precision, so its
    true valuation is only known to be >= this value."""

    def __repr__(self):
        return f"AtLeast({int(self)})"

    def __str__(self):
        return f">= {int(self)}"


# --- polynomials over F_p, used only for the irreducibility test -----------

def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, b, p):
    a = [c % p for c in a]
    _fp_trim(a)
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _fp_trim(a)
    return a


def _fp_mulmod(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _fp_mod(out, m, p)


def _fp_gcd(a, b, p):
    a, b = _fp_trim([c % p for c in a]), _fp_trim([c % p for c in b])
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_powmod(base, k, m, p):
    result, base = [1], _fp_mod(base, m, p)
    while k:
        if k & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        k >>= 1
    return result


def _prime_factors(n):
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def irreducible_mod_p(poly, p):
    """Rabin's test for a monic integer polynomial (coefficients low to high)."""
    g = _fp_trim([c % p for c in poly])
    n = len(g) - 1
    if n < 1 or g[-1] != 1:
        return False
    if n == 1:
        return True

    def x_power_minus_x(k):
        h = _fp_powmod([0, 1], p ** k, g, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        return _fp_trim(h)

    for r in _prime_factors(n):
        if len(_fp_gcd(g, x_power_minus_x(n // r), p)) > 1:
            return False
    return not x_power_minus_x(n)


def default_unramified_poly(p, f):
    """The first monic irreducible polynomial of degree f in lexicographic order."""
    if f == 1:
        return [0, 1]
    for code in range(p ** f):
        coeffs = [(code // p ** i) % p for i in range(f)] + [1]
        if coeffs[0] and irreducible_mod_p(coeffs, p):
            return coeffs
    raise ValueError(f"no irreducible polynomial of degree {f} mod {p}")


# --- local rings ------------------------------------------------------------

class LocalRing:
    """O = Z_q[pi] / (E(pi)) with Z_q = Z_p[omega] / (g(omega)), mod p^N.

    ``unramified_poly`` lists the f+1 integer coefficients of g (monic, low to
    high).  ``eisenstein_poly`` lists e+1 coefficients of E, each an integer or
    a length-f list describing an element of Z_q.
    """

    def __init__(self, p, N, e=1, f=1, unramified_poly=None, eisenstein_poly=None):
        if not is_prime(p) or p < 3:
            raise ValueError(f"p must be an odd prime, got {p}")
        if N < 1 or e < 1 or f < 1:
            raise ValueError("precision, e and f must be positive")
        self.p, self.N, self.e, self.f = p, N, e, f
        self.modulus = p ** N
        self.rank = e * f
        self.q = p ** f

        g = list(unramified_poly) if unramified_poly is not None else default_unramified_poly(p, f)
        g = [int(c) for c in g]
        if len(g) != f + 1 or g[-1] != 1:
            raise ValueError("unramified polynomial must be monic of degree f")
        if not irreducible_mod_p(g, p):
            raise ValueError("unramified polynomial is not irreducible mod p")
        self.unramified_poly = tuple(g)

        if eisenstein_poly is None:
            eisenstein_poly = [-p] + [0] * (e - 1) + [1]
        E = [self._zq(c) for c in eisenstein_poly]
        if len(E) != e + 1 or E[-1] != self._zq(1):
            raise ValueError("Eisenstein polynomial must be monic of degree e")
        for c in E[:-1]:
            if any(x % p for x in c):
                raise ValueError("non-leading Eisenstein coefficients must be divisible by p")
        if all(x % (p * p) == 0 for x in E[0]):
            raise ValueError("Eisenstein constant term must have valuation exactly 1")
        self.eisenstein_poly = tuple(E)
        self._table = self._structure_constants()

    # -- construction helpers
    def _zq(self, c):
        if isinstance(c, (list, tuple)):
            c = [int(x) for x in c]
            if len(c) > self.f:
                raise ValueError("Z_q coefficient longer than f")
            return tuple(c + [0] * (self.f - len(c)))
        return (int(c),) + (0,) * (self.f - 1)

    def _zq_mul(self, a, b):
        """Exact product in Z[omega]/(g)."""
        f, g = self.f, self.unramified_poly
        out = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        for k in range(2 * f - 2, f - 1, -1):
            c = out[k]
            if c:
                out[k] = 0
                for i in range(f):
                    out[k - f + i] -= c * g[i]
        return tuple(out[:f])

    def _structure_constants(self):
        e, f = self.e, self.f
        # pi^a for a < 2e-1 written over Z_q in the basis 1, pi, ..., pi^{e-1}
        powers = []
        for a in range(2 * e - 1):
            if a < e:
                row = [self._zq(0)] * e
                row[a] = self._zq(1)
            else:
                prev = powers[a - 1]
                shifted = [self._zq(0)] + prev[:-1]
                top = prev[-1]
                for i in range(e):
                    t = self._zq_mul(top, self.eisenstein_poly[i])
                    shifted[i] = tuple(x - y for x, y in zip(shifted[i], t))
                row = shifted
            powers.append(row)
        omega = self._zq([0, 1]) if f > 1 else self._zq(1)
        table = {}
        for a1 in range(e):
            for b1 in range(f):
                for a2 in range(e):
                    for b2 in range(f):
                        wb = self._zq(1)
                        for _ in range(b1 + b2):
                            wb = self._zq_mul(wb, omega)
                        entries = []
                        for a, zq in enumerate(powers[a1 + a2]):
                            prod = self._zq_mul(zq, wb)
                            for b, c in enumerate(prod):
                                if c:
                                    entries.append((a * f + b, c))
                        table[(a1 * f + b1, a2 * f + b2)] = tuple(entries)
        return table

    # -- identity and comparison
    @property
    def key(self):
        return (self.p, self.N, self.e, self.f, self.unramified_poly, self.eisenstein_poly)

    def __eq__(self, other):
        return isinstance(other, LocalRing) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.e == self.f == 1:
            return f"Zp({self.p}, N={self.N})"
        return f"LocalRing(p={self.p}, N={self.N}, e={self.e}, f={self.f})"

    def with_precision(self, N):
        return LocalRing(self.p, N, self.e, self.f, self.unramified_poly,
                         [list(c) for c in self.eisenstein_poly])

    @property
    def places(self):
        return (self,)

    @property
    def vdenom(self):
        """Valuations are reported in units of 1/vdenom of v_p."""
        return self.e

    # -- raw tuple arithmetic
    def normalize(self, coords):
        m = self.modulus
        return tuple(int(c) % m for c in coords)

    def zero_raw(self):
        return (0,) * self.rank

    def one_raw(self):
        return (1 % self.modulus,) + (0,) * (self.rank - 1)

    def int_raw(self, n):
        return (n % self.modulus,) + (0,) * (self.rank - 1)

    def add_raw(self, x, y):
        m = self.modulus
        return tuple((a + b) % m for a, b in zip(x, y))

    def sub_raw(self, x, y):
        m = self.modulus
        return tuple((a - b) % m for a, b in zip(x, y))

    def neg_raw(self, x):
        m = self.modulus
        return tuple(-a % m for a in x)

    def scale_raw(self, x, n):
        m = self.modulus
        return tuple(a * n % m for a in x)

    def mul_raw(self, x, y):
        m = self.modulus
        if self.rank == 1:
            return (x[0] * y[0] % m,)
        acc = [0] * self.rank
        table = self._table
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        ab = a * b
                        for k, c in table[(i, j)]:
                            acc[k] += ab * c
        return tuple(c % m for c in acc)

    def pow_raw(self, x, n):
        if n < 0:
            return self.pow_raw(self.inv_raw(x), -n)
        result = self.one_raw()
        while n:
            if n & 1:
                result = self.mul_raw(result, x)
            x = self.mul_raw(x, x)
            n >>= 1
        return result

    def is_zero_raw(self, x):
        return not any(x)

    def valuation_raw(self, x):
        """pi-adic valuation, or AtLeast(e*N) when x vanishes at precision."""
        e, f, p = self.e, self.f, self.p
        best = None
        for a in range(e):
            row = x[a * f:(a + 1) * f]
            vs = [vp_int(c, p) for c in row if c]
            if vs:
                v = e * min(vs) + a
                best = v if best is None else min(best, v)
        return AtLeast(e * self.N) if best is None else best

    def val_units(self, x):
        """Valuation in units of 1/vdenom of v_p (a lower bound when zero)."""
        return int(self.valuation_raw(x))

    def is_unit_raw(self, x):
        return self.valuation_raw(x) == 0

    def inv_raw(self, x):
        if not self.is_unit_raw(x):
            raise NonUnit(f"{self.wrap(x)} is not a unit")
        if self.rank == 1:
            return (pow(x[0], -1, self.modulus),)
        # a^(q-2) inverts mod pi; Newton doubles the pi-adic precision
        y = self.pow_raw(x, self.q - 2)
        two = self.int_raw(2)
        prec = 1
        while prec < self.e * self.N:
            y = self.mul_raw(y, self.sub_raw(two, self.mul_raw(x, y)))
            prec *= 2
        return y

    def residue_raw(self, x):
        """Coordinates of the reduction mod pi, as a length-f tuple over F_p."""
        return tuple(c % self.p for c in x[:self.f])

    def lift_residue_raw(self, residue):
        if isinstance(residue, int):
            residue = (residue,)
        residue = list(residue) + [0] * (self.f - len(residue))
        return self.normalize(list(residue) + [0] * (self.rank - self.f))

    @cached_property
    def pi_raw(self):
        if self.e == 1:
            return self.normalize([-c for c in self.eisenstein_poly[0]])
        coords = [0] * self.rank
        coords[self.f] = 1
        return tuple(coords)

    @cached_property
    def _pi_e_over_p(self):
        """The unit pi^e / p, computed exactly from the Eisenstein relation."""
        f = self.f
        coords = [0] * self.rank
        for a, c in enumerate(self.eisenstein_poly[:-1]):
            for b in range(f):
                coords[a * f + b] = -c[b] // self.p
        return self.normalize(coords)

    def pi_power_over_p_power(self, a, b):
        """pi^a / p^b as an element of O; requires a >= e*b."""
        if a < self.e * b:
            raise ValueError("pi^a / p^b is not integral")
        u = self.pow_raw(self.inv_raw(self._pi_e_over_p), b) if b else self.one_raw()
        return self.mul_raw(self.pow_raw(self.pi_raw, a - self.e * b), u)

    def integral_ratio_raw(self, pi_exp, num_int):
        """pi^pi_exp / num_int for a nonzero integer num_int, when integral."""
        v = vp_int(num_int, self.p)
        unit = num_int // self.p ** v
        core = self.pi_power_over_p_power(pi_exp, v)
        return self.scale_raw(core, pow(unit, -1, self.modulus))

    def divide_by_pi_raw(self, x):
        """Some y with pi*y = x; the top pi-digit of y is not determined."""
        if self.valuation_raw(x) < 1:
            raise NonUnit("element is not divisible by pi")
        # x / pi = x * pi^(e-1) / p * (p / pi^e)
        t = self.mul_raw(self.mul_raw(x, self.pow_raw(self.pi_raw, self.e - 1)),
                         self.inv_raw(self._pi_e_over_p))
        return tuple(c // self.p for c in t)

    # -- wrapped elements
    def wrap(self, coords):
        if self.rank == 1:
            return PadicScalar._from_raw(self, tuple(coords))
        return LocalElement._from_raw(self, tuple(coords))

    def __call__(self, value):
        if isinstance(value, LocalElement):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} vs {self}")
            return value
        if isinstance(value, int):
            return self.wrap(self.int_raw(value))
        coords = list(value)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates")
        return self.wrap(self.normalize(coords))

    def zero(self):
        return self.wrap(self.zero_raw())

    def one(self):
        return self.wrap(self.one_raw())

    def pi(self):
        return self.wrap(self.pi_raw)

    def omega(self):
        coords = [0] * self.rank
        coords[1 % self.f if self.f > 1 else 0] = 1
        if self.f == 1:
            raise ValueError("f = 1: omega is not part of the basis")
        return self.wrap(self.normalize(coords))

    def basis(self):
        out = []
        for i in range(self.rank):
            coords = [0] * self.rank
            coords[i] = 1
            out.append(self.wrap(tuple(coords)))
        return out


def Zp(p, N):
    return LocalRing(p, N)


class LocalElement:
    __slots__ = ("ring", "coords")

    def __init__(self, ring, coords):
        self.ring = ring
        self.coords = ring.normalize(coords)

    @classmethod
    def _from_raw(cls, ring, coords):
        obj = object.__new__(cls)
        obj.ring = ring
        obj.coords = coords
        return obj

    def _coerce(self, other):
        if isinstance(other, LocalElement):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other.coords
        if isinstance(other, int):
            return self.ring.int_raw(other)
        return NotImplemented

    def _binary(self, other, op):
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return self.ring.wrap(op(self.coords, y))

    def __add__(self, other):
        return self._binary(other, self.ring.add_raw)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, self.ring.sub_raw)

    def __rsub__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return self.ring.wrap(self.ring.sub_raw(y, self.coords))

    def __mul__(self, other):
        return self._binary(other, self.ring.mul_raw)

    __rmul__ = __mul__

    def __neg__(self):
        return self.ring.wrap(self.ring.neg_raw(self.coords))

    def __pow__(self, n):
        return self.ring.wrap(self.ring.pow_raw(self.coords, n))

    def inverse(self):
        return self.ring.wrap(self.ring.inv_raw(self.coords))

    def __truediv__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return self.ring.wrap(self.ring.mul_raw(self.coords, self.ring.inv_raw(y)))

    def __eq__(self, other):
        y = self._coerce(other) if isinstance(other, (LocalElement, int)) else NotImplemented
        if y is NotImplemented:
            return NotImplemented
        return self.coords == y

    def __hash__(self):
        return hash((self.ring, self.coords))

    def valuation(self):
        return self.ring.valuation_raw(self.coords)

    def vp(self):
        v = self.valuation()
        return Fraction(int(v), self.ring.e)

    def is_unit(self):
        return self.valuation() == 0

    def residue(self):
        return self.ring.residue_raw(self.coords)

    def __repr__(self):
        return f"{type(self).__name__}({list(self.coords)}, {self.ring!r})"


class PadicScalar(LocalElement):
    """An element of Z/p^N."""

    __slots__ = ()

    def __init__(self, value, p, N=None, ring=None):
        ring = ring if ring is not None else Zp(p, N)
        super().__init__(ring, (value,))

    @property
    def value(self):
        return self.coords[0]

    @property
    def p(self):
        return self.ring.p

    @property
    def N(self):
        return self.ring.N

    def __int__(self):
        return self.coords[0]

    def __index__(self):
        return self.coords[0]

    def __repr__(self):
        return f"PadicScalar({self.value}, p={self.p}, N={self.N})"


# --- semi-local rings -------------------------------------------------------

class SemiLocalRing:
    """The product of local rings at the places above p, all at one precision."""

    def __init__(self, places):
        places = tuple(places)
        if not places:
            raise ValueError("need at least one place")
        p, N = places[0].p, places[0].N
        if any(pl.p != p or pl.N != N for pl in places):
            raise RingMismatch("places must share p and N")
        self.places = places
        self.p, self.N = p, N
        self.modulus = p ** N
        self.rank = sum(pl.rank for pl in places)
        self._offsets = []
        start = 0
        for pl in places:
            self._offsets.append((start, start + pl.rank))
            start += pl.rank
        self._all_rank_one = all(pl.rank == 1 for pl in places)

    @property
    def key(self):
        return tuple(pl.key for pl in self.places)

    def __eq__(self, other):
        return isinstance(other, SemiLocalRing) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"SemiLocalRing({list(self.places)!r})"

    def with_precision(self, N):
        return SemiLocalRing([pl.with_precision(N) for pl in self.places])

    @cached_property
    def vdenom(self):
        return lcm(*(pl.e for pl in self.places))

    @property
    def residue_field_sizes(self):
        return [pl.q for pl in self.places]

    def split(self, x):
        return [x[a:b] for a, b in self._offsets]

    def join(self, parts):
        out = []
        for part in parts:
            out.extend(part)
        return tuple(out)

    def _each(self, method, *args):
        parts = [self.split(a) for a in args]
        return self.join(getattr(pl, method)(*(pt[i] for pt in parts))
                         for i, pl in enumerate(self.places))

    def normalize(self, coords):
        m = self.modulus
        return tuple(int(c) % m for c in coords)

    def zero_raw(self):
        return (0,) * self.rank

    def one_raw(self):
        return self.join(pl.one_raw() for pl in self.places)

    def int_raw(self, n):
        return self.join(pl.int_raw(n) for pl in self.places)

    def add_raw(self, x, y):
        m = self.modulus
        return tuple((a + b) % m for a, b in zip(x, y))

    def sub_raw(self, x, y):
        m = self.modulus
        return tuple((a - b) % m for a, b in zip(x, y))

    def neg_raw(self, x):
        m = self.modulus
        return tuple(-a % m for a in x)

    def scale_raw(self, x, n):
        m = self.modulus
        return tuple(a * n % m for a in x)

    def mul_raw(self, x, y):
        if self._all_rank_one:
            m = self.modulus
            return tuple(a * b % m for a, b in zip(x, y))
        return self._each("mul_raw", x, y)

    def pow_raw(self, x, n):
        if n < 0:
            return self.pow_raw(self.inv_raw(x), -n)
        result = self.one_raw()
        while n:
            if n & 1:
                result = self.mul_raw(result, x)
            x = self.mul_raw(x, x)
            n >>= 1
        return result

    def inv_raw(self, x):
        return self._each("inv_raw", x)

    def is_zero_raw(self, x):
        return not any(x)

    def valuations_raw(self, x):
        return [pl.valuation_raw(part) for pl, part in zip(self.places, self.split(x))]

    def val_units(self, x):
        D = self.vdenom
        return min(int(v) * (D // pl.e) for pl, v in zip(self.places, self.valuations_raw(x)))

    def is_unit_raw(self, x):
        return all(v == 0 for v in self.valuations_raw(x))

    def residue_raw(self, x):
        return tuple(pl.residue_raw(part) for pl, part in zip(self.places, self.split(x)))

    @cached_property
    def pi_raw(self):
        return self.join(pl.pi_raw for pl in self.places)

    def divide_by_pi_raw(self, x):
        return self._each("divide_by_pi_raw", x)

    def integral_ratio_raw(self, pi_exp, num_int):
        return self.join(pl.integral_ratio_raw(pi_exp, num_int) for pl in self.places)

    def wrap(self, coords):
        return SemiLocalElement._from_raw(self, tuple(coords))

    def __call__(self, value):
        if isinstance(value, SemiLocalElement):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} vs {self}")
            return value
        if isinstance(value, int):
            return self.wrap(self.int_raw(value))
        value = list(value)
        if len(value) == len(self.places) and all(
                isinstance(v, (list, tuple, LocalElement)) for v in value):
            parts = []
            for pl, v in zip(self.places, value):
                coords = v.coords if isinstance(v, LocalElement) else list(v)
                if len(coords) != pl.rank:
                    raise ValueError("place coordinate count mismatch")
                parts.append(pl.normalize(coords))
            return self.wrap(self.join(parts))
        if len(value) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates")
        return self.wrap(self.normalize(value))

    def zero(self):
        return self.wrap(self.zero_raw())

    def one(self):
        return self.wrap(self.one_raw())

    def pi(self):
        return self.wrap(self.pi_raw)


class SemiLocalElement(LocalElement):
    __slots__ = ()

    @property
    def components(self):
        return [pl.wrap(part) for pl, part in zip(self.ring.places, self.ring.split(self.coords))]

    def valuation(self):
        return self.ring.valuations_raw(self.coords)

    def vp(self):
        return min(Fraction(int(v), pl.e) for pl, v in zip(self.ring.places, self.valuation()))

    def is_unit(self):
        return self.ring.is_unit_raw(self.coords)

    def __repr__(self):
        return f"SemiLocalElement({[list(c.coords) for c in self.components]})"


# --- Teichmueller lifts and unit decomposition ------------------------------

def _teichmuller_local(ring, x):
    if ring.valuation_raw(x) != 0:
        raise ZeroResidue("Teichmueller lift of a zero residue")
    x = ring.lift_residue_raw(ring.residue_raw(x))
    # each q-power gains at least e pi-digits when e < p-1; allow e*N steps otherwise
    cap = ring.N + 1 if ring.e < ring.p - 1 else ring.e * ring.N + 1
    for _ in range(cap):
        y = ring.pow_raw(x, ring.q)
        if y == x:
            return x
        x = y
    raise ArithmeticError("Teichmueller iteration did not stabilise")


def teichmuller(residue, ring):
    """The multiplicative lift of a nonzero residue.

    ``residue`` may be an int (an element of F_p), a tuple of F_p
    coordinates in the omega basis, or any element whose reduction is used.
    """
    if isinstance(ring, SemiLocalRing):
        if isinstance(residue, LocalElement):
            parts = ring.split(residue.coords)
        elif isinstance(residue, int):
            parts = [pl.int_raw(residue) for pl in ring.places]
        else:
            parts = [pl.lift_residue_raw(r) for pl, r in zip(ring.places, residue)]
        return ring.wrap(ring.join(_teichmuller_local(pl, part)
                                   for pl, part in zip(ring.places, parts)))
    if isinstance(residue, LocalElement):
        x = residue.coords
    elif isinstance(residue, int):
        x = ring.int_raw(residue)
    else:
        x = ring.lift_residue_raw(residue)
    return ring.wrap(_teichmuller_local(ring, x))


def unit_decompose(u):
    """Split a unit as (Teichmueller part, principal part)."""
    if not u.is_unit():
        raise NonUnit(f"{u} is not a unit")
    teich = teichmuller(u, u.ring)
    return teich, u * teich.inverse()


def ring_ops(a, b, op):
    """Dispatch add/sub/mul/inv on two elements of one ring (b ignored for inv)."""
    if op == "inv":
        return a.inverse()
    if b.ring != a.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__}[op](b)
