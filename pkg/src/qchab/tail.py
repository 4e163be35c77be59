"""Valuation envelopes: sound lower bounds on coefficient valuations of power
series, indexed by total degree.

An envelope stores an explicit profile ``prof[j]`` for degrees 0..H and, past
the horizon H, one affine bound ``far[i] + SLOPES[i]*j`` per slope.  All values
are integers in units of 1/Q of v_p, where Q is divisible by every
ramification index in play, by p-1 and by 16, so that every bound the library
needs is exact.
"""
from fractions import Fraction
from math import ceil, floor

INF = 1 << 60
NEG = -INF
SLOPES = (Fraction(0), Fraction(1, 16), Fraction(1, 8), Fraction(1, 4), Fraction(1, 2), Fraction(1))


def unit_for(ring):
    return ring.vdenom * (ring.p - 1) * 16


def horizon_for(cap):
    return cap + max(16, cap)


def _clamp(x):
    if x >= INF:
        return INF
    if x <= NEG:
        return NEG
    return x


class Envelope:
    __slots__ = ("Q", "prof", "far")

    def __init__(self, Q, prof, far):
        self.Q = Q
        self.prof = list(prof)
        self.far = list(far)

    @classmethod
    def exact(cls, Q, H, values=None):
        """Envelope of a polynomial whose degree-j valuations are ``values[j]``."""
        prof = [INF] * (H + 1)
        for j, v in (values or {}).items():
            if j <= H:
                prof[j] = min(prof[j], v)
        return cls(Q, prof, [INF] * len(SLOPES))

    @property
    def H(self):
        return len(self.prof) - 1

    def _slope_units(self, i):
        return int(SLOPES[i] * self.Q)

    def at(self, j):
        if j <= self.H:
            return self.prof[j]
        return max(_clamp(f + self._slope_units(i) * j) for i, f in enumerate(self.far))

    def nu(self, i):
        """Largest c with v(coef_j) >= c + slope_i * j for every j."""
        s = self._slope_units(i)
        best = self.far[i]
        for j, v in enumerate(self.prof):
            if v < INF:
                best = min(best, v - s * j)
        return best

    def tail_from(self, k):
        """Lower bound on the valuation of every coefficient of degree >= k."""
        vals = [v for v in self.prof[k:]]
        start = max(k, self.H + 1)
        vals.append(max(_clamp(f + self._slope_units(i) * start) for i, f in enumerate(self.far)))
        return min(vals)

    def minimum(self, other):
        return Envelope(self.Q, [min(a, b) for a, b in zip(self.prof, other.prof)],
                        [min(a, b) for a, b in zip(self.far, other.far)])

    def shift(self, c):
        return Envelope(self.Q, [_clamp(v + c) for v in self.prof], [_clamp(f + c) for f in self.far])

    def convolve(self, other):
        a, b = self.prof, other.prof
        H = self.H
        nz_a = [(i, v) for i, v in enumerate(a) if v < INF]
        nz_b = [(i, v) for i, v in enumerate(b) if v < INF]
        prof = [INF] * (H + 1)
        for i, va in nz_a:
            for j, vb in nz_b:
                k = i + j
                if k > H:
                    break
                s = va + vb
                if s < prof[k]:
                    prof[k] = s
        far = []
        for idx in range(len(SLOPES)):
            na, nb = self.nu(idx), other.nu(idx)
            far.append(INF if na >= INF or nb >= INF else _clamp(na + nb))
        return Envelope(self.Q, prof, far)

    def raise_known(self, cap, values):
        """Tighten degrees <= cap with valuations read off exact coefficients."""
        prof = list(self.prof)
        for j in range(min(cap, self.H) + 1):
            prof[j] = max(prof[j], values.get(j, INF))
        return Envelope(self.Q, prof, self.far)

    def convert(self, Q_new, shift=Fraction(0), integral=False):
        """Re-express in units of 1/Q_new after lowering every bound by ``shift``.

        With ``integral`` the true valuations are known to be integers, so
        profile entries may be rounded up."""
        def conv(v, round_up):
            if v >= INF or v <= NEG:
                return v
            x = Fraction(v, self.Q) - shift
            if round_up:
                x = Fraction(ceil(x))
            return floor(x * Q_new)
        prof = [conv(v, integral) for v in self.prof]
        far = [conv(f, False) for f in self.far]
        return Envelope(Q_new, prof, far)

    def to_fraction(self, v):
        if v >= INF:
            return float("inf")
        if v <= NEG:
            return float("-inf")
        return Fraction(v, self.Q)

    def __repr__(self):
        head = [self.to_fraction(v) for v in self.prof[:12]]
        return f"Envelope({head}...)"


def powers(inner, K):
    """Envelopes of inner^k for k = 0..K."""
    one = Envelope.exact(inner.Q, inner.H, {0: 0})
    out = [one]
    for _ in range(K):
        out.append(out[-1].convolve(inner))
    return out


def compose(outer_vals, outer_tail, inner):
    """Envelope of sum_k c_k * Z^k.

    ``outer_vals[k]`` bounds v(c_k) for k <= H (in units); ``outer_tail`` is a
    list of pairs (s1, s0) with v(c_k) >= s1*k + s0 for every k > H.  Returns
    None when no bound on the remainder converges.
    """
    H = inner.H
    Q = inner.Q
    pw = powers(inner, H)
    prof = [INF] * (H + 1)
    for k in range(min(H, len(outer_vals) - 1) + 1):
        ck = outer_vals[k]
        if ck >= INF:
            continue
        for j, v in enumerate(pw[k].prof):
            if v < INF:
                prof[j] = min(prof[j], _clamp(ck + v))
    # k > H remainder, one affine bound per slope
    remainder = []
    for i in range(len(SLOPES)):
        nz = inner.nu(i)
        best = NEG
        for s1, s0 in outer_tail:
            if s1 >= INF or s0 >= INF:
                best = INF
                break
            rate = s1 + nz
            if nz >= INF or rate >= 0:
                val = INF if nz >= INF else _clamp(rate * (H + 1) + s0)
                best = max(best, val)
        remainder.append(best)
    if all(r <= NEG for r in remainder):
        return None
    for j in range(H + 1):
        bound = max(_clamp(r + int(SLOPES[i] * Q) * j) for i, r in enumerate(remainder))
        prof[j] = min(prof[j], bound)
    far = []
    for i in range(len(SLOPES)):
        best = remainder[i]
        for k in range(min(H, len(outer_vals) - 1) + 1):
            ck = outer_vals[k]
            if ck >= INF:
                continue
            nk = pw[k].nu(i)
            if nk < INF:
                best = min(best, _clamp(ck + nk))
        far.append(best)
    return Envelope(Q, prof, far)
