"""Commutative formal group laws, their logarithm and exponential, and the
Z_p-module structure they induce on a residue disk.

Rational coefficients are never stored.  The logarithm is kept as integral
numerators ``|J| * a_J`` and the exponential as ``|J|! * b_J``; the
denominator of each coefficient is implied by its degree.
"""
from fractions import Fraction
from math import factorial

from .errors import IntegralityUnverified, NonIntegrableDifferential, UncertifiedTail
from .padic import PadicScalar, vp_factorial, vp_int
from .series import OuterSeries, TateSeries, monomials


def _unit(m, i):
    return tuple(1 if j == i else 0 for j in range(m))


def _sub(J, K):
    return tuple(a - b for a, b in zip(J, K))


class DenominatedSeries:
    """m series sum_J (num_J / den(|J|)) X^J with integral numerators.

    ``kind`` is ``"log"`` (denominator |J|) or ``"exp"`` (denominator |J|!).
    """

    def __init__(self, numerators, kind):
        if kind not in ("log", "exp"):
            raise ValueError(kind)
        self.numerators = list(numerators)
        self.kind = kind

    @property
    def ring(self):
        return self.numerators[0].ring

    @property
    def cap(self):
        return self.numerators[0].cap

    def __len__(self):
        return len(self.numerators)

    def __getitem__(self, i):
        return self.numerators[i]

    def denominator(self, J):
        k = sum(J)
        return k if self.kind == "log" else factorial(k)

    def coefficient(self, i, J):
        """(numerator, denominator) of the coefficient of X^J in component i."""
        J = tuple(J)
        return self.numerators[i].coeff(J), self.denominator(J)

    def rational(self, i, J):
        """The coefficient as a fraction, reading the numerator as the integer
        of least absolute value in its class (meaningful over Z_p only)."""
        num, den = self.coefficient(i, J)
        if self.ring.rank != 1:
            raise ValueError("rational() needs a Z_p coefficient ring")
        m = self.ring.modulus
        n = num.coords[0]
        if n > m // 2:
            n -= m
        return Fraction(n, den)


class FormalGroupLaw:
    """An m-dimensional commutative formal group law over Z_p or a local ring.

    ``components`` are TateSeries in 2m variables (U_1..U_m, V_1..V_m).
    ``differentials[i][j]`` is the coefficient of dU_j in omega_i; the default
    is the invariant basis normalized to dU_i in degree zero.  ``exact``
    declares that the components are polynomials, so nothing is lost past
    the degree cap.
    """

    def __init__(self, components, differentials=None, exact=False, check=True):
        self.components = list(components)
        self.dim = len(self.components)
        if self.dim == 0:
            raise ValueError("a formal group law needs at least one component")
        f0 = self.components[0]
        self.ring = f0.ring
        self.cap = f0.cap
        for F in self.components:
            if F.nvars != 2 * self.dim or F.ring != self.ring or F.cap != self.cap:
                raise ValueError("components must share ring, cap and 2m variables")
        self.exact = exact
        if check:
            self._check_identity()
        self.differentials = (self._default_differentials() if differentials is None
                              else [list(row) for row in differentials])
        self._check_differentials()
        self._verified = set()
        self._log = None
        self._exp = None
        self._scaled_exp = None

    # -- constructors
    @classmethod
    def additive(cls, ring, dim=1, cap=8):
        comps = []
        for i in range(dim):
            comps.append(TateSeries(ring, 2 * dim, {_unit(2 * dim, i): 1, _unit(2 * dim, dim + i): 1}, cap))
        return cls(comps, exact=True)

    @classmethod
    def multiplicative(cls, ring, cap=8):
        """U + V + UV, the law of 1 + t under multiplication."""
        F = TateSeries(ring, 2, {(1, 0): 1, (0, 1): 1, (1, 1): 1}, cap)
        return cls([F], exact=True)

    @classmethod
    def conjugated_additive(cls, ring, phi, cap=8):
        """phi^{-1}(phi(U) + phi(V)) for phi = t + sum_k phi[k] t^k.

        ``phi`` maps degrees >= 2 to integral coefficients."""
        coeffs = [ring.zero_raw(), ring.one_raw()] + [ring.zero_raw()] * (cap - 1)
        for k, c in phi.items():
            if k < 2:
                raise ValueError("phi must be t plus terms of degree >= 2")
            if k <= cap:
                coeffs[k] = ring(c).coords
        inv = _revert_univariate(ring, coeffs, cap)
        phi_s = TateSeries(ring, 1, {(k,): c for k, c in enumerate(coeffs) if k}, cap)
        inv_s = TateSeries(ring, 1, {(k,): c for k, c in enumerate(inv) if k}, cap)
        U = TateSeries.variable(ring, 2, 0, cap)
        V = TateSeries.variable(ring, 2, 1, cap)
        total = phi_s.compose([U]) + phi_s.compose([V])
        law = cls([inv_s.compose([total])])
        law.phi = phi_s
        return law

    # -- validation
    def _check_identity(self):
        m = self.dim
        for i, F in enumerate(self.components):
            for J, c in F.coeffs.items():
                u, v = J[:m], J[m:]
                if not any(v) or not any(u):
                    expected = (sum(u) == 1 and u[i] == 1) or (sum(v) == 1 and v[i] == 1)
                    if not expected:
                        raise ValueError(f"F_{i}(U,0) = U or F_{i}(0,V) = V fails at {J}")
            for J in (_unit(2 * m, i), _unit(2 * m, m + i)):
                if F.coeffs.get(J) != self.ring.one_raw():
                    raise ValueError(f"F_{i} is not U_{i} + V_{i} in degree one")

    def swapped(self):
        """The components with U and V exchanged."""
        m = self.dim
        return [TateSeries._make(F.ring, F.nvars, F.cap,
                                 {J[m:] + J[:m]: c for J, c in F.coeffs.items()}, F.env)
                for F in self.components]

    def is_commutative(self):
        return all(a.coeffs == b.coeffs for a, b in zip(self.components, self.swapped()))

    def is_associative(self):
        """F(F(U,V),W) == F(U,F(V,W)) to the degree cap."""
        m, ring, cap = self.dim, self.ring, self.cap
        var = [TateSeries.variable(ring, 3 * m, k, cap) for k in range(3 * m)]
        U, V, W = var[:m], var[m:2 * m], var[2 * m:]
        UV = [F.compose(U + V) for F in self.components]
        VW = [F.compose(V + W) for F in self.components]
        left = [F.compose(UV + W) for F in self.components]
        right = [F.compose(U + VW) for F in self.components]
        return all(a.coeffs == b.coeffs for a, b in zip(left, right))

    def _default_differentials(self):
        """Rows of the inverse of the matrix dF_k/dV_j at V = 0."""
        m, ring, cap = self.dim, self.ring, self.cap
        A = [[{} for _ in range(m)] for _ in range(m)]
        for k, F in enumerate(self.components):
            for J, c in F.coeffs.items():
                u, v = J[:m], J[m:]
                if sum(v) == 1:
                    A[k][v.index(1)][u] = c
        A = [[TateSeries(ring, m, A[k][j], cap) for j in range(m)] for k in range(m)]
        # A = I - B with B of positive order; A^{-1} = sum_n B^n
        B = [[(TateSeries.constant(ring, m, 1, cap) if k == j else TateSeries.zero(ring, m, cap)) - A[k][j]
              for j in range(m)] for k in range(m)]
        ident = [[TateSeries.constant(ring, m, 1 if k == j else 0, cap) for j in range(m)] for k in range(m)]
        inv, term = ident, ident
        for _ in range(cap):
            term = _matmul(term, B)
            if all(t.is_zero() for row in term for t in row):
                break
            inv = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(inv, term)]
        # omega = dU . (dF/dV)^{-1}: omega_i = sum_j inv[j][i] dU_j
        return [[inv[j][i] for j in range(m)] for i in range(m)]

    def _check_differentials(self):
        m = self.dim
        if len(self.differentials) != m or any(len(r) != m for r in self.differentials):
            raise ValueError("differentials must be an m x m array of series")
        for i, row in enumerate(self.differentials):
            for j, w in enumerate(row):
                c0 = w.constant_term()
                want = self.ring.one_raw() if i == j else self.ring.zero_raw()
                if c0 != want:
                    raise ValueError("differentials are not normalized to dU_i in degree zero")

    # -- rescaled law on disk points
    def law_value(self, x, y, disk_ring):
        """F~(x, y) = F(pi x, pi y) / pi for rescaled coordinates (raw tuples)."""
        m = self.dim
        N = disk_ring.N
        e = max(pl.e for pl in disk_ring.places)
        if not self.exact and self.cap < e * N:
            raise UncertifiedTail(f"law known to degree {self.cap}; need {e * N} on this disk")
        pt = list(x) + list(y)
        out = []
        for F in self.components:
            acc = disk_ring.zero_raw()
            for J, c in F.coeffs.items():
                k = sum(J)
                coef = disk_ring.mul_raw(_embed(c, self.ring, disk_ring),
                                         disk_ring.pow_raw(disk_ring.pi_raw, k - 1))
                for a, b in zip(pt, J):
                    if b:
                        coef = disk_ring.mul_raw(coef, disk_ring.pow_raw(a, b))
                acc = disk_ring.add_raw(acc, coef)
            out.append(acc)
        return tuple(out)


def _matmul(A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = A[i][0] * B[0][j]
            for k in range(1, n):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def _embed(c, src, dst):
    if src == dst:
        return c
    if src.rank == 1:
        return dst.int_raw(c[0])
    raise ValueError(f"cannot map coefficients of {src} into {dst}")


def _revert_univariate(ring, coeffs, cap):
    """Compositional inverse of sum_k coeffs[k] T^k (coeffs[1] == 1)."""
    zero, one = ring.zero_raw(), ring.one_raw()
    mul, add = ring.mul_raw, ring.add_raw
    b = [zero] * (cap + 1)
    b[1] = one
    # P[k][n] = [T^n] E^k
    P = [[zero] * (cap + 1) for _ in range(cap + 1)]
    P[1][1] = one
    for k in range(2, cap + 1):
        P[k][k] = one
    for n in range(2, cap + 1):
        for k in range(2, n):
            acc = zero
            for j in range(1, n - k + 2):
                if any(b[j]) and any(P[k - 1][n - j]):
                    acc = add(acc, mul(b[j], P[k - 1][n - j]))
            P[k][n] = acc
        s = zero
        for k in range(2, n + 1):
            if any(coeffs[k]) and any(P[k][n]):
                s = add(s, mul(coeffs[k], P[k][n]))
        b[n] = ring.neg_raw(s)
        P[1][n] = b[n]
    return b


# -- logarithm ----------------------------------------------------------------

def fg_log(G):
    """Formal logarithm: numerators |J| a_J with dL_i = omega_i, L_i = t_i + ...

    Degree by degree, |J| a_{i,J} = sum_j omega_{ij}[J - e_j]; integrability
    demands J_j * (|J| a_J) = |J| * omega_{ij}[J - e_j] for every j."""
    if G._log is not None:
        return G._log
    m, ring, cap = G.dim, G.ring, G.cap
    out = []
    for i in range(m):
        row = G.differentials[i]
        nums = {}
        for J in monomials(m, cap):
            k = sum(J)
            if k == 0:
                continue
            parts = []
            for j in range(m):
                if J[j]:
                    parts.append((j, row[j].coeffs.get(_sub(J, _unit(m, j)), ring.zero_raw())))
            num = ring.zero_raw()
            for _, c in parts:
                num = ring.add_raw(num, c)
            for j, c in parts:
                if ring.scale_raw(num, J[j]) != ring.scale_raw(c, k):
                    raise NonIntegrableDifferential(
                        f"omega_{i} is not closed: mismatch at exponent {J} in direction {j}")
            if any(num):
                nums[J] = num
        out.append(TateSeries(ring, m, nums, cap))
    G._log = DenominatedSeries(out, "log")
    return G._log


# -- exponential --------------------------------------------------------------

def _scaled_log(G, ring):
    """L(pX)/p over ``ring``: coefficient p^{|J|-1}/|J| * num_J, integral."""
    log = fg_log(G)
    p = ring.p
    out = []
    for F in log.numerators:
        coeffs = {}
        for J, c in F.coeffs.items():
            k = sum(J)
            v = vp_int(k, p)
            unit = k // p ** v
            factor = p ** (k - 1 - v) * pow(unit, -1, ring.modulus)
            coeffs[J] = ring.scale_raw(ring.normalize(list(c)), factor)
        out.append(TateSeries(ring, G.dim, coeffs, G.cap))
    return out


def scaled_exp(G):
    """E_p(T) = E(pT)/p as integral series at precision N + D + 1.

    The extra precision absorbs the division by p^{|J|-1} that recovers the
    exponential from its scaled form."""
    if G._scaled_exp is not None:
        return G._scaled_exp
    m, cap = G.dim, G.cap
    hi = G.ring.with_precision(G.ring.N + cap + 1)
    Lp = _scaled_log(G, hi)
    if m == 1:
        coeffs = [hi.zero_raw()] * (cap + 1)
        for J, c in Lp[0].coeffs.items():
            coeffs[J[0]] = c
        inv = _revert_univariate(hi, coeffs, cap)
        E = [TateSeries(hi, 1, {(k,): c for k, c in enumerate(inv) if k}, cap)]
    else:
        # E = T - H(E) with H the nonlinear part of L_p; each pass fixes a degree
        T = [TateSeries.variable(hi, m, i, cap) for i in range(m)]
        H = [L - t for L, t in zip(Lp, T)]
        E = list(T)
        for _ in range(cap):
            E = [t - h.compose(E) for t, h in zip(T, H)]
    G._scaled_exp = E
    return E


def exp_valuation(G, i, J):
    """v_p(b_J) for the exponential coefficient, as a Fraction (or None when
    it is beyond the tracked precision)."""
    E = scaled_exp(G)[i]
    c = E.coeffs.get(tuple(J))
    if c is None:
        return None
    k = sum(J)
    return Fraction(int(E.ring.valuation_raw(c)), E.ring.e) - (k - 1)


def fg_exp(G):
    """Formal exponential: numerators |J|! b_J, integral for a genuine law."""
    if G._exp is not None:
        return G._exp
    ring = G.ring
    p = ring.p
    out = []
    for E in scaled_exp(G):
        coeffs = {}
        for J, c in E.coeffs.items():
            k = sum(J)
            v = vp_factorial(k, p)
            shift = k - 1 - v
            if any(x % p ** shift for x in c):
                raise NonIntegrableDifferential(
                    f"|J|! b_J is not integral at {J}: the input is not a formal group law")
            unit = factorial(k) // p ** v
            coeffs[J] = ring.scale_raw(ring.normalize([x // p ** shift for x in c]), unit)
        out.append(TateSeries(ring, G.dim, coeffs, G.cap))
    G._exp = DenominatedSeries(out, "exp")
    return G._exp


def roundtrip(G):
    """(log(exp(T)), exp(log(T))) with true coefficients reduced mod p^N.

    Both compositions are carried out on the p-scaled series at raised
    precision, where they are integral, then unscaled."""
    m, cap, ring = G.dim, G.cap, G.ring
    Ep = scaled_exp(G)
    hi = Ep[0].ring
    Lp = _scaled_log(G, hi)
    results = []
    for outer, inner in ((Lp, Ep), (Ep, Lp)):
        comps = []
        for F in outer:
            S = F.compose(inner)
            coeffs = {}
            for J, c in S.coeffs.items():
                d = sum(J) - 1
                if any(x % ring.p ** d for x in c):
                    # a non-integral true coefficient: certainly not the identity
                    raise ArithmeticError(f"composition has a non-integral coefficient at {J}")
                coeffs[J] = ring.normalize([x // ring.p ** d for x in c])
            comps.append(TateSeries(ring, m, coeffs, cap))
        results.append(comps)
    return results[0], results[1]


# -- rescaling to a residue disk ----------------------------------------------

class RescaleCheck:
    """Outcome of :func:`disk_rescale_check`; truthy when it passed."""

    def __init__(self, passed, witnesses, degree, e):
        self.passed = passed
        self.witnesses = witnesses
        self.degree = degree
        self.e = e

    def __bool__(self):
        return self.passed

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None

    def find(self, series, J):
        J = tuple(J)
        return next((w for w in self.witnesses if w["series"] == series and w["exponent"] == J), None)

    def __repr__(self):
        return "pass" if self.passed else f"fail({self.witness})"


def _disk_e(disk_ring):
    return max(pl.e for pl in disk_ring.places)


def disk_rescale_check(G, disk_ring=None, degree=None, e=None):
    """Scan v_p of the rescaled coefficients pi^{|J|-1}/|J| * |J| a_J and
    pi^{|J|-1} b_J up to ``degree`` (default: the law's cap).

    ``e`` may be given directly instead of a disk ring.  Every negative
    valuation is recorded; the first in (degree, log-before-exp) order is the
    headline witness.  A pass marks the law usable on that disk."""
    if e is None:
        e = _disk_e(disk_ring) if disk_ring is not None else G.ring.e
    degree = G.cap if degree is None else min(degree, G.cap)
    p = G.ring.p
    Ep = scaled_exp(G)
    log = fg_log(G)
    witnesses = []
    for J in monomials(G.dim, degree):
        k = sum(J)
        if k == 0:
            continue
        base = Fraction(k - 1, e)
        for i in range(G.dim):
            c = log.numerators[i].coeffs.get(J)
            if c is not None:
                v = base - vp_int(k, p) + Fraction(int(G.ring.valuation_raw(c)), G.ring.e)
                if v < 0:
                    witnesses.append({"series": "log", "component": i, "exponent": J, "valuation": v})
        for i in range(G.dim):
            c = Ep[i].coeffs.get(J)
            if c is not None:
                v = base + Fraction(int(Ep[i].ring.valuation_raw(c)), Ep[i].ring.e) - (k - 1)
                if v < 0:
                    witnesses.append({"series": "exp", "component": i, "exponent": J, "valuation": v})
    passed = not witnesses
    if passed:
        G._verified.add(e)
    return RescaleCheck(passed, witnesses, degree, e)


def _require_verified(G, disk_ring):
    e = _disk_e(disk_ring)
    if e not in G._verified:
        raise IntegralityUnverified("run disk_rescale_check for this disk before using the action")


def _tail_start(p, e, N, kind):
    """Smallest K such that every rescaled coefficient of degree > K has
    valuation >= N, or None if no such K exists."""
    slope = Fraction(1, e) - (Fraction(1, p - 1) if kind == "exp" else 0)
    if slope <= 0:
        return None
    K = 1
    while True:
        # past K the bound (k-1)/e - v_p(k or k!) must stay >= N
        limit = K + int(2 * (N + 2) / slope) + 2 * p + 10
        ok = True
        for k in range(K + 1, limit):
            loss = vp_factorial(k, p) if kind == "exp" else vp_int(k, p)
            if Fraction(k - 1, e) - loss < N:
                ok = False
                K = k
                break
        if ok:
            return K


def rescaled_log_coeff(G, disk_ring, i, J):
    num = fg_log(G).numerators[i].coeffs.get(tuple(J))
    if num is None:
        return disk_ring.zero_raw()
    k = sum(J)
    return disk_ring.mul_raw(_embed(num, G.ring, disk_ring), disk_ring.integral_ratio_raw(k - 1, k))


def rescaled_exp_coeff(G, disk_ring, i, J):
    """pi^{|J|-1} b_J in the disk ring; requires the integrality check."""
    num = fg_exp(G).numerators[i].coeffs.get(tuple(J))
    if num is None:
        return disk_ring.zero_raw()
    k = sum(J)
    return disk_ring.mul_raw(_embed(num, G.ring, disk_ring),
                             disk_ring.integral_ratio_raw(k - 1, factorial(k)))


def _outer(G, disk_ring, kind):
    if G.dim != 1:
        raise ValueError("outer series are defined for one-dimensional laws")
    _require_verified(G, disk_ring)
    p, e = G.ring.p, _disk_e(disk_ring)
    s1 = Fraction(1, e) - Fraction(1, p - 1)
    fn = rescaled_log_coeff if kind == "log" else rescaled_exp_coeff

    def coeff(k):
        return fn(G, disk_ring, 0, (k,)) if k else disk_ring.zero_raw()
    return OuterSeries(disk_ring, coeff, G.cap, (s1, -s1), name=f"rescaled {kind}")


def rescaled_log_outer(G, disk_ring):
    """L~(T) = L(pi T)/pi as an outer series over the disk ring."""
    return _outer(G, disk_ring, "log")


def rescaled_exp_outer(G, disk_ring):
    """E~(T) = E(pi T)/pi as an outer series over the disk ring."""
    return _outer(G, disk_ring, "exp")


# -- disk points and the Z_p-action --------------------------------------------

class DiskPoint:
    """A point of the residue disk of the identity, in rescaled coordinates
    x~ = x/pi (raw tuples of the disk ring)."""

    __slots__ = ("group", "ring", "coords")

    def __init__(self, group, ring, coords):
        if len(coords) != group.dim:
            raise ValueError("coordinate count does not match the group dimension")
        self.group = group
        self.ring = ring
        self.coords = tuple(ring(c).coords if not isinstance(c, tuple) else ring.normalize(list(c))
                            for c in coords)

    @classmethod
    def from_unscaled(cls, group, ring, values):
        """From coordinates t divisible by pi; the top pi-digit of t/pi is
        not determined by t mod p^N and is set to zero."""
        coords = [ring.divide_by_pi_raw(ring(v).coords) for v in values]
        return cls(group, ring, coords)

    def unscaled(self):
        return [self.ring.wrap(self.ring.mul_raw(self.ring.pi_raw, c)) for c in self.coords]

    def __add__(self, other):
        if other.group is not self.group or other.ring != self.ring:
            raise ValueError("points of different disks")
        return DiskPoint(self.group, self.ring, self.group.law_value(self.coords, other.coords, self.ring))

    def __eq__(self, other):
        return (isinstance(other, DiskPoint) and other.group is self.group
                and other.ring == self.ring and other.coords == self.coords)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"DiskPoint({[self.ring.wrap(c) for c in self.coords]})"


def _evaluate_rescaled(G, ring, x, kind):
    """Components of L~(x) or E~(x) at a rescaled point."""
    p, e, N = ring.p, _disk_e(ring), ring.N
    K = _tail_start(p, e, N, kind)
    if K is None or K > G.cap:
        raise UncertifiedTail(f"rescaled {kind} needs degree {K} but the law stops at {G.cap}")
    fn = rescaled_log_coeff if kind == "log" else rescaled_exp_coeff
    out = []
    for i in range(G.dim):
        acc = ring.zero_raw()
        for J in monomials(G.dim, K):
            if sum(J) == 0:
                continue
            c = fn(G, ring, i, J)
            if not any(c):
                continue
            for a, b in zip(x, J):
                if b:
                    c = ring.mul_raw(c, ring.pow_raw(a, b))
            acc = ring.add_raw(acc, c)
        out.append(acc)
    return out


def zp_action(z, g):
    """z . g = E~(z L~(g)) for z in Z or Z_p."""
    G, ring = g.group, g.ring
    _require_verified(G, ring)
    if isinstance(z, PadicScalar):
        if z.p != ring.p:
            raise ValueError("scalar over a different prime")
        z = z.value
    z = int(z) % ring.modulus
    y = _evaluate_rescaled(G, ring, g.coords, "log")
    y = [ring.scale_raw(c, z) for c in y]
    return DiskPoint(G, ring, _evaluate_rescaled(G, ring, y, "exp"))


def disk_log(g):
    """L~(g): the rescaled logarithm of a disk point, one raw value per coordinate."""
    _require_verified(g.group, g.ring)
    return _evaluate_rescaled(g.group, g.ring, g.coords, "log")


def iterate_law(n, g):
    """n-fold sum of g under the rescaled law (n >= 0)."""
    acc = DiskPoint(g.group, g.ring, [g.ring.zero_raw()] * g.group.dim)
    for _ in range(n):
        acc = acc + g
    return acc


__all__ = ["disk_log", "FormalGroupLaw", "DenominatedSeries", "DiskPoint", "RescaleCheck", "fg_log", "fg_exp",
           "scaled_exp", "exp_valuation", "roundtrip", "disk_rescale_check", "zp_action",
           "iterate_law", "rescaled_log_outer", "rescaled_exp_outer", "rescaled_log_coeff",
           "rescaled_exp_coeff"]
