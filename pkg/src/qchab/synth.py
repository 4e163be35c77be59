"""Synthetic desk-scale instances.

The field is totally split at p (d places of degree one, r1 = d, r2 = 0),
so delta = d - 1.  Everything else is drawn from a seeded RNG: twist, alpha,
basis points, units, lifts and curve equations.  ``plant_equations``
replaces the curve equations with quadrics vanishing on the images of
chosen parameter tuples under kappa.
"""
import json
import random
from itertools import combinations, combinations_with_replacement
from pathlib import Path

from .app import build_instance, dimension_diagnostics
from .chabauty import build_kappa


def _elt(coords):
    return [[str(int(c))] for c in coords]


class _Draw:
    def __init__(self, seed, p, N, d):
        self.rng = random.Random(seed)
        self.p, self.m, self.d = p, p ** N, d

    def any(self):
        return [self.rng.randrange(self.m) for _ in range(self.d)]

    def unit(self):
        return [self.rng.randrange(1, self.m // self.p) * self.p + self.rng.randrange(1, self.p)
                for _ in range(self.d)]

    def small(self):
        return [self.p * self.rng.randrange(self.m // self.p) for _ in range(self.d)]


def _quadric_monomials(nv, with_constant):
    out = [(0,) * nv] if with_constant else []
    for deg in (1, 2):
        for combo in combinations_with_replacement(range(nv), deg):
            J = [0] * nv
            for i in combo:
                J[i] += 1
            out.append(tuple(J))
    return out


def random_instance(seed=0, p=5, N=4, d=2, g=2, rho=2, r=2, degree_cap=8, name=None):
    """A random instance whose curve equations are quadrics without
    constant term, so the parameter tuple 0 always solves them."""
    dr = _Draw(seed, p, N, d)
    rng = dr.rng
    rho1, delta = rho - 1, d - 1
    gd = g * d

    taus = []
    for _ in range(rho1):
        tau = []
        for a in range(gd):
            for b in range(gd):
                for c in range(b, gd):
                    v = rng.randrange(-2, 3)
                    if v:
                        tau.append([str(a), str(b), str(c), str(v)])
                        if c != b:
                            tau.append([str(a), str(c), str(b), str(v)])
        taus.append(tau)

    def lift(k=rho1):
        return {"fiber": [_elt(dr.unit()) for _ in range(k)]}

    def unit_lift(u, l):
        return {"fiber": [_elt(u if ll == l else [1] * d) for ll in range(rho1)]}

    units = [dr.unit() for _ in range(delta)]
    nv_out = (g + rho - 1) * d
    n_eq = (g + rho - 2) * d
    monos = _quadric_monomials(nv_out, with_constant=False)
    equations = [[[list(J), str(rng.randrange(dr.m))] for J in monos] for _ in range(n_eq)]

    disk = {
        "label": "U0",
        "t_tilde": {"fiber": [_elt(dr.unit()) for _ in range(rho1)],
                    "x": [_elt(dr.any()) for _ in range(g)]},
        "basis_x": [[_elt(dr.small()) for _ in range(g)] for _ in range(r)],
        "units_u": [_elt(u) for u in units],
        "alpha": {"phi": [[[_elt(dr.any()) for _ in range(g)] for _ in range(g)] for _ in range(rho1)],
                  "c": [[_elt(dr.any()) for _ in range(g)] for _ in range(rho1)],
                  "scale": "6"},
        "twist": {"tau": taus, "gamma": None},
        "lifts": {"P": [[lift() for _ in range(r)] for _ in range(r)],
                  "R": [lift() for _ in range(r)],
                  "S": [lift() for _ in range(r)],
                  "V": [[unit_lift(u, l) for l in range(rho1)] for u in units],
                  "W": [[[unit_lift(u, l) for _ in range(r)] for l in range(rho1)] for u in units]},
        "curve_equations": equations,
    }
    return {
        "name": name or f"random-{seed}",
        "field": {"d": str(d), "r1": str(d), "r2": "0", "delta": str(delta), "h": "1",
                  "m_exponent": "6"},
        "curve": {"g": str(g), "rho": str(rho), "r": str(r)},
        "prime": {"p": str(p), "N": str(N)},
        "places": [{"e": "1", "f": "1", "unramified_poly": None, "eisenstein_poly": None}
                   for _ in range(d)],
        "flags": {"good_reduction": True, "tors_coprime": True},
        "degree_cap": str(degree_cap),
        "disks": [disk],
    }


def _solve_mod(A, b, m, p):
    """Solve A x = b mod m for a square A invertible mod p (Gauss-Jordan)."""
    n = len(A)
    M = [list(row) + [bb] for row, bb in zip(A, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] % p), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = pow(M[col][col], -1, m)
        M[col] = [x * inv % m for x in M[col]]
        for i in range(n):
            if i != col and M[i][col]:
                f = M[i][col]
                M[i] = [(x - f * y) % m for x, y in zip(M[i], M[col])]
    return [row[-1] for row in M]


def kappa_images(data, points, disk_index=0):
    """kappa~(z) mod p^N for integer parameter tuples, computed one digit
    above the instance precision so every digit is certified."""
    N = int(data["prime"]["N"])
    work = build_instance(data, precision=N + 1)
    entry = work.disks[disk_index]
    cap = work.degree_cap
    kappa = build_kappa(entry.lifts, entry.disk, cap=cap)
    while kappa.certified_precision() < N:
        cap += 2
        kappa = build_kappa(entry.lifts, entry.disk, cap=cap)
    m = work.p ** N
    return [[int(v.value) % m for v in kappa.rescaled_at(z)] for z in points]


def plant_equations(data, points, seed=0, disk_index=0):
    """Replace the curve equations of one disk with quadrics vanishing
    mod p^N on kappa~(z) for every z in ``points``."""
    p, N = int(data["prime"]["p"]), int(data["prime"]["N"])
    m = p ** N
    rng = random.Random(seed)
    images = kappa_images(data, points, disk_index)
    nv = len(images[0])
    monos = _quadric_monomials(nv, with_constant=True)
    k = len(points)

    def value(J, w):
        out = 1
        for x, e in zip(w, J):
            out = out * pow(x, e, m) % m
        return out

    # solve for the constant and k - 1 linear coefficients, picking linear
    # monomials in which the images are affinely independent mod p
    solved = None
    for lin in combinations(monos[1:nv + 1], k - 1):
        cand = [monos[0], *lin]
        A = [[value(J, w) for J in cand] for w in images]
        if _solve_mod(A, [0] * k, m, p) is not None:
            solved = cand
            break
    if solved is None:
        raise ValueError("planted points are not affinely independent mod p")
    free = [J for J in monos if J not in solved]
    disk = data["disks"][disk_index]
    equations = []
    for _ in range(len(disk["curve_equations"])):
        coeffs = {J: rng.randrange(m) for J in free}
        rhs = [-sum(c * value(J, w) for J, c in coeffs.items()) % m for w in images]
        coeffs.update(zip(solved, _solve_mod(A, rhs, m, p)))
        equations.append([[list(J), str(c)] for J, c in coeffs.items() if c])
    out = json.loads(json.dumps(data))
    out["disks"][disk_index]["curve_equations"] = equations
    return out


PLANTED_POINTS = [(0, 0, 0), (1, 2, 3), (2, 0, 1)]


def bundled_instance():
    """The sample instance: g = 2, rho = 2, r = 2, delta = 1, d = 2, p = 5, N = 4."""
    return random_instance(seed=7, name="bundled-sample")


def rigged_instance():
    """The sample disk with equations planted on three parameter tuples."""
    data = plant_equations(random_instance(seed=7, name="rigged-sample"), PLANTED_POINTS, seed=3)
    return data


def full_rank(data):
    """True when the diagnostics report d_J = r and d_O = delta on every disk."""
    inst = build_instance(data)
    return all(not rep.flags for rep in dimension_diagnostics(inst))


def write_instance(data, path):
    Path(path).write_text(json.dumps(data, indent=1) + "\n")


__all__ = ["random_instance", "plant_equations", "kappa_images", "bundled_instance",
           "rigged_instance", "full_rank", "write_instance", "PLANTED_POINTS"]
