"""Problem instances, the Chabauty conditions, dimension diagnostics and the
end-to-end bound pipeline.

Instances are JSON files.  Every number is a decimal string (plain integers
are accepted too) and every ring element is a list with one coordinate list
per place, e.g. ``[["3"], ["17"]]`` for two places of degree one.
"""
import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from .biext import AlphaMap, BiextensionModel
from .bound import (CurveDisk, IdealModP, bound_report, fp_dimension,
                    hensel_oracle, pullback_ideal)
from .chabauty import DiskData, build_kappa, build_lifts
from .errors import InvariantViolation, QchabError, SchemaError
from .formal import DiskPoint, disk_log
from .padic import LocalRing, SemiLocalRing, Zp, is_prime, teichmuller
from .series import TateSeries


# -- schema -------------------------------------------------------------------

_NUM = {"type": ["string", "integer"]}
_ELT = {"type": "array", "items": {"type": "array", "items": _NUM}}
_VEC = {"type": "array", "items": _ELT}
_LIFT = {
    "type": "object",
    "required": ["fiber"],
    "properties": {"fiber": {"type": "array", "items": _ELT},
                   "x": _VEC,
                   "y": {"type": "array", "items": _VEC}},
}


def _nested(item, depth):
    for _ in range(depth):
        item = {"type": "array", "items": item}
    return item


INSTANCE_SCHEMA = {
    "type": "object",
    "required": ["field", "curve", "prime", "places", "flags", "disks"],
    "properties": {
        "name": {"type": "string"},
        "field": {"type": "object", "required": ["d", "r1", "r2", "delta", "h", "m_exponent"],
                  "properties": {k: _NUM for k in ("d", "r1", "r2", "delta", "h", "m_exponent")}},
        "curve": {"type": "object", "required": ["g", "rho", "r"],
                  "properties": {k: _NUM for k in ("g", "rho", "r")}},
        "prime": {"type": "object", "required": ["p", "N"],
                  "properties": {"p": _NUM, "N": _NUM}},
        "places": {"type": "array", "minItems": 1, "items": {
            "type": "object", "required": ["e", "f"],
            "properties": {"e": _NUM, "f": _NUM,
                           "unramified_poly": {"type": ["array", "null"], "items": _NUM},
                           "eisenstein_poly": {"type": ["array", "null"]}}}},
        "flags": {"type": "object", "required": ["good_reduction", "tors_coprime"],
                  "properties": {"good_reduction": {"type": "boolean"},
                                 "tors_coprime": {"type": "boolean"}}},
        "degree_cap": _NUM,
        "disks": {"type": "array", "minItems": 1, "items": {
            "type": "object",
            "required": ["label", "t_tilde", "basis_x", "units_u", "alpha", "twist", "lifts",
                         "curve_equations"],
            "properties": {
                "label": {"type": "string"},
                "t_tilde": {"type": "object", "required": ["fiber", "x"],
                            "properties": {"fiber": {"type": "array", "items": _ELT}, "x": _VEC}},
                "basis_x": {"type": "array", "items": _VEC},
                "units_u": {"type": "array", "items": _ELT},
                "alpha": {"type": "object", "required": ["phi", "c", "scale"],
                          "properties": {"phi": _nested(_ELT, 3), "c": _nested(_ELT, 2),
                                         "scale": _NUM}},
                "twist": {"type": "object", "required": ["tau"],
                          "properties": {"tau": _nested({"type": "array", "items": _NUM,
                                                         "minItems": 4, "maxItems": 4}, 2),
                                         "gamma": {"anyOf": [_ELT, {"type": "null"}]}}},
                "lifts": {"type": "object", "required": ["P", "R", "S", "V", "W"],
                          "properties": {"P": _nested(_LIFT, 2), "R": _nested(_LIFT, 1),
                                         "S": _nested(_LIFT, 1), "V": _nested(_LIFT, 2),
                                         "W": _nested(_LIFT, 3)}},
                "curve_equations": {"type": "array", "items": {
                    "type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2}}},
            }}},
    },
}


def _int(value, what):
    if isinstance(value, bool):
        raise SchemaError(f"{what}: expected a decimal string, got a boolean")
    if isinstance(value, int):
        return value
    try:
        return int(str(value).strip(), 10)
    except ValueError:
        raise SchemaError(f"{what}: {value!r} is not a decimal integer") from None


# -- the instance -------------------------------------------------------------

@dataclass
class DiskEntry:
    label: str
    disk: DiskData
    lifts: object
    curve: CurveDisk


@dataclass
class ProblemInstance:
    """A validated instance; ``data`` keeps the parsed JSON so the instance
    can be rebuilt at another precision."""

    name: str
    d: int
    r1: int
    r2: int
    delta: int
    h: int
    m_exponent: int
    g: int
    rho: int
    r: int
    p: int
    N: int
    places: list
    flags: dict
    degree_cap: int
    ring: object = field(repr=False)
    disks: list = field(repr=False)
    data: dict = field(repr=False)

    def with_precision(self, N):
        return build_instance(self.data, precision=N, degree_cap=self.degree_cap)

    @property
    def equation_count(self):
        return (self.g + self.rho - 2) * self.d


def load_instance(path, precision=None, degree_cap=None):
    """Read, validate and build an instance from a JSON file."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from None
    return build_instance(data, precision=precision, degree_cap=degree_cap)


def build_instance(data, precision=None, degree_cap=None):
    """Validate parsed JSON and build the instance; ``precision`` and
    ``degree_cap`` override the values in the data."""
    try:
        jsonschema.validate(data, INSTANCE_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(k) for k in exc.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {exc.message}") from None

    fd, cv, pr = data["field"], data["curve"], data["prime"]
    d, r1, r2 = (_int(fd[k], f"field.{k}") for k in ("d", "r1", "r2"))
    delta, h, m_exp = (_int(fd[k], f"field.{k}") for k in ("delta", "h", "m_exponent"))
    g, rho, r = (_int(cv[k], f"curve.{k}") for k in ("g", "rho", "r"))
    p = _int(pr["p"], "prime.p")
    N = _int(pr["N"], "prime.N") if precision is None else int(precision)
    D = _int(data.get("degree_cap", 8), "degree_cap") if degree_cap is None else int(degree_cap)

    if d != r1 + 2 * r2:
        raise InvariantViolation("d = r1 + 2 r2", f"d={d}, r1={r1}, r2={r2}")
    if delta != r1 + r2 - 1:
        raise InvariantViolation("delta = r1 + r2 - 1", f"delta={delta}, r1={r1}, r2={r2}")
    if min(r1, r2) < 0 or g < 1 or rho < 2 or r < 0 or h < 1 or m_exp < 1:
        raise InvariantViolation("field and curve invariants in range",
                                 "need r1, r2, r >= 0, g, h, m >= 1 and rho >= 2")
    if not is_prime(p) or p < 3:
        raise InvariantViolation("p is an odd prime", f"p={p}")
    if N < 2:
        raise InvariantViolation("precision N >= 2", "rescaled coordinates lose one digit")
    if D < 1:
        raise InvariantViolation("degree cap D >= 1", f"D={D}")

    places, specs = [], []
    for i, pl in enumerate(data["places"]):
        e, f = _int(pl["e"], f"places[{i}].e"), _int(pl["f"], f"places[{i}].f")
        if e >= p - 1:
            raise InvariantViolation("every place satisfies e < p - 1", f"place {i} has e={e}, p={p}")
        ur = pl.get("unramified_poly")
        ep = pl.get("eisenstein_poly")
        ur = None if ur is None else [_int(c, f"places[{i}].unramified_poly") for c in ur]
        if ep is not None:
            ep = [[_int(x, f"places[{i}].eisenstein_poly") for x in c] if isinstance(c, list)
                  else _int(c, f"places[{i}].eisenstein_poly") for c in ep]
        try:
            places.append(LocalRing(p, N, e, f, ur, ep))
        except ValueError as exc:
            raise InvariantViolation(f"place {i} is a valid tower", str(exc)) from None
        specs.append({"e": e, "f": f})
    if sum(pl.rank for pl in places) != d:
        raise InvariantViolation("sum of e f over places = d",
                                 f"{sum(pl.rank for pl in places)} != {d}")
    ring = SemiLocalRing(places)

    inst = ProblemInstance(
        name=data.get("name", ""), d=d, r1=r1, r2=r2, delta=delta, h=h, m_exponent=m_exp,
        g=g, rho=rho, r=r, p=p, N=N, places=specs,
        flags={k: bool(v) for k, v in sorted(data["flags"].items())},
        degree_cap=D, ring=ring, disks=[], data=data)
    labels = set()
    for k, dd in enumerate(data["disks"]):
        entry = _build_disk(inst, dd, k)
        if entry.label in labels:
            raise InvariantViolation("disk labels are distinct", entry.label)
        labels.add(entry.label)
        inst.disks.append(entry)
    return inst


def _elt(ring, value, what):
    if len(value) != len(ring.places):
        raise SchemaError(f"{what}: expected {len(ring.places)} per-place coordinate lists")
    parts = []
    for pl, coords in zip(ring.places, value):
        if len(coords) != pl.rank:
            raise SchemaError(f"{what}: a place of degree {pl.rank} needs {pl.rank} coordinates")
        parts.append([_int(c, what) for c in coords])
    return ring(parts).coords


def _vec(ring, value, dim, what):
    if len(value) != dim:
        raise SchemaError(f"{what}: expected a vector of length {dim}")
    return tuple(_elt(ring, v, f"{what}[{i}]") for i, v in enumerate(value))


def _build_disk(inst, dd, k):
    ring, g, rho1 = inst.ring, inst.g, inst.rho - 1
    where = f"disks[{k}]"
    label = dd["label"]

    tw = dd["twist"]
    if len(tw["tau"]) != rho1:
        raise InvariantViolation("one twist per torsor factor", f"{where}: need rho - 1 = {rho1}")
    taus = []
    for l, entries in enumerate(tw["tau"]):
        t = {}
        for a, b, c, v in entries:
            key = (_int(a, "tau"), _int(b, "tau"), _int(c, "tau"))
            t[key] = t.get(key, 0) + _int(v, "tau")
        taus.append(t)
    gamma = tw.get("gamma")
    gamma = None if gamma is None else _elt(ring, gamma, f"{where}.twist.gamma")
    try:
        model = BiextensionModel(ring, g, g, taus, gamma)
    except (ValueError, QchabError) as exc:
        raise InvariantViolation("twist data defines a biextension", f"{where}: {exc}") from None

    al = dd["alpha"]
    scale = _int(al["scale"], f"{where}.alpha.scale")
    if scale != inst.h * inst.m_exponent:
        raise InvariantViolation("alpha scale = h m", f"{where}: {scale} != {inst.h * inst.m_exponent}")
    if len(al["phi"]) != rho1 or len(al["c"]) != rho1:
        raise InvariantViolation("one alpha component per torsor factor", where)
    phis = [[[_elt(ring, c, f"{where}.alpha.phi") for c in row] for row in phi] for phi in al["phi"]]
    if any(len(phi) != g or any(len(row) != g for row in phi) for phi in phis):
        raise SchemaError(f"{where}.alpha.phi: each matrix must be g x g")
    offsets = [_vec(ring, c, g, f"{where}.alpha.c") for c in al["c"]]
    alpha = AlphaMap(ring, phis, offsets, scale)

    basis = [_vec(ring, x, g, f"{where}.basis_x[{i}]") for i, x in enumerate(dd["basis_x"])]
    units = [_elt(ring, u, f"{where}.units_u[{i}]") for i, u in enumerate(dd["units_u"])]
    if len(basis) != inst.r:
        raise InvariantViolation("basis_x has r points", f"{where}: {len(basis)} != {inst.r}")
    if len(units) != inst.delta:
        raise InvariantViolation("units_u has delta units", f"{where}: {len(units)} != {inst.delta}")
    tt = dd["t_tilde"]
    t_fiber = [_elt(ring, u, f"{where}.t_tilde.fiber") for u in tt["fiber"]]
    x_t = _vec(ring, tt["x"], g, f"{where}.t_tilde.x")
    try:
        disk = DiskData(model, alpha, t_fiber, x_t, basis, units)
    except (ValueError, QchabError) as exc:
        raise InvariantViolation("disk data is well formed", f"{where}: {exc}") from None

    lifts = _build_lifts(disk, dd["lifts"], where)

    eqs = [_equation(ring, inst, eq, f"{where}.curve_equations[{i}]")
           for i, eq in enumerate(dd["curve_equations"])]
    if len(eqs) != inst.equation_count:
        raise InvariantViolation("(g + rho - 2) d curve equations",
                                 f"{where}: {len(eqs)} != {inst.equation_count}")
    return DiskEntry(label, disk, lifts, CurveDisk(eqs, label, inst.equation_count))


def _fibers(ring, entry, rho1, what):
    if len(entry["fiber"]) != rho1:
        raise SchemaError(f"{what}.fiber: need one entry per torsor factor")
    return [_elt(ring, u, f"{what}.fiber") for u in entry["fiber"]]


def _check_over(pt, entry, ring, g, what):
    if "x" in entry and _vec(ring, entry["x"], g, f"{what}.x") != pt.x:
        raise InvariantViolation("lifts lie over their prescribed bases", f"{what}: wrong A-point")
    if "y" in entry:
        y = tuple(_vec(ring, v, g, f"{what}.y") for v in entry["y"])
        if y != pt.y:
            raise InvariantViolation("lifts lie over their prescribed bases", f"{what}: wrong B-point")


def _build_lifts(disk, lj, where):
    ring, g, r, rho1 = disk.model.ring, disk.model.g_a, disk.r, disk.factors
    if len(lj["P"]) != r or any(len(row) != r for row in lj["P"]):
        raise SchemaError(f"{where}.lifts.P: need r x r lifts")
    if len(lj["R"]) != r or len(lj["S"]) != r:
        raise SchemaError(f"{where}.lifts: R and S need r lifts each")
    P = [[_fibers(ring, e, rho1, f"{where}.lifts.P[{i}][{j}]") for j, e in enumerate(row)]
         for i, row in enumerate(lj["P"])]
    R = [_fibers(ring, e, rho1, f"{where}.lifts.R[{i}]") for i, e in enumerate(lj["R"])]
    S = [_fibers(ring, e, rho1, f"{where}.lifts.S[{j}]") for j, e in enumerate(lj["S"])]
    try:
        lifts = build_lifts(disk, P, R, S)
    except (ValueError, QchabError) as exc:
        raise InvariantViolation("lifts are torsor points", f"{where}: {exc}") from None

    for i, row in enumerate(lj["P"]):
        for j, e in enumerate(row):
            _check_over(lifts.P[i][j], e, ring, g, f"{where}.lifts.P[{i}][{j}]")
    for name in ("R", "S"):
        for i, e in enumerate(lj[name]):
            _check_over(getattr(lifts, name)[i], e, ring, g, f"{where}.lifts.{name}[{i}]")

    # the unit points are determined by the units; the file must agree
    if len(lj["V"]) != disk.delta or len(lj["W"]) != disk.delta:
        raise SchemaError(f"{where}.lifts: V and W need delta rows")
    for kk in range(disk.delta):
        if len(lj["V"][kk]) != rho1 or len(lj["W"][kk]) != rho1:
            raise SchemaError(f"{where}.lifts: V and W rows need rho - 1 entries")
        for l in range(rho1):
            what = f"{where}.lifts.V[{kk}][{l}]"
            pt = lifts.V[kk][l]
            if tuple(_fibers(ring, lj["V"][kk][l], rho1, what)) != pt.fiber:
                raise InvariantViolation("V carries u_k in factor l", what)
            _check_over(pt, lj["V"][kk][l], ring, g, what)
            if len(lj["W"][kk][l]) != r:
                raise SchemaError(f"{where}.lifts.W[{kk}][{l}]: need r entries")
            for i, e in enumerate(lj["W"][kk][l]):
                what = f"{where}.lifts.W[{kk}][{l}][{i}]"
                pt = lifts.W[kk][l][i]
                if tuple(_fibers(ring, e, rho1, what)) != pt.fiber:
                    raise InvariantViolation("W carries u_k in factor l", what)
                _check_over(pt, e, ring, g, what)
    return lifts


def _equation(ring, inst, terms, what):
    nv = (inst.g + inst.rho - 1) * inst.d
    zp = Zp(inst.p, inst.N)
    coeffs = {}
    for J, c in terms:
        if not isinstance(J, list) or len(J) != nv:
            raise SchemaError(f"{what}: exponents must list {nv} integers")
        J = tuple(_int(x, what) for x in J)
        if min(J) < 0:
            raise SchemaError(f"{what}: negative exponent")
        coeffs[J] = (coeffs.get(J, 0) + _int(c, what)) % zp.modulus
    return TateSeries(zp, nv, coeffs, max(inst.degree_cap, max((sum(J) for J in coeffs), default=0)))


# -- conditions -------------------------------------------------------------------

def chabauty_conditions(g, rho, r, r1, r2):
    """Both forms of the geometric condition, plus a necessary condition for
    the effective target dim Y_t = r + delta (rho - 1)."""
    d, delta = r1 + 2 * r2, r1 + r2 - 1
    lhs = r + delta * (rho - 1)
    geometric = lhs <= (g + rho - 2) * d
    equivalent = r <= (g - 1) * d + (rho - 1) * (r2 + 1)
    if geometric != equivalent:
        raise InvariantViolation("the two forms of the geometric condition agree",
                                 f"g={g}, rho={rho}, r={r}, r1={r1}, r2={r2}")
    necessary = r <= g * d and lhs <= (g + rho - 1) * d
    return {"geometric": geometric, "equivalent_form": equivalent,
            "effective_necessary": necessary,
            "lhs": lhs, "rhs": (g + rho - 2) * d, "effective_target": lhs}


def check_conditions(inst):
    return chabauty_conditions(inst.g, inst.rho, inst.r, inst.r1, inst.r2)


# -- diagnostics --------------------------------------------------------------------

def _vp(x, p):
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def rank_mod(matrix, p, prec):
    """Number of elementary divisors of an integer matrix with valuation < prec."""
    m = p ** prec
    A = [[int(x) % m for x in row] for row in matrix]
    rank = 0
    while A and A[0]:
        best = None
        for i, row in enumerate(A):
            for j, x in enumerate(row):
                if x:
                    v = _vp(x, p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None or best[0] >= prec:
            break
        v, i, j = best
        rank += 1
        piv = A[i][j]
        unit_inv = pow(piv // p ** v, -1, m)
        prow = A[i]
        rest = []
        for ii, row in enumerate(A):
            if ii == i:
                continue
            factor = (row[j] // p ** v) * unit_inv % m
            rest.append([(a - factor * b) % m for a, b in zip(row, prow)])
        A = [[x for jj, x in enumerate(row) if jj != j] for row in rest]
    return rank


def _basis_matrix(disk):
    ring = disk.model.ring
    # the base group is additive, so its formal log is the rescaled coordinate itself
    return [[c for a in x for c in ring.divide_by_pi_raw(a)] for x in disk.basis]


def _unit_log_matrix(disk):
    ring = disk.model.ring
    law = disk.model.series_algebra(1, 2).law
    rows = []
    for u in disk.units:
        w = teichmuller(ring.wrap(u), ring).coords
        principal = ring.mul_raw(u, ring.inv_raw(w))
        x = ring.divide_by_pi_raw(ring.sub_raw(principal, ring.one_raw()))
        rows.append(list(disk_log(DiskPoint(law, ring, [x]))[0]))
    return rows


def _kappa_jacobian(disk, lifts):
    kappa = build_kappa(lifts, disk, cap=1)
    nv = disk.nvars
    unit = [tuple(int(i == j) for i in range(nv)) for j in range(nv)]
    return [[s.coeff(J).value for J in unit] for s in kappa.series]


@dataclass
class DiagnosticsReport:
    label: str
    d_J: int
    d_O: int
    d_T: int
    bounds: dict
    inequalities: dict
    effective_target_met: bool
    flags: list

    def to_json(self):
        return {"label": self.label, "d_J": self.d_J, "d_O": self.d_O, "d_T": self.d_T,
                "bounds": self.bounds, "inequalities": self.inequalities,
                "effective_target_met": self.effective_target_met, "flags": self.flags}


def dimension_diagnostics(inst):
    """Rank estimates d_J, d_O and d_T for every disk, at precision N - 1."""
    prec = inst.N - 1
    out = []
    for entry in inst.disks:
        disk = entry.disk
        g, d, r, delta, rho = inst.g, inst.d, inst.r, inst.delta, inst.rho
        d_J = rank_mod(_basis_matrix(disk), inst.p, prec) if r else 0
        d_O = rank_mod(_unit_log_matrix(disk), inst.p, prec) if delta else 0
        d_T = rank_mod(_kappa_jacobian(disk, entry.lifts), inst.p, prec) if disk.nvars else 0
        bounds = {"d_J": min(r, g * d), "d_O": delta,
                  "d_T": min(r + delta * (rho - 1), (g + rho - 1) * d)}
        ineq = {"d_J <= min(r, g d)": d_J <= bounds["d_J"],
                "d_O <= delta": d_O <= bounds["d_O"],
                "d_T <= min(r + delta (rho - 1), (g + rho - 1) d)": d_T <= bounds["d_T"],
                "d_J + d_O (rho - 1) <= d_T": d_J + d_O * (rho - 1) <= d_T}
        flags = []
        if d_J < r or d_O < delta:
            flags.append("kappa may not be finite-to-one")
        if not all(ineq.values()):
            flags.append("an upper bound is exceeded at this precision")
        out.append(DiagnosticsReport(entry.label, d_J, d_O, d_T, bounds, ineq,
                                     d_T == r + delta * (rho - 1), flags))
    return out


# -- the pipeline ---------------------------------------------------------------------

def _poly_str(f, limit=8):
    items = sorted(f.items(), key=lambda t: (sum(t[0]), t[0]))
    parts = []
    for J, c in items[:limit]:
        mono = "*".join(f"z{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(J) if k)
        parts.append(f"{c}*{mono}" if mono else str(c))
    s = " + ".join(parts) if parts else "0"
    return s + (f" + ... ({len(items) - limit} more terms)" if len(items) > limit else "")


def disk_generators(inst, entry, cap=None):
    """Pulled-back generators f(kappa) of one disk, and the kappa used."""
    kappa = build_kappa(entry.lifts, entry.disk, cap=cap or inst.degree_cap)
    return pullback_ideal(kappa, entry.curve), kappa


def certified_generators(inst, label, depth, cap=None, max_cap=None):
    """Generators whose tails certify evaluation mod p^depth.

    kappa in rescaled coordinates is known to one digit less than the working
    precision, so the disk is rebuilt at precision depth + 1; the degree cap
    is then raised two at a time until the tails certify ``depth``."""
    if depth < 1:
        raise ValueError("depth must be positive")
    work = inst.with_precision(depth + 1)
    entry = next((e for e in work.disks if e.label == label), None)
    if entry is None:
        raise KeyError(label)
    cap = cap or inst.degree_cap
    max_cap = max_cap or cap + 12
    while True:
        gens, _ = disk_generators(work, entry, cap)
        tail = min(f.tail_bound(f.cap + 1) for f in gens)
        if tail >= depth or cap + 2 > max_cap:
            return gens, cap
        cap += 2


def oracle_solutions(inst, label, depth=None, cap=None):
    """Hensel enumeration at ``depth`` (default N) for one disk; returns
    (solutions, degree cap used)."""
    depth = inst.N if depth is None else int(depth)
    gens, used = certified_generators(inst, label, depth, cap)
    return hensel_oracle(gens, depth), used


def run_pipeline(inst, depth=None, check_only=False, force=False, oracle=True):
    """Conditions, diagnostics and, per disk, kappa -> ideal -> F_p-dimension
    -> oracle count.  The returned dict is deterministic."""
    conditions = check_conditions(inst)
    if not conditions["geometric"] and not force:
        raise InvariantViolation("the geometric Chabauty condition",
                                 f"r + delta (rho - 1) = {conditions['lhs']} > {conditions['rhs']}")
    report = {
        "instance": inst.name,
        "prime": {"p": inst.p, "N": inst.N},
        "degree_cap": inst.degree_cap,
        "flags": inst.flags,
        "conditions": conditions,
        "diagnostics": [d.to_json() for d in dimension_diagnostics(inst)],
    }
    if check_only:
        return report
    depth = inst.N if depth is None else int(depth)
    disks, dims, failed = [], [], []
    for entry in inst.disks:
        row = {"label": entry.label}
        try:
            gens, _ = disk_generators(inst, entry)
            ideal = IdealModP.from_series(gens)
            dim = fp_dimension(ideal, cap=inst.degree_cap)
            row["generators_mod_p"] = [_poly_str(f) for f in ideal.generators]
            row["dim"] = str(dim)
            dims.append(dim)
            if oracle:
                sols, used = oracle_solutions(inst, entry.label, depth)
                row["oracle"] = {"depth": depth, "count": len(sols), "degree_cap": used,
                                 "solutions": [list(s) for s in sols[:20]],
                                 "within_bound": (not dim.finite) or len(sols) <= dim.dim}
        except QchabError as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
            failed.append(entry.label)
        disks.append(row)
    report["disks"] = disks
    if failed:
        report["bound"] = {"per_disk": [r.get("dim", "error") for r in disks],
                           "total": "no bound at this prime",
                           "note": "failed disks: " + ", ".join(failed)}
    else:
        report["bound"] = bound_report(dims).to_json()
    return report


def report_json(report):
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


__all__ = ["INSTANCE_SCHEMA", "ProblemInstance", "DiskEntry", "load_instance", "build_instance",
           "chabauty_conditions", "check_conditions", "rank_mod", "DiagnosticsReport",
           "dimension_diagnostics", "disk_generators", "certified_generators", "oracle_solutions", "run_pipeline",
           "report_json"]
