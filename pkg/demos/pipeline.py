"""
From a residue disk to a bound
==============================

Load the packaged sample, check the dimension condition, look at the
rank diagnostics, build the interpolating map kappa, pull the curve
equations back and count.  The rigged sample has equations planted on
three parameter tuples, and the Hensel oracle finds exactly those.
"""
from qchab.app import (check_conditions, dimension_diagnostics, disk_generators,
                       load_instance, oracle_solutions)
from qchab.bound import IdealModP, fp_dimension
from qchab.chabauty import build_kappa, kappa_matches
from qchab.cli import sample_path

inst = load_instance(sample_path("bundled"))
print(inst.name, "g =", inst.g, "rho =", inst.rho, "r =", inst.r, "d =", inst.d)
print(check_conditions(inst))

# d_J = r and d_O = delta: kappa is finite-to-one at this precision
for rep in dimension_diagnostics(inst):
    print(rep.label, "d_J", rep.d_J, "d_O", rep.d_O, "d_T", rep.d_T, rep.flags)

# kappa interpolates E' exactly at integer parameters
entry = inst.disks[0]
kappa = build_kappa(entry.lifts, entry.disk, cap=inst.degree_cap)
print("kappa certified to", kappa.certified_precision(), "digits")
print("matches at (3, -1, 7):", kappa_matches(kappa, entry.lifts, entry.disk, [3, -1, 7]))

for name in ("bundled", "rigged"):
    inst = load_instance(sample_path(name))
    entry = inst.disks[0]
    gens, _ = disk_generators(inst, entry)
    dim = fp_dimension(IdealModP.from_series(gens), cap=inst.degree_cap)
    sols, cap = oracle_solutions(inst, entry.label)
    print(f"{name}: dim {dim}, oracle {sols} (degree cap {cap})")
