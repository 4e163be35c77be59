"""qchab: residue-disk bounds on rational points of curves, computed with
p-adic Tate series and biextension torsors.

Submodules, bottom-up: ``padic`` (semi-local rings), ``series`` (Tate series
with certified tails), ``formal`` (formal group laws, rescaled log/exp),
``biext`` (the bilinear-twist biextension), ``chabauty`` (the maps D, E, E'
and kappa), ``bound`` (ideals mod p, Groebner dimension, oracles) and
``app`` (instances, conditions, diagnostics, pipeline).
"""
from .errors import *  # noqa: F401,F403
from .padic import (LocalRing, SemiLocalRing, Zp, teichmuller, unit_decompose,
                    is_prime)
from .series import TateSeries, OuterSeries, reduce_mod_p, strassmann_count, split_scalars, recombine
from .formal import (FormalGroupLaw, DiskPoint, fg_log, fg_exp, roundtrip, disk_rescale_check,
                     zp_action, iterate_law, disk_log)
from .biext import (BiextensionModel, TorsorPoint, AlphaMap, partial_add, gm_act, iterate,
                    inverse, check_compatibility, axiom_suite)
from .chabauty import (qstar, DiskData, InitialLifts, build_lifts, normalize_lifts, map_D, map_E,
                       map_Eprime, map_Eprime_formula, xi, t_coordinates, Kappa, build_kappa,
                       kappa_matches)
from .bound import (CurveDisk, pullback_ideal, IdealModP, groebner, fp_dimension, bound_report,
                    hensel_oracle, strassmann_bound_1d, zp_roots)
from .app import (ProblemInstance, load_instance, build_instance, check_conditions,
                  chabauty_conditions, dimension_diagnostics, run_pipeline, report_json)

__version__ = "0.1.0"
