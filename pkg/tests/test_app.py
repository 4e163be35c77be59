import copy
import dataclasses
import json
import random

import pytest

from qchab.app import (build_instance, chabauty_conditions, check_conditions,
                       dimension_diagnostics, load_instance, rank_mod, report_json,
                       run_pipeline)
from qchab.cli import sample_path
from qchab.errors import InvariantViolation, SchemaError


@pytest.fixture(scope="module")
def bundled_data():
    return json.loads(sample_path("bundled").read_text())


@pytest.fixture(scope="module")
def pipeline_report(bundled):
    return run_pipeline(bundled)


def _edit(data, fn):
    out = copy.deepcopy(data)
    fn(out)
    return out


# -- loading --------------------------------------------------------------------

def test_bundled_loads(bundled):
    assert (bundled.g, bundled.rho, bundled.r, bundled.delta, bundled.d) == (2, 2, 2, 1, 2)
    assert (bundled.p, bundled.N, bundled.degree_cap) == (5, 4, 8)
    assert len(bundled.disks) == 1
    assert bundled.equation_count == 4


def test_degree_mismatch_rejected(bundled_data):
    bad = _edit(bundled_data, lambda d: d["field"].update(d="3"))
    with pytest.raises(InvariantViolation, match="d = r1"):
        build_instance(bad)


def test_delta_mismatch_rejected(bundled_data):
    bad = _edit(bundled_data, lambda d: d["field"].update(delta="0"))
    with pytest.raises(InvariantViolation, match="delta"):
        build_instance(bad)


def test_ramification_bound_rejected(bundled_data):
    def ramify(d):
        d["places"][0].update(e="4", eisenstein_poly=None)
    with pytest.raises(InvariantViolation, match="every place satisfies e < p - 1"):
        build_instance(_edit(bundled_data, ramify))


def test_place_degrees_must_sum_to_d(bundled_data):
    bad = _edit(bundled_data, lambda d: d["places"].pop())
    with pytest.raises(InvariantViolation, match="sum of e f"):
        build_instance(bad)


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("curve"),
    lambda d: d["prime"].update(p="five"),
    lambda d: d["flags"].update(good_reduction="yes"),
    lambda d: d["disks"][0].pop("lifts"),
])
def test_schema_errors(bundled_data, mutate):
    with pytest.raises(SchemaError):
        build_instance(_edit(bundled_data, mutate))


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(SchemaError):
        load_instance(path)


def test_lift_over_wrong_base_rejected(bundled_data):
    def misplace(d):
        d["disks"][0]["lifts"]["R"][0]["x"] = [[["0"], ["0"]], [["0"], ["0"]]]
    with pytest.raises(InvariantViolation, match="R"):
        build_instance(_edit(bundled_data, misplace))


def test_unit_lift_must_match(bundled_data):
    def perturb(d):
        d["disks"][0]["units_u"][0] = [["7"], ["1"]]
    with pytest.raises(InvariantViolation, match="V"):
        build_instance(_edit(bundled_data, perturb))


def test_even_prime_rejected(bundled_data):
    with pytest.raises(InvariantViolation, match="odd prime"):
        build_instance(_edit(bundled_data, lambda d: d["prime"].update(p="2")))


def test_precision_override(bundled_data):
    inst = build_instance(bundled_data, precision=6, degree_cap=5)
    assert (inst.N, inst.degree_cap) == (6, 5)
    assert inst.with_precision(3).degree_cap == 5


# -- conditions ----------------------------------------------------------------

def test_rational_field_equality_case():
    c = chabauty_conditions(g=2, rho=2, r=2, r1=1, r2=0)
    assert c["geometric"] and c["lhs"] == c["rhs"] == 2


def test_condition_fails():
    c = chabauty_conditions(g=2, rho=2, r=5, r1=2, r2=0)
    assert not c["geometric"] and not c["equivalent_form"]
    assert (c["lhs"], c["rhs"]) == (6, 4)


def test_boundary_holds():
    # d = 3 (r1 = 1, r2 = 1), delta = 1: lhs = r + 2 equals rhs = 3 (g + 1) at r = 3g + 1
    for g in range(1, 5):
        c = chabauty_conditions(g=g, rho=3, r=3 * g + 1, r1=1, r2=1)
        assert c["lhs"] == c["rhs"] and c["geometric"]


def test_forms_agree_on_random_grid():
    rng = random.Random(0)
    for _ in range(500):
        args = dict(g=rng.randint(1, 6), rho=rng.randint(2, 5), r=rng.randint(0, 30),
                    r1=rng.randint(0, 5), r2=rng.randint(0, 4))
        if args["r1"] + args["r2"] == 0:
            continue
        c = chabauty_conditions(**args)
        assert c["geometric"] == c["equivalent_form"]


def test_check_conditions_on_bundled(bundled):
    c = check_conditions(bundled)
    assert c["geometric"] and c["effective_necessary"]
    assert c["effective_target"] == 3


# -- diagnostics --------------------------------------------------------------------

def test_rank_mod():
    assert rank_mod([[1, 0], [0, 5]], 5, 2) == 2
    assert rank_mod([[1, 0], [0, 25]], 5, 2) == 1
    assert rank_mod([[1, 2], [2, 4]], 5, 3) == 1
    assert rank_mod([[5, 10], [10, 25]], 5, 1) == 0


def test_full_rank_units_are_tight(bundled):
    (rep,) = dimension_diagnostics(bundled)
    assert rep.d_O == rep.bounds["d_O"] == bundled.delta
    assert rep.d_J == bundled.r
    assert all(rep.inequalities.values())
    assert rep.flags == []


def test_dependent_basis_flagged(bundled_data):
    def duplicate(d):
        d["disks"][0]["basis_x"][1] = d["disks"][0]["basis_x"][0]
    (rep,) = dimension_diagnostics(build_instance(_edit(bundled_data, duplicate)))
    assert rep.d_J < 2
    assert "kappa may not be finite-to-one" in rep.flags


def test_effective_target(bundled):
    (rep,) = dimension_diagnostics(bundled)
    assert rep.effective_target_met
    assert rep.d_T == bundled.r + bundled.delta * (bundled.rho - 1)


def test_diagnostics_within_bounds(rigged):
    for rep in dimension_diagnostics(rigged):
        for name in ("d_J", "d_O", "d_T"):
            assert getattr(rep, name) <= rep.bounds[name]


# -- pipeline --------------------------------------------------------------------------

def test_pipeline_bound_covers_oracle(pipeline_report):
    (disk,) = pipeline_report["disks"]
    assert "error" not in disk
    total = pipeline_report["bound"]["total"]
    assert isinstance(total, int)
    assert total >= disk["oracle"]["count"]
    assert disk["oracle"]["within_bound"]


def test_pipeline_total_is_sum_of_dims(pipeline_report):
    dims = [int(d["dim"]) for d in pipeline_report["disks"]]
    assert pipeline_report["bound"]["total"] == sum(dims)


def test_check_only_skips_kappa(bundled):
    report = run_pipeline(bundled, check_only=True)
    assert "disks" not in report and "bound" not in report
    assert report["conditions"]["geometric"]
    assert len(report["diagnostics"]) == 1


def test_flags_are_echoed(pipeline_report):
    assert pipeline_report["flags"] == {"good_reduction": True, "tors_coprime": True}


def test_failing_condition_needs_force(bundled):
    # r = 5 on the same disk data: 5 + 1 > 4
    inflated = dataclasses.replace(bundled, r=5)
    with pytest.raises(InvariantViolation, match="geometric"):
        run_pipeline(inflated, check_only=True)
    report = run_pipeline(inflated, check_only=True, force=True)
    assert not report["conditions"]["geometric"]


def test_reports_are_byte_identical(bundled, pipeline_report):
    again = run_pipeline(load_instance(sample_path("bundled")))
    assert report_json(again) == report_json(pipeline_report)
