"""The bundled example: context wiring, the fixed verification suite,
deliberate corruptions, and the randomized suite."""

import dataclasses
import json
from fractions import Fraction

import pytest

from lndkit import (
    Check,
    Derivation,
    Point,
    Stratum,
    VerificationReport,
    builtin_context,
    random_suite,
    separates,
    separating_values,
    stratum_of,
    verify_paper,
)

EXPECTED_CHECKS = (
    "flows_terminate",
    "iteration_depths",
    "invariants_annihilated",
    "invariants_weighted_homogeneous",
    "derivation_weight_preserving",
    "exponential_images",
    "flow_on_sample_point",
    "invariants_constant_on_flows",
    "localized_kernel_generators",
    "localized_generators_invariant",
    "folded_localized_generators",
    "partial_v_maps_kernel_to_kernel",
    "quotient_intertwines",
    "fold_intertwines",
    "quotient_images",
    "fold_image_sample",
    "fold_preserves_grading",
    "quotient_kernel_confirmed",
    "quotient_kernel_computed",
    "folded_kernel_confirmed",
    "folded_kernel_computed",
    "folded_square_cube_identity",
    "folded_relations_mod_localizer",
    "membership_representation",
    "kernel_check_extends_candidates",
    "kernel_growth_two_rounds",
    "invariants_vanish_on_core",
    "core_stratum_inseparable",
    "last_invariant_separates_wall_pair",
)


def _status(report, name):
    matches = [c for c in report.checks if c.name == name]
    assert len(matches) == 1
    return matches[0]


# -- context -----------------------------------------------------------------


def test_context_wiring(context):
    assert context.ring.variables == ("x", "s", "t", "u", "v")
    assert context.ring.weights == (1, 3, 3, 3, 2)
    assert context.quotient_ring.variables == ("s", "t", "u", "v")
    assert context.folded_ring.variables == ("x", "v", "t", "u")
    assert len(context.generators) == 6
    assert len(context.folded_generators) == 4
    assert len(context.quotient_kernel) == 3
    assert context.kernel_slice.var == "s"
    assert context.kernel_slice.power == 3
    assert context.quotient_slice.var == "t"
    assert context.folded_slice.power == 2


def test_builtin_context_is_cached():
    assert builtin_context() is builtin_context()


def test_context_rejects_bad_wiring(context):
    with pytest.raises(ValueError):
        dataclasses.replace(context, derivation=context.quotient_derivation)
    with pytest.raises(ValueError):
        dataclasses.replace(context, quotient_map=context.fold_map)
    with pytest.raises(ValueError):
        dataclasses.replace(context, fold_map=context.quotient_map)
    euler = Derivation.from_mapping(context.ring, {"x": context.ring.var("x")})
    with pytest.raises(ValueError):
        dataclasses.replace(context, derivation=euler)


def test_project_point(context):
    p = Point(context.ring, (9, 1, 2, 3, 4))
    shadow = context.project_point(p)
    assert shadow.ring == context.quotient_ring
    assert shadow.coordinates == (1, 2, 3, 4)
    with pytest.raises(ValueError):
        context.project_point(shadow)


# -- strata and separation ------------------------------------------------------


def test_stratum_of(context):
    ring = context.ring
    assert stratum_of(context, Point(ring, (1, 0, 0, 0, 0))) is Stratum.X_NONZERO
    assert (
        stratum_of(context, Point(ring, (0, 2, 0, 0, 0)))
        is Stratum.X_ZERO_S_NONZERO
    )
    assert (
        stratum_of(context, Point(ring, (0, 0, 5, 5, 5))) is Stratum.X_ZERO_S_ZERO
    )


def test_separating_values_and_separates(context):
    ring = context.ring
    p = Point(ring, (1, 1, 1, 1, 1))
    values = separating_values(context, p)
    assert len(values) == 6
    assert values[0] == 1
    assert all(isinstance(v, Fraction) for v in values)
    q = Point(ring, (2, 1, 1, 1, 1))
    assert separates(context, p, q)
    assert not separates(context, p, p)


# -- the fixed verification suite ---------------------------------------------


def test_verify_passes(report):
    assert report.passed
    assert tuple(c.name for c in report.checks) == EXPECTED_CHECKS
    assert all(c.ok for c in report.checks)
    assert all(c.witness is None for c in report.checks)


def test_report_rendering(report):
    text = report.render_text()
    lines = text.splitlines()
    assert lines[-1] == f"{len(EXPECTED_CHECKS)}/{len(EXPECTED_CHECKS)} checks passed"
    assert lines[0].startswith("flows_terminate ")
    assert " ok" in lines[0]
    payload = json.loads(report.render_json())
    assert payload == report.to_json_obj()
    assert payload["passed"] is True
    assert len(payload["checks"]) == len(EXPECTED_CHECKS)


def test_report_structure_helpers():
    failing = VerificationReport(
        (Check("alpha", "ok"), Check("beta", "FAIL", "boom"))
    )
    assert not failing.passed
    assert failing.checks[0].ok
    assert not failing.checks[1].ok
    text = failing.render_text()
    assert "alpha .... ok" in text
    assert "beta ..... FAIL" in text
    assert "    boom" in text
    assert text.endswith("1/2 checks passed")
    assert failing.to_json_obj()["checks"][1]["witness"] == "boom"


# -- corruption drills: break one input, watch the right check fail -------------


def test_corrupted_generator_is_caught(context):
    f = context.generators
    # t is not invariant, so f2 + t leaks through the derivation
    broken = dataclasses.replace(
        context, generators=f[:1] + (f[1] + context.ring.var("t"),) + f[2:]
    )
    report = verify_paper(broken)
    assert not report.passed
    assert not _status(report, "invariants_annihilated").ok
    witness = _status(report, "invariants_annihilated").witness
    assert "f2" in witness


def test_corrupted_folded_generator_is_caught(context):
    h = context.folded_generators
    broken = dataclasses.replace(
        context, folded_generators=h[:3] + (h[3] + context.folded_ring.var("x"),)
    )
    report = verify_paper(broken)
    assert not report.passed
    assert not _status(report, "folded_square_cube_identity").ok


def test_corrupted_quotient_kernel_is_caught(context):
    k = context.quotient_kernel
    flipped = (k[0], -k[1], k[2])
    broken = dataclasses.replace(context, quotient_kernel=flipped)
    report = verify_paper(broken)
    assert not report.passed
    assert not _status(report, "quotient_kernel_computed").ok
    # the sign flip spans the same algebra, so confirmation still holds
    assert _status(report, "quotient_kernel_confirmed").ok


# -- randomized suite ------------------------------------------------------------


def test_random_suite_shape():
    report = random_suite(7, 3)
    assert report.passed
    assert [c.name for c in report.checks] == [
        "random_orbit_invariance",
        "random_core_points_vanish",
        "random_matched_pairs_connected",
        "random_fiber_pairs_split_by_last",
        "random_quotient_recovery",
    ]


def test_random_suite_deterministic():
    first = random_suite(11, 4)
    second = random_suite(11, 4)
    assert first.render_json() == second.render_json()


def test_random_suite_validation():
    with pytest.raises(ValueError):
        random_suite(1, 0)
    with pytest.raises(ValueError):
        random_suite(1, -5)


def test_random_suite_large(random_report):
    assert random_report.passed
    assert all(c.ok for c in random_report.checks)
