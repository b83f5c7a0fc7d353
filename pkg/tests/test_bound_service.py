from fractions import Fraction

import pytest

from domain import Component, ConfigurationSummary, MultiplicityVector, PointSelection
from services.bound_service import PSEUDOLINE_FLAT_BOUND, BoundService
from services.surface_service import SurfaceService
from utils.errors import (
    BoundNotApplicableError,
    InvalidInputError,
    MixedGenusError,
    UnsupportedConfigurationError,
)

bounds = BoundService()
surfaces = SurfaceService()

PLANE_LINE = Component(genus=0, self_intersection=1, canonical_degree=-3)
K3_RATIONAL = Component(genus=0, self_intersection=-2, canonical_degree=0)


def star(d):
    line = Component(genus=0, self_intersection=2 - d, canonical_degree=d - 4)
    return ConfigurationSummary((line,) * d, MultiplicityVector.from_mapping({d: 1}), connected=True)


def plane(k, counts):
    return ConfigurationSummary((PLANE_LINE,) * k, MultiplicityVector.from_mapping(counts), connected=True)


def test_quartic_star_kodaira_bound_and_note():
    quartic = surfaces.preset("DegreeDInP3", 4)
    outcome = bounds.kodaira_index_bound(quartic, star(4))
    assert outcome.bound_value == -68
    assert outcome.margin == 56
    assert outcome.satisfied
    assert "-73" in outcome.note


def test_miyaoka_check_on_quartic_star():
    outcome = bounds.miyaoka_combinatorial_check(surfaces.preset("K3"), ConfigurationSummary(
        (K3_RATIONAL,) * 4, MultiplicityVector.from_mapping({4: 1})
    ))
    assert (outcome.lhs, outcome.rhs, outcome.margin) == (16, 72, 56)


def test_kodaira_bound_on_enriques_pair():
    summary = ConfigurationSummary((K3_RATIONAL,) * 2, MultiplicityVector.from_mapping({2: 1}))
    outcome = bounds.kodaira_index_bound(surfaces.preset("Enriques"), summary)
    assert outcome.bound_value == -35
    assert outcome.quantity == -6


def test_kodaira_bounds_need_nonnegative_kodaira_dimension():
    outcome = bounds.kodaira_index_bound(surfaces.preset("P2C"), plane(3, {2: 3}))
    assert not outcome.applicable
    assert outcome.reason == "kodaira_dimension_negative"
    assert outcome.satisfied is None


def test_mixed_genera():
    elliptic = Component(genus=1, self_intersection=0, canonical_degree=0)
    summary = ConfigurationSummary((K3_RATIONAL, elliptic), MultiplicityVector.from_mapping({2: 2}))
    k3 = surfaces.preset("K3")
    with pytest.raises(MixedGenusError):
        bounds.kodaira_index_bound(k3, summary)
    first, second = bounds.inhomogeneous_bounds(k3, summary)
    # g(C) = 1 + (0 - 1) + (1 - 1) = 0
    assert bounds.curve_genus(summary) == 0
    assert first.lhs == 0 + 0 + 4 * 1 - 2
    assert second.bound_value == -4 + Fraction(-72 + 2 + 2, 2)


def test_genus01_and_k_regular():
    assert bounds.genus01_uniform_bound(surfaces.preset("K3")).bound_value == -76
    assert bounds.genus01_uniform_bound(surfaces.preset("Enriques")).bound_value == -40
    assert bounds.k_regular_bound(surfaces.preset("K3"), 2).bound_value == -78
    assert bounds.k_regular_bound(surfaces.preset("K3"), 1).reason == "genus_at_most_one"


def test_line_bounds():
    assert bounds.connected_line_bound(4) == -12
    assert bounds.max_mult_line_bound(5, 3) == -12
    assert bounds.arbitrary_line_bound(4, 7) == -26
    assert bounds.max_disjoint_lines(4) == 16
    assert bounds.uniform_line_bound(4) == -42
    assert bounds.uniform_line_bound(5) == -107


@pytest.mark.parametrize("d", range(4, 21))
def test_uniform_bound_from_isolated_lines(d):
    assert bounds.arbitrary_line_bound(d, 2 * d * (d - 2) - 1) == -2 * d ** 3 + 7 * d ** 2 - 6 * d - 2


def test_line_bounds_need_degree_four():
    with pytest.raises(BoundNotApplicableError) as excinfo:
        bounds.connected_line_bound(3)
    assert excinfo.value.reason == "degree_below_four"
    with pytest.raises(InvalidInputError):
        bounds.max_mult_line_bound(5, 6)


def test_line_config_index_matches_star():
    assert bounds.line_config_index(4, 4, MultiplicityVector.from_mapping({4: 1})) == -12


@pytest.mark.parametrize("counts, margin", [
    ({2: 3}, -5),
    ({2: 36}, 28),
    ({4: 1}, Fraction(-17, 2)),
    ({2: 6}, -2),
    ({3: 1, 2: 3}, Fraction(-7, 2)),
])
def test_shnurnikov_margin(counts, margin):
    assert bounds.shnurnikov_margin(MultiplicityVector.from_mapping(counts)) == margin


def test_hirzebruch_margin():
    assert bounds.hirzebruch_margin(MultiplicityVector.from_mapping({2: 15}), 6) == 9
    with pytest.raises(BoundNotApplicableError):
        bounds.hirzebruch_margin(MultiplicityVector.from_mapping({4: 1, 2: 4}), 5)


def test_abelian_elliptic_margin():
    assert bounds.abelian_elliptic_margin(MultiplicityVector.from_mapping({2: 1, 3: 2, 6: 1})) == 1


@pytest.mark.parametrize("k, counts, index", [
    (3, {2: 3}, -1),
    (4, {3: 1, 2: 3}, Fraction(-5, 4)),
    (4, {2: 6}, Fraction(-4, 3)),
])
def test_pseudoline_index(k, counts, index):
    result = bounds.pseudoline_index_bound(plane(k, counts))
    assert result.index == index
    assert result.flat_bound == PSEUDOLINE_FLAT_BOUND == Fraction(-149, 40)
    assert result.index >= result.flat_bound


def test_refined_pseudoline_bound_value():
    result = bounds.pseudoline_index_bound(plane(4, {2: 6}))
    assert result.refined_bound == Fraction(-137, 120)


def test_pseudoline_bound_rejects_pencils_and_bad_counts():
    with pytest.raises(UnsupportedConfigurationError):
        bounds.pseudoline_index_bound(plane(4, {4: 1}))
    with pytest.raises(UnsupportedConfigurationError):
        bounds.pseudoline_index_bound(plane(4, {2: 5}))


def test_point_augmentation():
    outcome = bounds.point_augmentation_check(Fraction(-1), 3, [1])
    assert outcome.augmented_value == -1
    assert outcome.hypothesis and outcome.holds

    pencil = bounds.point_augmentation_check(Fraction(0), 1, [1])
    assert pencil.augmented_value == Fraction(-1, 2)
    assert not pencil.hypothesis and pencil.holds


def test_point_augmentation_for_configuration():
    triangle = plane(3, {2: 3})
    outcome = bounds.point_augmentation_for(triangle, PointSelection.of(singular={2: 3}, smooth=2))
    assert outcome.augmented_count == 5
    assert outcome.augmented_value == -1
    with pytest.raises(UnsupportedConfigurationError):
        bounds.point_augmentation_for(triangle, PointSelection.of(singular={2: 2}, smooth=2))


def test_evaluate_all_on_quartic_star():
    applicable, skipped = bounds.evaluate_all(surfaces.preset("DegreeDInP3", 4), star(4))
    by_name = {o.name: o for o in applicable}
    assert set(by_name) == {
        "miyaoka_combinatorial", "kodaira_index", "genus01_uniform", "line_index_formula",
        "connected_line", "max_mult_line", "arbitrary_line", "uniform_line",
    }
    assert by_name["connected_line"].bound_value == -12
    assert by_name["connected_line"].margin == 0
    assert all(o.satisfied for o in applicable)
    assert skipped == []


def test_evaluate_all_on_plane_triangle():
    applicable, skipped = bounds.evaluate_all(surfaces.preset("P2R"), plane(3, {2: 3}))
    by_name = {o.name: o for o in applicable}
    assert by_name["real_line"].margin == 2
    assert by_name["complex_line"].margin == 3
    assert by_name["plane_intersection_identity"].satisfied
    assert by_name["pseudoline_flat"].satisfied
    assert by_name["shnurnikov"].margin == -5
    assert by_name["shnurnikov"].informational
    assert not by_name["pseudoline_refined"].satisfied
    assert by_name["pseudoline_refined"].informational
    assert {o.name for o in skipped} == {"miyaoka_combinatorial", "kodaira_index", "hirzebruch"}
    assert all(o.informational or o.satisfied for o in applicable)


def test_evaluate_all_skips_cubic_surface_line_bounds():
    cubic = surfaces.preset("DegreeDInP3", 3)
    line = surfaces.line_component(cubic)
    summary = ConfigurationSummary((line,) * 3, MultiplicityVector.from_mapping({3: 1}))
    applicable, skipped = bounds.evaluate_all(cubic, summary)
    assert applicable == []
    reasons = {o.name: o.reason for o in skipped}
    assert reasons["connected_line"] == "degree_below_four"
    assert reasons["kodaira_index"] == "kodaira_dimension_negative"


def test_evaluate_all_with_isolated_lines():
    d = 4
    line = Component(genus=0, self_intersection=2 - d, canonical_degree=d - 4)
    summary = ConfigurationSummary(
        (line,) * 11, MultiplicityVector.from_mapping({4: 1}), connected=False, isolated_lines=7
    )
    applicable, skipped = bounds.evaluate_all(surfaces.preset("DegreeDInP3", d), summary)
    by_name = {o.name: o for o in applicable}
    assert by_name["arbitrary_line"].bound_value == -26
    assert by_name["arbitrary_line"].margin == 0
    assert {o.name: o.reason for o in skipped}["connected_line"] == "not_connected"


def test_arbitrary_line_bound_needs_isolated_line_count():
    quartic = surfaces.preset("DegreeDInP3", 4)
    line = surfaces.line_component(quartic)
    summary = ConfigurationSummary((line,) * 5, MultiplicityVector.from_mapping({4: 1}))
    applicable, skipped = bounds.evaluate_all(quartic, summary)
    assert {o.name: o.reason for o in skipped}["arbitrary_line"] == "isolated_lines_unknown"
    assert all(o.satisfied for o in applicable)
    assert "uniform_line" in {o.name for o in applicable}


@pytest.mark.parametrize("connected, isolated_lines, known", [
    (True, None, 0),
    (None, None, None),
    (False, None, None),
    (False, 3, 3),
])
def test_known_isolated_lines(connected, isolated_lines, known):
    summary = ConfigurationSummary(
        (K3_RATIONAL,) * 4, MultiplicityVector.from_mapping({2: 2}),
        connected=connected, isolated_lines=isolated_lines,
    )
    assert summary.known_isolated_lines() == known


ELLIPTIC = Component(genus=1, self_intersection=0, canonical_degree=0)


@pytest.mark.parametrize("n, counts, expected", [
    (3, {2: 3}, -3),
    (4, {3: 1, 2: 2}, Fraction(-10, 3)),
    (4, {3: 2}, -4),
    (6, {6: 1}, -4),
    (5, {2: 2, 5: 1}, Fraction(-10, 3)),
])
def test_kodaira_index_bound_on_abelian_elliptic(n, counts, expected):
    mv = MultiplicityVector.from_mapping(counts)
    summary = ConfigurationSummary((ELLIPTIC,) * n, mv)
    outcome = bounds.kodaira_index_bound(surfaces.preset("Abelian"), summary)
    assert outcome.bound_value == expected == -4 + Fraction(mv.t(2), mv.s)


def test_abelian_elliptic_outcome_uses_margin():
    mv = MultiplicityVector.from_mapping({2: 1, 3: 2, 6: 1})
    summary = ConfigurationSummary((ELLIPTIC,) * 6, mv)
    applicable, _ = bounds.evaluate_all(surfaces.preset("Abelian"), summary)
    outcome = {o.name: o for o in applicable}["abelian_elliptic"]
    assert outcome.margin == bounds.abelian_elliptic_margin(mv) == 1


@pytest.mark.parametrize("d", range(4, 13))
def test_line_bounds_agree_at_extremes(d):
    connected = bounds.connected_line_bound(d)
    assert bounds.max_mult_line_bound(d, d) == connected
    assert bounds.arbitrary_line_bound(d, 0) == connected


@pytest.mark.parametrize("d", range(4, 13))
def test_star_attains_connected_line_bound(d):
    applicable, _ = bounds.evaluate_all(surfaces.preset("DegreeDInP3", d), star(d))
    outcome = {o.name: o for o in applicable}["connected_line"]
    assert outcome.bound_value == d - d * d
    assert outcome.margin == 0
    assert outcome.satisfied
