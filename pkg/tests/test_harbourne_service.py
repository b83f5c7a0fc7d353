import random
from fractions import Fraction

import pytest

from domain import Component, ConfigurationSummary, MultiplicityVector, PointSelection
from services.bound_service import BoundService
from services.harbourne_service import HarbourneService
from utils.config import config
from utils.errors import (
    InconsistentSelectionError,
    InvalidInputError,
    NoSingularPointsError,
    UnsupportedConfigurationError,
)

harbourne = HarbourneService()

PLANE_LINE = Component(genus=0, self_intersection=1, canonical_degree=-3)


def hypersurface_lines(d, k, counts, **kwargs):
    line = Component(genus=0, self_intersection=2 - d, canonical_degree=d - 4)
    return ConfigurationSummary((line,) * k, MultiplicityVector.from_mapping(counts), **kwargs)


def plane_lines(k, counts):
    return ConfigurationSummary((PLANE_LINE,) * k, MultiplicityVector.from_mapping(counts))


def test_multiplicity_vector_normalizes_entries():
    mv = MultiplicityVector(((3, 1), (2, 2), (2, 1), (5, 0)))
    assert mv.entries == ((2, 3), (3, 1))
    assert mv.s == 4
    assert mv.t(2) == 3 and mv.t(4) == 0
    assert mv.label() == "3:1 2:3"


@pytest.mark.parametrize("entries", [((1, 2),), ((2, -1),)])
def test_multiplicity_vector_rejects_bad_entries(entries):
    with pytest.raises(InvalidInputError):
        MultiplicityVector(entries)


def test_f_vector_and_max_multiplicity():
    mv = MultiplicityVector.from_mapping({3: 1, 2: 3})
    assert harbourne.f_vector(mv) == (4, 9, 21)
    assert harbourne.max_multiplicity(mv) == 3
    with pytest.raises(InvalidInputError):
        harbourne.max_multiplicity(MultiplicityVector())


@pytest.mark.parametrize("d", range(4, 13))
def test_schur_star_index_is_quadratic(d):
    star = hypersurface_lines(d, d, {d: 1})
    assert harbourne.c_squared(star) == d
    assert harbourne.harbourne_index(star) == d - d * d


def test_index_of_plane_triangle():
    assert harbourne.harbourne_index(plane_lines(3, {2: 3})) == -1


def test_index_needs_singular_points():
    with pytest.raises(NoSingularPointsError):
        harbourne.harbourne_index(plane_lines(1, {}))


def test_c_squared_rejects_non_transversal():
    summary = ConfigurationSummary(
        (PLANE_LINE,) * 3, MultiplicityVector.from_mapping({2: 3}), transversal=False
    )
    with pytest.raises(UnsupportedConfigurationError):
        harbourne.c_squared(summary)


@pytest.mark.parametrize("s", range(1, 51))
def test_pencil_with_smooth_points(s):
    pencil = plane_lines(5, {5: 1})
    selection = PointSelection.of(singular={5: 1}, smooth=s)
    assert harbourne.harbourne_constant_at_points(pencil, selection) == Fraction(-s, s + 1)


def test_constant_rejects_selection_beyond_configuration():
    triangle = plane_lines(3, {2: 3})
    with pytest.raises(InconsistentSelectionError):
        harbourne.harbourne_constant_at_points(triangle, PointSelection.of(singular={2: 4}))
    with pytest.raises(InconsistentSelectionError):
        harbourne.harbourne_constant_at_points(triangle, PointSelection.of(singular={3: 1}))


def test_constant_with_off_curve_points():
    triangle = plane_lines(3, {2: 3})
    selection = PointSelection.of(singular={2: 3}, off_curve=1)
    assert harbourne.harbourne_constant_at_points(triangle, selection) == Fraction(9 - 12, 4)


def test_point_selection_must_be_non_empty():
    with pytest.raises(InvalidInputError):
        PointSelection(())


def test_intersection_identity_check():
    triangle = plane_lines(3, {2: 3})
    assert harbourne.intersection_identity_check(triangle, 6)
    assert not harbourne.intersection_identity_check(triangle, 4)


def test_singular_selection_and_augmented_value():
    triangle = plane_lines(3, {2: 3})
    selection = harbourne.singular_selection(triangle)
    assert selection.points == (2, 2, 2)
    base = harbourne.harbourne_constant_at_points(triangle, selection)
    augmented = harbourne.augmented_value(base, 3, [1, 0])
    expected = harbourne.harbourne_constant_at_points(
        triangle, PointSelection.of(singular={2: 3}, smooth=1, off_curve=1)
    )
    assert augmented == expected == Fraction(-4, 5)


def test_selection_sweep_finds_singular_points():
    value, selection = harbourne.selection_sweep(plane_lines(3, {2: 3}))
    assert value == -1
    assert selection.points == (2, 2, 2)


def test_selection_sweep_with_smooth_points():
    value, selection = harbourne.selection_sweep(plane_lines(5, {5: 1}), max_smooth=4)
    assert value == Fraction(-4, 5)
    assert selection.points == (5, 1, 1, 1, 1)


def test_selection_sweep_guardrail(monkeypatch):
    monkeypatch.setattr(config, "SWEEP_MAX_SELECTIONS", 10)
    with pytest.raises(InvalidInputError):
        harbourne.selection_sweep(plane_lines(6, {2: 15}))


def _random_line_t_vector(rng, k):
    remaining = k * (k - 1)
    counts = {}
    while remaining:
        r = rng.choice([r for r in range(2, k + 1) if r * (r - 1) <= remaining])
        counts[r] = counts.get(r, 0) + 1
        remaining -= r * (r - 1)
    return counts


def test_line_formula_agrees_with_index_on_random_configurations():
    rng = random.Random(20240611)
    bounds = BoundService(harbourne)
    for _ in range(1000):
        d = rng.randint(4, 9)
        k = rng.randint(2, 12)
        counts = _random_line_t_vector(rng, k)
        summary = hypersurface_lines(d, k, counts)
        mv = summary.multiplicities
        assert mv.pair_total() == k * (k - 1)
        assert bounds.line_config_index(d, k, mv) == harbourne.harbourne_index(summary)


@pytest.mark.parametrize("k, counts, max_smooth, minimum, singular_value, minimise", [
    (3, {2: 3}, 2, -1, -1, True),
    (5, {5: 1}, 4, Fraction(-4, 5), 0, False),
])
def test_sweep_against_singular_points(k, counts, max_smooth, minimum, singular_value, minimise):
    sweep = harbourne.sweep_against_singular_points(plane_lines(k, counts), max_smooth)
    assert sweep.minimum == minimum
    assert sweep.singular_value == singular_value == harbourne.harbourne_index(plane_lines(k, counts))
    assert sweep.singular_points_minimise is minimise


def _random_summary(rng):
    components = []
    for _ in range(rng.randint(1, 8)):
        genus = rng.randint(0, 3)
        self_intersection = rng.randint(-6, 6)
        components.append(Component(genus, self_intersection, 2 * genus - 2 - self_intersection))
    counts = {r: rng.randint(0, 4) for r in rng.sample(range(2, 8), rng.randint(1, 4))}
    counts[rng.randint(2, 7)] = rng.randint(1, 3)
    return ConfigurationSummary(tuple(components), MultiplicityVector.from_mapping(counts))


def test_index_is_constant_at_all_singular_points():
    rng = random.Random(7)
    for _ in range(500):
        summary = _random_summary(rng)
        selection = PointSelection.of(singular=summary.multiplicities.as_dict())
        assert harbourne.harbourne_index(summary) == harbourne.harbourne_constant_at_points(summary, selection)


def test_index_ignores_component_and_multiplicity_order():
    rng = random.Random(11)
    for _ in range(300):
        summary = _random_summary(rng)
        components = list(summary.components)
        rng.shuffle(components)
        points = [r for r, t in summary.multiplicities.items() for _ in range(t)]
        rng.shuffle(points)
        relabelled = ConfigurationSummary(tuple(components), MultiplicityVector.from_multiplicities(points))
        assert harbourne.harbourne_index(relabelled) == harbourne.harbourne_index(summary)
        assert harbourne.f_vector(relabelled.multiplicities) == harbourne.f_vector(summary.multiplicities)
