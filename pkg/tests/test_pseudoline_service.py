from fractions import Fraction

import pytest

from domain import MultiplicityVector, WiringDiagram
from services.arrangement_service import ArrangementService
from services.pseudoline_service import PseudolineService
from utils.config import config
from utils.errors import EnumerationLimitError, InvalidInputError

pseudolines = PseudolineService()
arrangements = ArrangementService()


def wd(k, *events):
    return WiringDiagram(k=k, events=tuple(events))


def t_of(counts):
    return MultiplicityVector.from_mapping(counts)


K5_T_VECTORS = {
    t_of({2: 10}).entries,
    t_of({3: 1, 2: 7}).entries,
    t_of({3: 2, 2: 4}).entries,
    t_of({4: 1, 2: 4}).entries,
}


@pytest.mark.parametrize("w", [
    wd(3, (1, 2), (2, 2), (1, 2)),
    wd(4, (1, 3), (3, 2), (2, 2), (1, 2)),
    wd(4, (1, 2), (3, 2), (2, 2), (1, 2), (3, 2), (2, 2)),
    wd(5, (1, 4), (4, 2), (3, 2), (2, 2), (1, 2)),
])
def test_valid_diagrams(w):
    assert pseudolines.validate(w).valid


@pytest.mark.parametrize("w, fragment", [
    (wd(3, (1, 2), (2, 2)), "never cross"),
    (wd(3, (1, 2), (1, 2), (2, 2), (1, 2)), "cross twice"),
    (wd(3, (1, 3)), "one point"),
    (wd(3, (3, 2), (1, 2), (2, 2)), "leaves"),
    (wd(3, (1, 1), (1, 2), (2, 2), (1, 2)), "below 2"),
])
def test_invalid_diagrams(w, fragment):
    result = pseudolines.validate(w)
    assert not result.valid
    assert fragment in result.diagnostics[0]


@pytest.mark.parametrize("w, counts", [
    (wd(3, (1, 2), (2, 2), (1, 2)), {2: 3}),
    (wd(4, (1, 3), (3, 2), (2, 2), (1, 2)), {3: 1, 2: 3}),
    (wd(5, (1, 4), (4, 2), (3, 2), (2, 2), (1, 2)), {4: 1, 2: 4}),
])
def test_t_vector(w, counts):
    assert pseudolines.t_vector(w) == t_of(counts)
    assert pseudolines.euler_characteristic(w) == 1


def test_t_vector_rejects_invalid_diagram():
    with pytest.raises(InvalidInputError):
        pseudolines.t_vector(wd(3, (1, 2), (2, 2)))


def test_to_configuration_uses_pseudoline_self_intersection():
    w = wd(4, (1, 3), (3, 2), (2, 2), (1, 2))
    summary = pseudolines.to_configuration(w)
    assert summary.n == 4
    assert summary.connected
    assert summary.components[0].self_intersection == config.PSEUDOLINE_SELF_INTERSECTION
    shifted = pseudolines.to_configuration(w, self_intersection=-1)
    assert shifted.components[0].canonical_degree == -1


def test_three_pseudolines():
    classes = list(pseudolines.enumerate(3))
    assert len(classes) == 1
    assert classes[0].t_vector == t_of({2: 3})
    assert len(classes[0].class_id) == 16


def test_four_pseudolines():
    classes = list(pseudolines.enumerate(4))
    assert [cls.t_vector for cls in classes] == [t_of({3: 1, 2: 3}), t_of({2: 6})]
    for cls in classes:
        assert pseudolines.validate(cls.representative).valid
        assert pseudolines.canonical_class(cls.representative) == cls


def test_five_pseudolines_t_vectors():
    classes = list(pseudolines.enumerate(5))
    assert {cls.t_vector.entries for cls in classes} == K5_T_VECTORS
    assert len({cls.class_id for cls in classes}) == len(classes)


def test_enumeration_limit():
    full = list(pseudolines.enumerate(5))
    assert list(pseudolines.enumerate(5, limit=2)) == full[:2]
    assert list(pseudolines.enumerate(5, limit=0)) == []
    with pytest.raises(InvalidInputError):
        pseudolines.enumerate(5, limit=-1)


def test_enumeration_is_independent_of_worker_count():
    assert list(pseudolines.enumerate(5, workers=1)) == list(pseudolines.enumerate(5, workers=2))


@pytest.mark.parametrize("k", [2, 8])
def test_enumeration_k_range(k):
    with pytest.raises(EnumerationLimitError):
        pseudolines.enumerate(k)


def test_enumeration_node_guardrail(monkeypatch):
    monkeypatch.setattr(config, "ENUMERATION_MAX_NODES", 5)
    with pytest.raises(EnumerationLimitError):
        pseudolines.enumerate(5)


def test_commuting_reorder_gives_same_class():
    first = wd(4, (1, 2), (3, 2), (2, 2), (1, 2), (3, 2), (2, 2))
    second = wd(4, (3, 2), (1, 2), (2, 2), (3, 2), (1, 2), (2, 2))
    assert pseudolines.canonical_class(first).class_id == pseudolines.canonical_class(second).class_id


def test_mirror_diagram_gives_same_class():
    w = wd(4, (1, 3), (3, 2), (2, 2), (1, 2))
    mirror = wd(4, *((w.k - p - r + 2, r) for p, r in w.events))
    assert pseudolines.validate(mirror).valid
    assert pseudolines.canonical_class(mirror).class_id == pseudolines.canonical_class(w).class_id


def test_scan_of_three_pseudolines():
    result = pseudolines.extremal_scan(3)
    assert result.class_count == 1
    assert result.min_index == -1
    assert result.min_shnurnikov_margin == -5
    assert result.flat_bound_violations == 0


def test_scan_of_four_pseudolines():
    result = pseudolines.extremal_scan(4)
    assert result.class_count == 2
    assert result.min_index == Fraction(-4, 3)
    assert result.argmin_index.t_vector == t_of({2: 6})
    assert result.min_shnurnikov_margin == Fraction(-7, 2)
    assert result.argmin_shnurnikov.t_vector == t_of({3: 1, 2: 3})
    assert result.flat_bound_violations == 0


def test_scan_of_needs_classes():
    with pytest.raises(InvalidInputError):
        pseudolines.scan_of(4, [])


@pytest.mark.parametrize("k", [4, 5])
def test_swept_arrangements_land_in_enumerated_classes(k):
    known = {cls.class_id for cls in pseudolines.enumerate(k)}
    for arr in (arrangements.generic(k), arrangements.near_pencil(k)):
        w = arrangements.to_wiring_diagram(arr)
        assert pseudolines.canonical_class(w).class_id in known


@pytest.mark.slow
def test_six_pseudolines_respect_flat_bound():
    result = pseudolines.extremal_scan(6)
    assert result.flat_bound_violations == 0
    assert result.min_index >= Fraction(-149, 40)
