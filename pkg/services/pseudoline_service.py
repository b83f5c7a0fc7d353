"""
PseudolineService - Wiring diagrams of pseudoline arrangements

Validates diagrams, extracts their t-vectors and enumerates every arrangement
of k pseudolines up to isomorphism. The search walks words of block-reversal
events in lexicographic normal form (events on disjoint position ranges
commute), so each commutation class is visited once; classes are then merged
by the canonical code of the arrangement's flag map.
"""

import logging
import time
from fractions import Fraction
from multiprocessing import Pool
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from domain import (
    CanonicalClass,
    Component,
    ConfigurationSummary,
    MultiplicityVector,
    ScanResult,
    ValidationResult,
    WiringDiagram,
)
from utils.config import config
from utils.errors import EnumerationLimitError, InvalidInputError
from utils.flag_maps import class_digest, wiring_flag_map

from .bound_service import PSEUDOLINE_FLAT_BOUND, BoundService

logger = logging.getLogger(__name__)

# Guardrail checks run once per this many search nodes
_CLOCK_INTERVAL = 4096

Event = Tuple[int, int]
# (code, events, t-vector entries), events 0-based
_Leaf = Tuple[Tuple[int, ...], Tuple[Event, ...], Tuple[Tuple[int, int], ...]]


def _commute(a: Event, b: Event) -> bool:
    return a[0] + a[1] <= b[0] or b[0] + b[1] <= a[0]


def _in_normal_form(word: List[Event], event: Event) -> bool:
    """True when appending event keeps word the lexicographically least of its commutation class"""
    for previous in reversed(word):
        if not _commute(previous, event):
            return True
        if previous > event:
            return False
    return True


def _leaf(k: int, word: Sequence[Event]) -> _Leaf:
    code = wiring_flag_map(k, word).canonical_code()
    t_entries = MultiplicityVector.from_multiplicities(r for _, r in word).entries
    return code, tuple(word), t_entries


def _search_from(task: Tuple[int, Event, int, float]) -> List[_Leaf]:
    """Classes reachable from one first event; runs in worker processes"""
    k, first, max_nodes, deadline = task
    target = tuple(reversed(range(k)))
    order = list(range(k))
    p, r = first
    order[p:p + r] = reversed(order[p:p + r])
    word: List[Event] = [first]
    best: Dict[Tuple[int, ...], _Leaf] = {}
    nodes = 0

    def visit():
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise EnumerationLimitError(f"enumeration for k={k} exceeded {max_nodes} search nodes")
        if nodes % _CLOCK_INTERVAL == 0 and time.time() > deadline:
            raise EnumerationLimitError(f"enumeration for k={k} exceeded its time limit")
        if tuple(order) == target:
            leaf = _leaf(k, word)
            kept = best.get(leaf[0])
            if kept is None or leaf[1] < kept[1]:
                best[leaf[0]] = leaf
            return
        for start in range(k - 1):
            for size in range(2, k - start + 1):
                if size == k:
                    break
                block = order[start:start + size]
                if block[-2] > block[-1]:
                    break
                event = (start, size)
                if not _in_normal_form(word, event):
                    continue
                order[start:start + size] = reversed(block)
                word.append(event)
                visit()
                word.pop()
                order[start:start + size] = block

    visit()
    return list(best.values())


class PseudolineService:
    """Service for wiring diagrams and their enumeration"""

    def __init__(self, bound_service: Optional[BoundService] = None):
        self.bounds = bound_service or BoundService()

    def validate(self, w: WiringDiagram) -> ValidationResult:
        """Check events, the no-pencil condition and that every pair crosses exactly once"""
        if w.k < 2:
            return ValidationResult(False, (f"a diagram needs at least 2 wires, got {w.k}",))
        order = list(range(w.k))
        crossed = set()
        for index, (p, r) in enumerate(w.events, start=1):
            if r < 2:
                return ValidationResult(False, (f"event {index} ({p},{r}) has block size below 2",))
            if p < 1 or p + r - 1 > w.k:
                return ValidationResult(False, (f"event {index} ({p},{r}) leaves the {w.k} wires",))
            if r == w.k:
                return ValidationResult(False, (f"event {index} ({p},{r}): all {w.k} pseudolines meet in one point",))
            block = order[p - 1:p - 1 + r]
            for i in range(r):
                for j in range(i + 1, r):
                    pair = (min(block[i], block[j]), max(block[i], block[j]))
                    if pair in crossed:
                        return ValidationResult(False, (
                            f"event {index} ({p},{r}): wires {pair[0] + 1} and {pair[1] + 1} cross twice",
                        ))
                    crossed.add(pair)
            order[p - 1:p - 1 + r] = reversed(block)

        for a in range(w.k):
            for b in range(a + 1, w.k):
                if (a, b) not in crossed:
                    return ValidationResult(False, (f"wires {a + 1} and {b + 1} never cross",))
        return ValidationResult(True)

    def t_vector(self, w: WiringDiagram) -> MultiplicityVector:
        self._require_valid(w)
        return MultiplicityVector.from_multiplicities(r for _, r in w.events)

    def to_configuration(self, w: WiringDiagram, self_intersection: Optional[int] = None) -> ConfigurationSummary:
        """k rational curves with the chosen C_i^2 and the diagram's t-vector"""
        c = config.PSEUDOLINE_SELF_INTERSECTION if self_intersection is None else self_intersection
        pseudoline = Component(genus=0, self_intersection=c, canonical_degree=-2 - c)
        return ConfigurationSummary(
            components=(pseudoline,) * w.k,
            multiplicities=self.t_vector(w),
            connected=True,
        )

    def canonical_class(self, w: WiringDiagram) -> CanonicalClass:
        self._require_valid(w)
        events = tuple((p - 1, r) for p, r in w.events)
        code, _, t_entries = _leaf(w.k, events)
        return self._make_class(w.k, code, events, t_entries)

    def euler_characteristic(self, w: WiringDiagram) -> int:
        """V - E + F of the induced cell decomposition; 1 for the projective plane"""
        self._require_valid(w)
        return wiring_flag_map(w.k, [(p - 1, r) for p, r in w.events]).euler_characteristic()

    def enumerate(self, k: int, limit: Optional[int] = None, workers: Optional[int] = None,
                  override_k_limit: bool = False) -> Iterator[CanonicalClass]:
        """Every arrangement of k pseudolines up to isomorphism, in deterministic order"""
        self._check_k(k, override_k_limit)
        if limit is not None and limit < 0:
            raise InvalidInputError(f"limit {limit} is negative")
        classes = self._collect(k, config.effective_workers(workers))
        if limit is not None:
            classes = classes[:limit]
        return iter(classes)

    def extremal_scan(self, k: int, workers: Optional[int] = None,
                      override_k_limit: bool = False) -> ScanResult:
        """Least pseudoline index and least Shnurnikov margin over all classes"""
        self._check_k(k, override_k_limit)
        return self.scan_of(k, self._collect(k, config.effective_workers(workers)))

    def scan_of(self, k: int, classes: Sequence[CanonicalClass]) -> ScanResult:
        """Extremal values over already enumerated classes; ties keep the earliest class"""
        if not classes:
            raise InvalidInputError(f"no classes to scan for k={k}")
        min_index = min_margin = None
        argmin_index = argmin_margin = None
        violations = 0
        for cls in classes:
            index, margin = self.class_metrics(cls)
            if index < PSEUDOLINE_FLAT_BOUND:
                violations += 1
                logger.warning(f"class {cls.class_id} has index {index} below {PSEUDOLINE_FLAT_BOUND}")
            if min_index is None or index < min_index:
                min_index, argmin_index = index, cls
            if min_margin is None or margin < min_margin:
                min_margin, argmin_margin = margin, cls

        logger.info(f"Scan k={k}: {len(classes)} classes, min index {min_index}, min margin {min_margin}")
        return ScanResult(
            k=k,
            class_count=len(classes),
            min_index=min_index,
            argmin_index=argmin_index,
            min_shnurnikov_margin=min_margin,
            argmin_shnurnikov=argmin_margin,
            flat_bound_violations=violations,
        )

    def class_metrics(self, cls: CanonicalClass) -> Tuple[Fraction, Fraction]:
        """(pseudoline index, Shnurnikov margin) of a class"""
        summary = self.to_configuration(cls.representative)
        index = self.bounds.pseudoline_index_bound(summary).index
        return index, self.bounds.shnurnikov_margin(cls.t_vector)

    def _collect(self, k: int, workers: int) -> List[CanonicalClass]:
        started = time.time()
        deadline = started + config.ENUMERATION_TIME_LIMIT
        tasks = [(k, (p, r), config.ENUMERATION_MAX_NODES, deadline)
                 for p in range(k - 1) for r in range(2, k - p + 1) if r < k]

        if workers > 1:
            with Pool(processes=workers) as pool:
                results = pool.map(_search_from, tasks)
        else:
            results = [_search_from(task) for task in tasks]

        merged: Dict[Tuple[int, ...], _Leaf] = {}
        for leaves in results:
            for leaf in leaves:
                kept = merged.get(leaf[0])
                if kept is None or leaf[1] < kept[1]:
                    merged[leaf[0]] = leaf

        classes = [self._make_class(k, code, events, t) for code, events, t in merged.values()]
        classes.sort(key=CanonicalClass.sort_key)
        logger.info(
            f"Enumerated {len(classes)} classes of {k} pseudolines "
            f"with {workers} worker(s) in {time.time() - started:.2f}s"
        )
        return classes

    @staticmethod
    def _make_class(k: int, code, events, t_entries) -> CanonicalClass:
        return CanonicalClass(
            k=k,
            code=code,
            class_id=class_digest(k, code),
            representative=WiringDiagram(k=k, events=tuple((p + 1, r) for p, r in events)),
            t_vector=MultiplicityVector(t_entries),
        )

    @staticmethod
    def _check_k(k: int, override_k_limit: bool):
        if k < 3:
            raise EnumerationLimitError(f"enumeration needs k >= 3, got {k}")
        if k > config.ENUMERATION_K_LIMIT and not override_k_limit:
            raise EnumerationLimitError(
                f"k={k} exceeds the enumeration limit {config.ENUMERATION_K_LIMIT}; "
                f"pass --override-k-limit to run it anyway"
            )

    def _require_valid(self, w: WiringDiagram):
        result = self.validate(w)
        if not result.valid:
            raise InvalidInputError(f"invalid wiring diagram: {result.diagnostics[0]}")
