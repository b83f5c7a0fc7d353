"""
HarbourneService - Harbourne indices and constants of transversal configurations

Computes C^2 from the transversal bookkeeping, the Harbourne index over the
singular points, and the Harbourne constant at an arbitrary point selection.
All arithmetic is exact.
"""

import itertools
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from domain import ConfigurationSummary, MultiplicityVector, PointSelection, SelectionSweep
from utils.config import config
from utils.errors import (
    InconsistentSelectionError,
    InvalidInputError,
    NoSingularPointsError,
    UnsupportedConfigurationError,
)

logger = logging.getLogger(__name__)


class HarbourneService:
    """Service for Harbourne index and constant computations"""

    def c_squared(self, summary: ConfigurationSummary) -> int:
        """C^2 = sum of C_i^2 plus sum of r(r-1) t_r"""
        if not summary.transversal:
            raise UnsupportedConfigurationError(
                "C^2 is only computed for transversal configurations"
            )
        own = sum(c.self_intersection for c in summary.components)
        return own + summary.multiplicities.pair_total()

    def f_vector(self, mv: MultiplicityVector) -> Tuple[int, int, int]:
        f0 = f1 = f2 = 0
        for r, t in mv.items():
            f0 += t
            f1 += r * t
            f2 += r * r * t
        return f0, f1, f2

    def max_multiplicity(self, mv: MultiplicityVector) -> int:
        if mv.is_empty():
            raise InvalidInputError("an empty multiplicity vector has no maximum")
        return max(r for r, _ in mv.items())

    def harbourne_index(self, summary: ConfigurationSummary) -> Fraction:
        """(C^2 - sum r^2 t_r) / s over all singular points"""
        s = summary.s
        if s == 0:
            raise NoSingularPointsError()
        _, _, f2 = self.f_vector(summary.multiplicities)
        return Fraction(self.c_squared(summary) - f2, s)

    def harbourne_constant_at_points(self, summary: ConfigurationSummary,
                                     selection: PointSelection) -> Fraction:
        """(C^2 - sum over P of mult_p^2) / |P|"""
        available = summary.multiplicities.as_dict()
        for r, used in selection.singular_counts().items():
            if used > available.get(r, 0):
                raise InconsistentSelectionError(
                    f"selection uses {used} points of multiplicity {r}, "
                    f"configuration has t_{r} = {available.get(r, 0)}"
                )
        penalty = sum(m * m for m in selection.points)
        return Fraction(self.c_squared(summary) - penalty, len(selection))

    def intersection_identity_check(self, summary: ConfigurationSummary, pairwise_total: int) -> bool:
        """True iff 2 * sum_{i<j} C_i.C_j equals sum r(r-1) t_r"""
        return pairwise_total == summary.multiplicities.pair_total()

    def singular_selection(self, summary: ConfigurationSummary) -> PointSelection:
        if summary.s == 0:
            raise NoSingularPointsError()
        return PointSelection.of(singular=summary.multiplicities.as_dict())

    def augmented_value(self, base_value: Fraction, base_count: int,
                        added_multiplicities: Sequence[int]) -> Fraction:
        """Constant after adding points to a selection with value base_value over base_count points"""
        if base_count < 1:
            raise InvalidInputError("base_count must be at least 1")
        penalty = sum(m * m for m in added_multiplicities)
        return (Fraction(base_value) * base_count - penalty) / (base_count + len(added_multiplicities))

    def selection_sweep(self, summary: ConfigurationSummary,
                        max_smooth: int = 0) -> Tuple[Fraction, PointSelection]:
        """Exact minimum of the constant over selections of singular and smooth points

        Ranges over every sub-multiset of the singular points (grouped by
        multiplicity) together with 0..max_smooth smooth points. Ties keep the
        first selection in the sweep order.
        """
        if max_smooth < 0:
            raise InvalidInputError("max_smooth must be non-negative")
        multiplicities: List[int] = [r for r, _ in summary.multiplicities.items()]
        ranges = [range(t + 1) for _, t in summary.multiplicities.items()]

        total = max_smooth + 1
        for t_range in ranges:
            total *= len(t_range)
        if total > config.SWEEP_MAX_SELECTIONS:
            raise InvalidInputError(
                f"selection sweep would visit {total} selections "
                f"(limit {config.SWEEP_MAX_SELECTIONS})"
            )

        c2 = self.c_squared(summary)
        best: Optional[Fraction] = None
        best_counts: Tuple[int, ...] = ()
        best_smooth = 0
        for counts in itertools.product(*ranges):
            chosen = sum(counts)
            penalty = sum(u * r * r for u, r in zip(counts, multiplicities))
            for smooth in range(max_smooth + 1):
                size = chosen + smooth
                if size == 0:
                    continue
                value = Fraction(c2 - penalty - smooth, size)
                if best is None or value < best:
                    best, best_counts, best_smooth = value, counts, smooth

        if best is None:
            raise NoSingularPointsError("no non-empty selection exists without smooth points")
        selection = PointSelection.of(
            singular={r: u for r, u in zip(multiplicities, best_counts) if u},
            smooth=best_smooth,
        )
        logger.debug(f"Selection sweep minimum {best} at {selection.points}")
        return best, selection

    def sweep_against_singular_points(self, summary: ConfigurationSummary,
                                      max_smooth: int = 0) -> SelectionSweep:
        """Selection sweep together with the constant at all singular points"""
        minimum, argmin = self.selection_sweep(summary, max_smooth)
        singular_value = self.harbourne_constant_at_points(summary, self.singular_selection(summary))
        return SelectionSweep(
            max_smooth=max_smooth, minimum=minimum, argmin=argmin, singular_value=singular_value
        )
