"""
BoundService - Evaluators for the lower bounds on Harbourne indices

Covers the Kodaira-dimension bounds on arbitrary surfaces, the line bounds on
smooth hypersurfaces in P^3, and the plane/pseudoline bounds. Inequalities in
the t_r are exposed as signed margins; bounds on the index carry the margin
index - bound. Hypotheses are gated explicitly.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from domain import (
    AugmentationOutcome,
    BoundOutcome,
    ConfigurationSummary,
    MultiplicityVector,
    PointSelection,
    PseudolineBounds,
    SurfaceInvariants,
    SurfaceKind,
)
from utils.errors import (
    BoundNotApplicableError,
    InvalidInputError,
    MixedGenusError,
    NoSingularPointsError,
    UnsupportedConfigurationError,
)

from .harbourne_service import HarbourneService
from .surface_service import SurfaceService

logger = logging.getLogger(__name__)

# -3.725 as an exact fraction
PSEUDOLINE_FLAT_BOUND = Fraction(-149, 40)

SCHUR_QUARTIC_PRINTED_BOUND = -73

# Machine-readable reasons for not-applicable outcomes
KODAIRA_NEGATIVE = "kodaira_dimension_negative"
DEGREE_BELOW_FOUR = "degree_below_four"
GENUS_AT_MOST_ONE = "genus_at_most_one"
GENUS_ABOVE_ONE = "genus_above_one"
NO_SINGULAR_POINTS = "no_singular_points"
CONNECTIVITY_UNKNOWN = "connectivity_unknown"
NOT_CONNECTED = "not_connected"
ISOLATED_LINES_UNKNOWN = "isolated_lines_unknown"
NOT_PSEUDOLINE = "not_a_pseudoline_configuration"
NOT_LINE_CONFIGURATION = "not_a_line_configuration"
NEAR_PENCIL_POINTS = "t_k_or_t_k_minus_1_nonzero"
TOO_FEW_CURVES = "fewer_than_three_curves"


class BoundService:
    """Service evaluating every bound on Harbourne indices"""

    def __init__(self, harbourne_service: Optional[HarbourneService] = None,
                 surface_service: Optional[SurfaceService] = None):
        self.harbourne = harbourne_service or HarbourneService()
        self.surfaces = surface_service or SurfaceService()

    # Outcome helpers

    def _index_or_none(self, summary: Optional[ConfigurationSummary]) -> Optional[Fraction]:
        if summary is None or summary.s == 0:
            return None
        return self.harbourne.harbourne_index(summary)

    @staticmethod
    def bound_outcome(name: str, bound_value: Fraction, index: Optional[Fraction],
                      informational: bool = False, note: Optional[str] = None) -> BoundOutcome:
        bound_value = Fraction(bound_value)
        return BoundOutcome(
            name=name,
            applicable=True,
            kind="bound",
            bound_value=bound_value,
            quantity=index,
            margin=None if index is None else index - bound_value,
            informational=informational,
            note=note,
        )

    @staticmethod
    def inequality_outcome(name: str, lhs: Fraction, rhs: Fraction, at_most: bool,
                           informational: bool = False, note: Optional[str] = None) -> BoundOutcome:
        """lhs <= rhs when at_most, lhs >= rhs otherwise"""
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        return BoundOutcome(
            name=name,
            applicable=True,
            kind="inequality",
            lhs=lhs,
            rhs=rhs,
            margin=rhs - lhs if at_most else lhs - rhs,
            informational=informational,
            note=note,
        )

    @staticmethod
    def identity_outcome(name: str, lhs: Fraction, rhs: Fraction, note: Optional[str] = None) -> BoundOutcome:
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        return BoundOutcome(
            name=name, applicable=True, kind="identity", lhs=lhs, rhs=rhs, margin=lhs - rhs, note=note
        )

    @staticmethod
    def _require_transversal(summary: ConfigurationSummary):
        if not summary.transversal:
            raise UnsupportedConfigurationError("bounds are stated for transversal configurations")

    # Surfaces of non-negative Kodaira dimension

    def miyaoka_combinatorial_check(self, surface: SurfaceInvariants,
                                    summary: ConfigurationSummary) -> BoundOutcome:
        """K^2 + K.C + 4n(1-g) - t_2 + sum_{r>=3} (r-4) t_r <= 3 c_2"""
        name = "miyaoka_combinatorial"
        if not surface.kodaira_nonneg:
            return BoundOutcome.not_applicable(name, KODAIRA_NEGATIVE, kind="inequality")
        self._require_transversal(summary)
        g = summary.homogeneous_genus()
        if g is None:
            raise MixedGenusError(summary.genera)
        lhs = self._miyaoka_lhs(surface, summary, genus_term=4 * summary.n * (1 - g))
        return self.inequality_outcome(name, lhs, 3 * surface.c2, at_most=True)

    def kodaira_index_bound(self, surface: SurfaceInvariants,
                            summary: ConfigurationSummary) -> BoundOutcome:
        """h >= -4 + (K^2 - 3c_2 + 2(1-g)n + t_2)/s"""
        name = "kodaira_index"
        if not surface.kodaira_nonneg:
            return BoundOutcome.not_applicable(name, KODAIRA_NEGATIVE)
        self._require_transversal(summary)
        g = summary.homogeneous_genus()
        if g is None:
            raise MixedGenusError(summary.genera)
        if summary.s == 0:
            return BoundOutcome.not_applicable(name, NO_SINGULAR_POINTS)
        mv = summary.multiplicities
        bound = -4 + Fraction(
            surface.k_squared - 3 * surface.c2 + 2 * (1 - g) * summary.n + mv.t(2), summary.s
        )
        return self.bound_outcome(
            name, bound, self._index_or_none(summary),
            note=self.schur_quartic_note(surface, summary, bound),
        )

    def inhomogeneous_bounds(self, surface: SurfaceInvariants,
                             summary: ConfigurationSummary) -> Tuple[BoundOutcome, BoundOutcome]:
        """Both displays with 1 - g(C) in place of n(1 - g), where g(C) - 1 = sum (g_i - 1)"""
        first_name, second_name = "miyaoka_combinatorial_inhomogeneous", "kodaira_index_inhomogeneous"
        if not surface.kodaira_nonneg:
            return (BoundOutcome.not_applicable(first_name, KODAIRA_NEGATIVE, kind="inequality"),
                    BoundOutcome.not_applicable(second_name, KODAIRA_NEGATIVE))
        self._require_transversal(summary)
        one_minus_genus = 1 - self.curve_genus(summary)

        lhs = self._miyaoka_lhs(surface, summary, genus_term=4 * one_minus_genus)
        first = self.inequality_outcome(first_name, lhs, 3 * surface.c2, at_most=True)

        if summary.s == 0:
            return first, BoundOutcome.not_applicable(second_name, NO_SINGULAR_POINTS)
        bound = -4 + Fraction(
            surface.k_squared - 3 * surface.c2 + 2 * one_minus_genus + summary.multiplicities.t(2),
            summary.s,
        )
        return first, self.bound_outcome(second_name, bound, self._index_or_none(summary))

    def curve_genus(self, summary: ConfigurationSummary) -> int:
        """g(C) of the whole configuration, from g(C) - 1 = sum (g_i - 1)"""
        return 1 + sum(g - 1 for g in summary.genera)

    def genus01_uniform_bound(self, surface: SurfaceInvariants,
                              summary: Optional[ConfigurationSummary] = None) -> BoundOutcome:
        """h >= -4 + K^2 - 3c_2 for configurations of rational or elliptic curves"""
        name = "genus01_uniform"
        if not surface.kodaira_nonneg:
            return BoundOutcome.not_applicable(name, KODAIRA_NEGATIVE)
        if summary is not None and any(g > 1 for g in summary.genera):
            return BoundOutcome.not_applicable(name, GENUS_ABOVE_ONE)
        bound = Fraction(-4 + surface.k_squared - 3 * surface.c2)
        return self.bound_outcome(name, bound, self._index_or_none(summary))

    def k_regular_bound(self, surface: SurfaceInvariants, g: int,
                        summary: Optional[ConfigurationSummary] = None) -> BoundOutcome:
        """h >= -4 - 2(g-1) - (3c_2 - K^2) for k-regular configurations of genus g >= 2"""
        name = "k_regular"
        if not surface.kodaira_nonneg:
            return BoundOutcome.not_applicable(name, KODAIRA_NEGATIVE)
        if g <= 1:
            return BoundOutcome.not_applicable(name, GENUS_AT_MOST_ONE)
        bound = Fraction(-4 - 2 * (g - 1) - (3 * surface.c2 - surface.k_squared))
        return self.bound_outcome(name, bound, self._index_or_none(summary))

    def abelian_elliptic_margin(self, mv: MultiplicityVector) -> Fraction:
        """t_2 + t_3 - sum_{r>=5} (r-4) t_r; non-negative for elliptic configurations on abelian surfaces"""
        excess = sum((r - 4) * t for r, t in mv.items() if r >= 5)
        return Fraction(mv.t(2) + mv.t(3) - excess)

    def schur_quartic_note(self, surface: SurfaceInvariants, summary: ConfigurationSummary,
                           bound: Fraction) -> Optional[str]:
        """Provenance note for the four concurrent lines on a quartic"""
        mv = summary.multiplicities
        quartic = (surface.k_squared, surface.c2) == (0, 24)
        if not (quartic and summary.homogeneous_genus() == 0 and summary.n == 4
                and mv.t(2) == 0 and summary.s == 1):
            return None
        logger.warning(
            f"Four concurrent lines on a quartic: formula gives {bound}, "
            f"printed value is {SCHUR_QUARTIC_PRINTED_BOUND}"
        )
        return (
            f"printed value for four concurrent lines on a quartic is {SCHUR_QUARTIC_PRINTED_BOUND}; "
            f"the displayed formula with (K^2, c2, g, n, t2, s) = (0, 24, 0, 4, 0, 1) "
            f"gives {bound.numerator}/{bound.denominator}, which is reported"
        )

    def _miyaoka_lhs(self, surface: SurfaceInvariants, summary: ConfigurationSummary,
                     genus_term: int) -> int:
        mv = summary.multiplicities
        k_dot_c = self.surfaces.canonical_dot_C(surface, summary)
        higher = sum((r - 4) * t for r, t in mv.items() if r >= 3)
        return surface.k_squared + k_dot_c + genus_term - mv.t(2) + higher

    # Lines on smooth hypersurfaces of degree d in P^3

    def line_config_index(self, d: int, k: int, mv: MultiplicityVector) -> Fraction:
        """h = -((d-2)k + sum r t_r) / sum t_r"""
        if d < 1:
            raise InvalidInputError(f"degree {d} must be at least 1")
        if k < 2:
            raise InvalidInputError(f"a line configuration needs k >= 2 lines, got {k}")
        _, f1, _ = self.harbourne.f_vector(mv)
        if mv.s == 0:
            raise NoSingularPointsError()
        return Fraction(-((d - 2) * k + f1), mv.s)

    @staticmethod
    def _require_degree(d: int):
        if d < 4:
            raise BoundNotApplicableError(DEGREE_BELOW_FOUR, f"line bounds need d >= 4, got {d}")

    def connected_line_bound(self, d: int) -> Fraction:
        """-d(d-1) for connected configurations of lines"""
        self._require_degree(d)
        return Fraction(-d * (d - 1))

    def max_mult_line_bound(self, d: int, m: int) -> Fraction:
        """-m(d-1) for connected configurations with largest multiplicity m"""
        self._require_degree(d)
        if not 2 <= m <= d:
            raise InvalidInputError(f"maximal multiplicity {m} must lie in 2..{d}")
        return Fraction(-m * (d - 1))

    def arbitrary_line_bound(self, d: int, n_isolated: int) -> Fraction:
        """-d(d-1) + (2-d) n for configurations with n isolated lines"""
        self._require_degree(d)
        if n_isolated < 0:
            raise InvalidInputError(f"number of isolated lines {n_isolated} is negative")
        return Fraction(-d * (d - 1) + (2 - d) * n_isolated)

    def max_disjoint_lines(self, d: int) -> int:
        """Miyaoka's bound 2d(d-2) on pairwise disjoint lines"""
        return 2 * d * (d - 2)

    def uniform_line_bound(self, d: int) -> Fraction:
        """-2d^3 + 7d^2 - 6d - 2, valid for every configuration of lines"""
        self._require_degree(d)
        bound = Fraction(-2 * d ** 3 + 7 * d ** 2 - 6 * d - 2)
        via_isolated = self.arbitrary_line_bound(d, self.max_disjoint_lines(d) - 1)
        assert bound == via_isolated, (d, bound, via_isolated)
        return bound

    # Plane and pseudoline configurations

    def real_line_bound(self) -> Fraction:
        return Fraction(-3)

    def complex_line_bound(self) -> Fraction:
        return Fraction(-4)

    def shnurnikov_margin(self, mv: MultiplicityVector) -> Fraction:
        """(t_2 + 3/2 t_3) - (8 + sum_{r>=4} (2r - 15/2) t_r)"""
        lhs = mv.t(2) + Fraction(3, 2) * mv.t(3)
        rhs = 8 + sum((2 * r - Fraction(15, 2)) * t for r, t in mv.items() if r >= 4)
        return lhs - rhs

    def hirzebruch_margin(self, mv: MultiplicityVector, k: int) -> Fraction:
        """(t_2 + t_3) - (k + sum_{r>=5} (r-4) t_r) for k >= 3 lines with t_k = t_{k-1} = 0"""
        if k < 3:
            raise BoundNotApplicableError(TOO_FEW_CURVES)
        if mv.t(k) or mv.t(k - 1):
            raise BoundNotApplicableError(NEAR_PENCIL_POINTS)
        excess = sum((r - 4) * t for r, t in mv.items() if r >= 5)
        return Fraction(mv.t(2) + mv.t(3) - k - excess)

    def pseudoline_index_bound(self, summary: ConfigurationSummary) -> PseudolineBounds:
        """Index (d - f_1)/f_0 with d = sum C_i^2, and the refined and flat lower bounds"""
        self._check_pseudoline_summary(summary)
        f0, f1, _ = self.harbourne.f_vector(summary.multiplicities)
        d = sum(c.self_intersection for c in summary.components)
        index = Fraction(d - f1, f0)
        refined = PSEUDOLINE_FLAT_BOUND + (d + 4 + Fraction(5, 4) * summary.multiplicities.t(2)) / f0
        return PseudolineBounds(index=index, refined_bound=refined, flat_bound=PSEUDOLINE_FLAT_BOUND)

    def _check_pseudoline_summary(self, summary: ConfigurationSummary):
        k = summary.n
        mv = summary.multiplicities
        if k < 3:
            raise UnsupportedConfigurationError(f"pseudoline bounds need k >= 3 curves, got {k}")
        if any(c.genus != 0 for c in summary.components):
            raise UnsupportedConfigurationError("pseudolines are rational curves")
        if mv.t(k):
            raise UnsupportedConfigurationError("all pseudolines pass through one point")
        if mv.pair_total() != k * (k - 1):
            raise UnsupportedConfigurationError(
                f"pseudolines meet pairwise once: k(k-1) = {k * (k - 1)} "
                f"but sum r(r-1) t_r = {mv.pair_total()}"
            )
        if mv.s == 0:
            raise NoSingularPointsError()

    def point_augmentation_check(self, base_value: Fraction, base_count: int,
                                 added: Sequence[int]) -> AugmentationOutcome:
        """If the augmented constant is <= -1 it is >= the base constant"""
        augmented = self.harbourne.augmented_value(base_value, base_count, added)
        hypothesis = augmented <= -1
        return AugmentationOutcome(
            base_value=Fraction(base_value),
            base_count=base_count,
            augmented_value=augmented,
            augmented_count=base_count + len(added),
            hypothesis=hypothesis,
            holds=(not hypothesis) or augmented >= base_value,
        )

    def point_augmentation_for(self, summary: ConfigurationSummary,
                               selection: PointSelection) -> AugmentationOutcome:
        """Augmentation of Sing(C) by the non-singular points of a selection containing all of Sing(C)"""
        if selection.singular_counts() != summary.multiplicities.as_dict():
            raise UnsupportedConfigurationError(
                "augmentation needs a selection containing exactly the singular points"
            )
        added = [m for m in selection.points if m < 2]
        base = self.harbourne.harbourne_index(summary)
        return self.point_augmentation_check(base, summary.s, added)

    # Evaluation of everything that applies

    def evaluate_all(self, surface: SurfaceInvariants,
                     summary: ConfigurationSummary) -> Tuple[List[BoundOutcome], List[BoundOutcome]]:
        """All bounds that apply to the configuration, and the ones skipped with a reason"""
        index = self.harbourne.harbourne_index(summary)
        applicable: List[BoundOutcome] = []
        skipped: List[BoundOutcome] = []

        def keep(outcome: BoundOutcome):
            (applicable if outcome.applicable else skipped).append(outcome)

        for outcome in self._kodaira_outcomes(surface, summary):
            keep(outcome)
        for outcome in self._hypersurface_line_outcomes(surface, summary, index):
            keep(outcome)
        for outcome in self._plane_outcomes(surface, summary, index):
            keep(outcome)

        logger.debug(f"Evaluated {len(applicable)} bounds, skipped {len(skipped)}")
        return applicable, skipped

    def _kodaira_outcomes(self, surface, summary) -> List[BoundOutcome]:
        if not surface.kodaira_nonneg:
            return [
                BoundOutcome.not_applicable("miyaoka_combinatorial", KODAIRA_NEGATIVE, kind="inequality"),
                BoundOutcome.not_applicable("kodaira_index", KODAIRA_NEGATIVE),
            ]
        g = summary.homogeneous_genus()
        outcomes: List[BoundOutcome] = []
        if g is None:
            outcomes.extend(self.inhomogeneous_bounds(surface, summary))
            outcomes.append(self.genus01_uniform_bound(surface, summary))
            return outcomes

        outcomes.append(self.miyaoka_combinatorial_check(surface, summary))
        outcomes.append(self.kodaira_index_bound(surface, summary))
        if g >= 2:
            outcomes.append(self.k_regular_bound(surface, g, summary))
        else:
            outcomes.append(self.genus01_uniform_bound(surface, summary))
        if surface.kind is SurfaceKind.ABELIAN and g == 1:
            mv = summary.multiplicities
            lhs = Fraction(mv.t(2) + mv.t(3))
            outcomes.append(self.inequality_outcome(
                "abelian_elliptic", lhs, lhs - self.abelian_elliptic_margin(mv), at_most=False
            ))
        return outcomes

    def _hypersurface_line_outcomes(self, surface, summary, index) -> List[BoundOutcome]:
        if surface.kind is not SurfaceKind.DEGREE_D:
            return []
        d = surface.d
        names = ("connected_line", "arbitrary_line", "uniform_line")
        if d < 4:
            return [BoundOutcome.not_applicable(name, DEGREE_BELOW_FOUR) for name in names]
        if not self.surfaces.is_line_configuration(surface, summary):
            return [BoundOutcome.not_applicable(name, NOT_LINE_CONFIGURATION) for name in names]

        outcomes: List[BoundOutcome] = []
        if summary.n >= 2:
            formula = self.line_config_index(d, summary.n, summary.multiplicities)
            outcomes.append(self.identity_outcome("line_index_formula", index, formula))

        if summary.connected is True:
            outcomes.append(self.bound_outcome("connected_line", self.connected_line_bound(d), index))
            m = self.harbourne.max_multiplicity(summary.multiplicities)
            if m <= d:
                outcomes.append(self.bound_outcome("max_mult_line", self.max_mult_line_bound(d, m), index))
        else:
            reason = CONNECTIVITY_UNKNOWN if summary.connected is None else NOT_CONNECTED
            outcomes.append(BoundOutcome.not_applicable("connected_line", reason))

        isolated = summary.known_isolated_lines()
        if isolated is None:
            outcomes.append(BoundOutcome.not_applicable("arbitrary_line", ISOLATED_LINES_UNKNOWN))
        else:
            outcomes.append(self.bound_outcome(
                "arbitrary_line", self.arbitrary_line_bound(d, isolated), index
            ))
        outcomes.append(self.bound_outcome("uniform_line", self.uniform_line_bound(d), index))
        return outcomes

    def _plane_outcomes(self, surface, summary, index) -> List[BoundOutcome]:
        if not surface.kind.is_plane:
            return []
        if not self.surfaces.is_line_configuration(surface, summary):
            return [BoundOutcome.not_applicable("complex_line", NOT_LINE_CONFIGURATION)]

        k = summary.n
        mv = summary.multiplicities
        outcomes = [
            self.identity_outcome("plane_intersection_identity", k * (k - 1), mv.pair_total()),
            self.bound_outcome("complex_line", self.complex_line_bound(), index),
        ]
        if surface.kind is SurfaceKind.P2R:
            outcomes.append(self.bound_outcome("real_line", self.real_line_bound(), index))
            try:
                bounds = self.pseudoline_index_bound(summary)
            except UnsupportedConfigurationError:
                outcomes.append(BoundOutcome.not_applicable("pseudoline_flat", NOT_PSEUDOLINE))
            else:
                outcomes.append(self.bound_outcome("pseudoline_flat", bounds.flat_bound, bounds.index))
                outcomes.append(self.bound_outcome(
                    "pseudoline_refined", bounds.refined_bound, bounds.index, informational=True
                ))
                margin = self.shnurnikov_margin(mv)
                lhs = mv.t(2) + Fraction(3, 2) * mv.t(3)
                outcomes.append(self.inequality_outcome(
                    "shnurnikov", lhs, lhs - margin, at_most=False, informational=True
                ))
        try:
            margin = self.hirzebruch_margin(mv, k)
        except BoundNotApplicableError as exc:
            outcomes.append(BoundOutcome.not_applicable("hirzebruch", exc.reason, kind="inequality"))
        else:
            lhs = Fraction(mv.t(2) + mv.t(3))
            outcomes.append(self.inequality_outcome(
                "hirzebruch", lhs, lhs - margin, at_most=False, informational=True
            ))
        return outcomes
