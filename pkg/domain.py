"""
Domain types for the Harbourne index toolkit.

All types are frozen dataclasses with value semantics. Rational quantities are
fractions.Fraction throughout; nothing here ever holds a float.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from utils.errors import InvalidInputError


@dataclass(frozen=True)
class MultiplicityVector:
    """Counts t_r of r-fold singular points, stored as sorted (r, t_r) pairs with t_r > 0"""
    entries: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        merged: Dict[int, int] = {}
        for r, t in self.entries:
            if not isinstance(r, int) or not isinstance(t, int):
                raise InvalidInputError(f"multiplicity entries must be integers, got ({r!r}, {t!r})")
            if r < 2:
                raise InvalidInputError(f"multiplicity {r} is below 2")
            if t < 0:
                raise InvalidInputError(f"count t_{r} = {t} is negative")
            merged[r] = merged.get(r, 0) + t
        normalized = tuple(sorted((r, t) for r, t in merged.items() if t > 0))
        object.__setattr__(self, "entries", normalized)

    @classmethod
    def from_mapping(cls, counts: Mapping[int, int]) -> "MultiplicityVector":
        return cls(tuple((int(r), int(t)) for r, t in counts.items()))

    @classmethod
    def from_multiplicities(cls, multiplicities: Iterable[int]) -> "MultiplicityVector":
        """Build from one multiplicity per singular point"""
        counts: Dict[int, int] = {}
        for r in multiplicities:
            counts[r] = counts.get(r, 0) + 1
        return cls.from_mapping(counts)

    def t(self, r: int) -> int:
        for key, count in self.entries:
            if key == r:
                return count
        return 0

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(self.entries)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.entries)

    @property
    def s(self) -> int:
        """Number of singular points"""
        return sum(t for _, t in self.entries)

    def is_empty(self) -> bool:
        return not self.entries

    def pair_total(self) -> int:
        """Sum of r(r-1) t_r, the pairwise intersection total of a transversal configuration"""
        return sum(r * (r - 1) * t for r, t in self.entries)

    def label(self) -> str:
        """Compact text form, highest multiplicity first, e.g. '3:1 2:3'"""
        return " ".join(f"{r}:{t}" for r, t in reversed(self.entries))


@dataclass(frozen=True)
class Component:
    """One smooth curve of a configuration"""
    genus: int
    self_intersection: int
    canonical_degree: int

    def __post_init__(self):
        if self.genus < 0:
            raise InvalidInputError(f"genus {self.genus} is negative")

    @property
    def adjunction_defect(self) -> int:
        """(C^2 + K.C) - (2g - 2); zero for a genuine smooth curve"""
        return self.self_intersection + self.canonical_degree - (2 * self.genus - 2)


@dataclass(frozen=True)
class ConfigurationSummary:
    """Combinatorial description of a transversal configuration of smooth curves"""
    components: Tuple[Component, ...]
    multiplicities: MultiplicityVector
    transversal: bool = True
    # Structure known from a generator or declared in a configuration file
    connected: Optional[bool] = None
    isolated_lines: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise InvalidInputError("a configuration needs at least one component")
        if self.isolated_lines is not None and not 0 <= self.isolated_lines <= len(self.components):
            raise InvalidInputError(f"isolated_lines = {self.isolated_lines} is out of range")

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def s(self) -> int:
        return self.multiplicities.s

    @property
    def genera(self) -> Tuple[int, ...]:
        return tuple(c.genus for c in self.components)

    def known_isolated_lines(self) -> Optional[int]:
        """Number of lines meeting nothing else, or None when it cannot be told"""
        if self.isolated_lines is not None:
            return self.isolated_lines
        if self.connected is True and self.n >= 2:
            return 0
        return None

    def homogeneous_genus(self) -> Optional[int]:
        """The common genus of all components, or None when genera differ"""
        genera = set(self.genera)
        return genera.pop() if len(genera) == 1 else None


class SurfaceKind(str, Enum):
    P2C = "P2C"
    P2R = "P2R"
    DEGREE_D = "DegreeDInP3"
    ABELIAN = "Abelian"
    K3 = "K3"
    ENRIQUES = "Enriques"
    CUSTOM = "Custom"

    @property
    def is_plane(self) -> bool:
        return self in (SurfaceKind.P2C, SurfaceKind.P2R)


@dataclass(frozen=True)
class SurfaceInvariants:
    """Ambient surface data: K^2, c_2, Kodaira non-negativity and kind"""
    k_squared: int
    c2: int
    kodaira_nonneg: bool
    kind: SurfaceKind
    d: Optional[int] = None

    def __post_init__(self):
        if self.kind is SurfaceKind.DEGREE_D:
            if self.d is None or self.d < 1:
                raise InvalidInputError("DegreeDInP3 surfaces need a degree d >= 1")
            if self.kodaira_nonneg != (self.d >= 4):
                raise InvalidInputError(
                    f"degree {self.d} surface has kodaira_nonneg = {self.d >= 4}"
                )
        elif self.d is not None:
            raise InvalidInputError(f"degree is only meaningful for DegreeDInP3, not {self.kind.value}")

    @property
    def label(self) -> str:
        if self.kind is SurfaceKind.DEGREE_D:
            return f"{self.kind.value}({self.d})"
        return self.kind.value


@dataclass(frozen=True)
class PointSelection:
    """A non-empty collection of points, recorded by the multiplicity of C at each"""
    points: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise InvalidInputError("a point selection must contain at least one point")
        for m in self.points:
            if not isinstance(m, int) or m < 0:
                raise InvalidInputError(f"point multiplicity {m!r} must be an integer >= 0")

    @classmethod
    def of(cls, singular: Mapping[int, int] = None, smooth: int = 0, off_curve: int = 0) -> "PointSelection":
        points = []
        for r, count in sorted((singular or {}).items()):
            points.extend([r] * count)
        points.extend([1] * smooth)
        points.extend([0] * off_curve)
        return cls(tuple(points))

    def __len__(self) -> int:
        return len(self.points)

    def singular_counts(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for m in self.points:
            if m >= 2:
                counts[m] = counts.get(m, 0) + 1
        return counts


@dataclass(frozen=True)
class BoundOutcome:
    """Result of evaluating one bound or inequality against a configuration

    For bounds on the index, margin = index - bound_value. For inequalities in
    the t_r, lhs/rhs are recorded and margin is the slack (>= 0 when it holds).
    Identities hold only with margin exactly 0.
    """
    name: str
    applicable: bool
    kind: str = "bound"
    bound_value: Optional[Fraction] = None
    quantity: Optional[Fraction] = None
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None
    margin: Optional[Fraction] = None
    informational: bool = False
    reason: Optional[str] = None
    note: Optional[str] = None

    @property
    def satisfied(self) -> Optional[bool]:
        if not self.applicable or self.margin is None:
            return None
        if self.kind == "identity":
            return self.margin == 0
        return self.margin >= 0

    @classmethod
    def not_applicable(cls, name: str, reason: str, kind: str = "bound") -> "BoundOutcome":
        return cls(name=name, applicable=False, kind=kind, reason=reason)


@dataclass(frozen=True)
class AugmentationOutcome:
    """Evaluation of the Sing(C) u Smooth(C) augmentation implication"""
    base_value: Fraction
    base_count: int
    augmented_value: Fraction
    augmented_count: int
    hypothesis: bool
    holds: bool


@dataclass(frozen=True)
class PseudolineBounds:
    index: Fraction
    refined_bound: Fraction
    flat_bound: Fraction


@dataclass(frozen=True)
class SelectionSweep:
    """Minimum of the constant over swept selections, next to its value at all singular points"""
    max_smooth: int
    minimum: Fraction
    argmin: PointSelection
    singular_value: Fraction

    @property
    def singular_points_minimise(self) -> bool:
        return self.minimum == self.singular_value


@dataclass(frozen=True)
class HarbourneReport:
    index: Fraction
    bound_results: Tuple[BoundOutcome, ...]
    skipped: Tuple[BoundOutcome, ...] = ()
    constant_at_points: Optional[Fraction] = None
    notes: Tuple[str, ...] = ()
    selection_sweep: Optional[SelectionSweep] = None

    def violations(self) -> Tuple[BoundOutcome, ...]:
        return tuple(
            outcome for outcome in self.bound_results
            if not outcome.informational and outcome.satisfied is False
        )


# Projective geometry over Q

ProjectiveTriple = Tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class LineArrangement:
    """Distinct lines a x + b y + c z = 0 in the projective plane, canonically normalized"""
    lines: Tuple[ProjectiveTriple, ...]
    ambient: SurfaceKind = SurfaceKind.P2R

    def __post_init__(self):
        if not self.ambient.is_plane:
            raise InvalidInputError(f"line arrangements live in the plane, not {self.ambient.value}")

    @property
    def k(self) -> int:
        return len(self.lines)


@dataclass(frozen=True)
class IncidencePoint:
    point: ProjectiveTriple
    multiplicity: int
    members: Tuple[int, ...]


@dataclass(frozen=True)
class IncidenceData:
    points: Tuple[IncidencePoint, ...]
    multiplicities: MultiplicityVector
    components: Tuple[Tuple[int, ...], ...]


# Pseudoline arrangements

@dataclass(frozen=True)
class WiringDiagram:
    """k wires and block-reversal events (p, r), positions 1-based from the top"""
    k: int
    events: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "events", tuple((int(p), int(r)) for p, r in self.events))

    def encode(self) -> str:
        return ";".join(f"{p},{r}" for p, r in self.events)


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    diagnostics: Tuple[str, ...] = ()


@dataclass(frozen=True)
class CanonicalClass:
    """Isomorphism class of the projective arrangement a wiring diagram induces"""
    k: int
    code: Tuple[int, ...] = field(repr=False)
    class_id: str
    representative: WiringDiagram
    t_vector: MultiplicityVector

    def sort_key(self):
        return (self.t_vector.entries, self.code)


@dataclass(frozen=True)
class ScanResult:
    k: int
    class_count: int
    min_index: Fraction
    argmin_index: CanonicalClass
    min_shnurnikov_margin: Fraction
    argmin_shnurnikov: CanonicalClass
    flat_bound_violations: int
