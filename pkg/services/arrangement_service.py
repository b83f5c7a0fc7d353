"""
ArrangementService - Exact incidence computation for rational line arrangements

Lines and points of the projective plane are triples of Fractions in a
canonical form, so deduplication is plain equality. Also provides the named
configuration generators and the sweep of a real arrangement into a wiring
diagram.
"""

import itertools
import logging
import math
import random
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from domain import (
    Component,
    ConfigurationSummary,
    IncidenceData,
    IncidencePoint,
    LineArrangement,
    MultiplicityVector,
    ProjectiveTriple,
    SurfaceInvariants,
    SurfaceKind,
    WiringDiagram,
)
from utils.errors import InvalidInputError, UnsupportedConfigurationError

logger = logging.getLogger(__name__)

GENERATORS = ("schur-star", "pencil", "near-pencil", "generic", "disjoint-union")

# Search radius for the line at infinity used by the sweep
CHART_SEARCH_RADIUS = 6


def normalize_triple(values: Iterable) -> ProjectiveTriple:
    """Canonical representative: integer coordinates, content 1, first nonzero entry positive"""
    coords = [Fraction(v) for v in values]
    if len(coords) != 3:
        raise InvalidInputError(f"projective triples have three coordinates, got {len(coords)}")
    if all(c == 0 for c in coords):
        raise InvalidInputError("(0, 0, 0) is not a projective point or line")
    denominator = math.lcm(*(c.denominator for c in coords))
    integers = [int(c * denominator) for c in coords]
    content = math.gcd(*integers)
    integers = [v // content for v in integers]
    if next(v for v in integers if v != 0) < 0:
        integers = [-v for v in integers]
    return tuple(Fraction(v) for v in integers)


def cross(u: Sequence[Fraction], v: Sequence[Fraction]) -> Tuple[Fraction, Fraction, Fraction]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, item: int) -> int:
        while self.parent[item] != item:
            self.parent[item] = self.parent[self.parent[item]]
            item = self.parent[item]
        return item

    def union(self, a: int, b: int):
        root_a, root_b = self.find(a), self.find(b)
        if root_a != root_b:
            self.parent[max(root_a, root_b)] = min(root_a, root_b)

    def groups(self) -> Tuple[Tuple[int, ...], ...]:
        grouped: Dict[int, List[int]] = {}
        for item in range(len(self.parent)):
            grouped.setdefault(self.find(item), []).append(item)
        return tuple(tuple(members) for _, members in sorted(grouped.items()))


class ArrangementService:
    """Service for geometric line arrangements and named configurations"""

    def make_arrangement(self, lines: Iterable[Iterable], ambient=SurfaceKind.P2R) -> LineArrangement:
        """Normalize the lines and reject duplicates"""
        normalized = [normalize_triple(line) for line in lines]
        seen: Dict[ProjectiveTriple, int] = {}
        for position, line in enumerate(normalized):
            if line in seen:
                raise InvalidInputError(
                    f"lines {seen[line]} and {position} are the same line {self._show(line)}"
                )
            seen[line] = position
        return LineArrangement(lines=tuple(normalized), ambient=SurfaceKind(ambient))

    def compute_incidences(self, arr: LineArrangement) -> IncidenceData:
        """Every intersection point with its multiplicity, the t-vector and the components"""
        if arr.k < 2:
            raise InvalidInputError(f"an arrangement needs at least 2 lines, got {arr.k}")

        members: Dict[ProjectiveTriple, Set[int]] = {}
        components = _UnionFind(arr.k)
        for i, j in itertools.combinations(range(arr.k), 2):
            meet = cross(arr.lines[i], arr.lines[j])
            if all(c == 0 for c in meet):
                raise InvalidInputError(
                    f"lines {i} and {j} coincide: {self._show(arr.lines[i])}"
                )
            point = normalize_triple(meet)
            members.setdefault(point, set()).update((i, j))
            components.union(i, j)

        points = tuple(
            IncidencePoint(point=point, multiplicity=len(lines), members=tuple(sorted(lines)))
            for point, lines in sorted(members.items())
        )
        mv = MultiplicityVector.from_multiplicities(p.multiplicity for p in points)
        logger.debug(f"Arrangement of {arr.k} lines has t-vector {mv.label()}")
        return IncidenceData(points=points, multiplicities=mv, components=components.groups())

    def to_configuration(self, arr: LineArrangement, inc: IncidenceData,
                         surface: SurfaceInvariants) -> ConfigurationSummary:
        """Summary of a plane arrangement: k lines with C_i^2 = 1, g_i = 0"""
        if not surface.kind.is_plane:
            raise UnsupportedConfigurationError(
                f"plane arrangements live in the projective plane, not on {surface.label}"
            )
        line = Component(genus=0, self_intersection=1, canonical_degree=-3)
        return ConfigurationSummary(
            components=(line,) * arr.k,
            multiplicities=inc.multiplicities,
            connected=len(inc.components) == 1,
        )

    # Generators

    def generate(self, name: str, **params) -> Union[ConfigurationSummary, LineArrangement]:
        """Dispatch a named generator; names use dashes, e.g. 'near-pencil'"""
        key = name.replace("_", "-")
        builders = {
            "schur-star": self.schur_star,
            "pencil": self.pencil,
            "near-pencil": self.near_pencil,
            "generic": self.generic,
            "disjoint-union": self.disjoint_union,
        }
        if key not in builders:
            raise InvalidInputError(f"unknown generator {name!r}; expected one of {', '.join(GENERATORS)}")
        try:
            return builders[key](**params)
        except TypeError as exc:
            raise InvalidInputError(f"bad parameters for {key}: {exc}") from None

    def schur_star(self, d: int) -> ConfigurationSummary:
        """d lines through one point of a degree-d surface"""
        if d < 4:
            raise InvalidInputError(f"schur-star needs d >= 4, got {d}")
        line = Component(genus=0, self_intersection=2 - d, canonical_degree=d - 4)
        return ConfigurationSummary(
            components=(line,) * d,
            multiplicities=MultiplicityVector.from_mapping({d: 1}),
            connected=True,
            isolated_lines=0,
        )

    def pencil(self, k: int) -> LineArrangement:
        """k lines through (0:0:1)"""
        if k < 2:
            raise InvalidInputError(f"pencil needs k >= 2, got {k}")
        return self.make_arrangement(self._pencil_lines(k))

    def near_pencil(self, k: int) -> LineArrangement:
        """k-1 lines through (0:0:1) and the line z = 0"""
        if k < 3:
            raise InvalidInputError(f"near-pencil needs k >= 3, got {k}")
        return self.make_arrangement(self._pencil_lines(k - 1) + [(0, 0, 1)])

    def generic(self, k: int) -> LineArrangement:
        """Tangents to the conic xz = y^2 at (1 : t : t^2), t = 0..k-1; only double points"""
        if k < 2:
            raise InvalidInputError(f"generic needs k >= 2, got {k}")
        return self.make_arrangement((t * t, -2 * t, 1) for t in range(k))

    def disjoint_union(self, summaries: Sequence[ConfigurationSummary], n_isolated: int,
                       d: int) -> ConfigurationSummary:
        """Configurations on a degree-d surface joined with n_isolated pairwise disjoint lines"""
        if d < 1:
            raise InvalidInputError(f"degree {d} must be at least 1")
        if n_isolated < 0:
            raise InvalidInputError(f"n_isolated = {n_isolated} is negative")
        if not summaries and n_isolated == 0:
            raise InvalidInputError("disjoint-union of nothing")

        line = Component(genus=0, self_intersection=2 - d, canonical_degree=d - 4)
        components: List[Component] = []
        counts: Dict[int, int] = {}
        isolated: Optional[int] = n_isolated
        for summary in summaries:
            components.extend(summary.components)
            known = summary.known_isolated_lines()
            isolated = None if isolated is None or known is None else isolated + known
            for r, t in summary.multiplicities.items():
                counts[r] = counts.get(r, 0) + t
        components.extend([line] * n_isolated)

        pieces = len(summaries) + n_isolated
        if pieces == 1:
            connected = summaries[0].connected if summaries else True
        else:
            connected = False
        return ConfigurationSummary(
            components=tuple(components),
            multiplicities=MultiplicityVector.from_mapping(counts),
            connected=connected,
            isolated_lines=isolated,
        )

    def random_arrangement(self, k: int, seed: Optional[int] = None, coefficient_bound: int = 10,
                           generic: bool = False, max_attempts: int = 100000) -> LineArrangement:
        """Seeded random integer arrangement; generic rejects candidates through existing points"""
        if k < 2:
            raise InvalidInputError(f"random arrangement needs k >= 2, got {k}")
        if coefficient_bound < 1:
            raise InvalidInputError("coefficient_bound must be positive")
        rng = random.Random(seed)

        lines: List[ProjectiveTriple] = []
        points: Set[ProjectiveTriple] = set()
        attempts = 0
        while len(lines) < k:
            attempts += 1
            if attempts > max_attempts:
                raise InvalidInputError(
                    f"no {'generic ' if generic else ''}arrangement of {k} lines found "
                    f"with coefficients in [-{coefficient_bound}, {coefficient_bound}]"
                )
            raw = [rng.randint(-coefficient_bound, coefficient_bound) for _ in range(3)]
            if not any(raw):
                continue
            candidate = normalize_triple(raw)
            if candidate in lines:
                continue
            if generic and any(dot(candidate, p) == 0 for p in points):
                continue
            for line in lines:
                points.add(normalize_triple(cross(line, candidate)))
            lines.append(candidate)
        return LineArrangement(lines=tuple(lines))

    # Sweep into a wiring diagram

    def to_wiring_diagram(self, arr: LineArrangement) -> WiringDiagram:
        """Wiring diagram of a real arrangement, swept in a chart avoiding every intersection point

        The chart sends a line at infinity through no intersection point to
        z = 0 and a point of it on no arrangement line to the vertical
        direction, so every line becomes a graph y = m x + b with distinct
        slopes. Wires are ordered top to bottom at the far left.
        """
        if arr.ambient is not SurfaceKind.P2R:
            raise UnsupportedConfigurationError("only real arrangements can be swept")
        inc = self.compute_incidences(arr)
        if len(inc.points) == 1:
            raise UnsupportedConfigurationError("a pencil has no wiring diagram without a k-fold point")

        e1, vertical, e3 = self._chart(arr, inc)
        lines = [(dot(line, e1), dot(line, vertical), dot(line, e3)) for line in arr.lines]

        slopes = [-a / b for a, b, _ in lines]
        order = sorted(range(arr.k), key=lambda i: slopes[i])

        vertices = []
        for point in inc.points:
            i, j = point.members[0], point.members[1]
            x, y, z = cross(lines[i], lines[j])
            vertices.append(((x / z, y / z), point.members))
        vertices.sort(key=lambda item: item[0])

        events = []
        for _, members in vertices:
            positions = sorted(order.index(line) for line in members)
            p, r = positions[0], len(positions)
            if positions[-1] - p != r - 1:
                raise UnsupportedConfigurationError("sweep met a non-contiguous crossing")
            order[p:p + r] = reversed(order[p:p + r])
            events.append((p + 1, r))
        return WiringDiagram(k=arr.k, events=tuple(events))

    def _chart(self, arr: LineArrangement, inc: IncidenceData):
        """Basis (e1, X, e3) with e1, X spanning the line at infinity and X on no arrangement line"""
        radius = range(-CHART_SEARCH_RADIUS, CHART_SEARCH_RADIUS + 1)
        for raw in itertools.product(radius, repeat=3):
            if not any(raw):
                continue
            infinity = normalize_triple(raw)
            if any(dot(infinity, p.point) == 0 for p in inc.points):
                continue
            on_line = [cross(infinity, axis) for axis in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
            on_line = [p for p in on_line if any(p)]
            base, other = on_line[0], next(p for p in on_line[1:] if any(cross(on_line[0], p)))
            for t in itertools.count():
                vertical = tuple(b + t * o for b, o in zip(base, other))
                if all(dot(line, vertical) != 0 for line in arr.lines):
                    break
            e1 = other if t == 0 else base
            e3 = next(axis for axis in ((1, 0, 0), (0, 1, 0), (0, 0, 1)) if dot(infinity, axis) != 0)
            return e1, vertical, tuple(Fraction(c) for c in e3)
        raise UnsupportedConfigurationError("no line at infinity avoids every intersection point")

    @staticmethod
    def _pencil_lines(count: int) -> List[Tuple[int, int, int]]:
        lines = [(1, 0, 0), (0, 1, 0)]
        lines.extend((1, j, 0) for j in range(1, count - 1))
        return lines[:count]

    @staticmethod
    def _show(triple: ProjectiveTriple) -> str:
        return "(" + ", ".join(str(c) for c in triple) + ")"
