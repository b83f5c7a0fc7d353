"""
SurfaceService - Presets and validation of ambient surface invariants

Hypersurface invariants are computed from the degree; the degree-4 case must
coincide with the K3 preset.
"""

import logging
from typing import Optional

from domain import Component, ConfigurationSummary, SurfaceInvariants, SurfaceKind
from utils.errors import AdjunctionError, InvalidInputError

logger = logging.getLogger(__name__)

_FIXED_PRESETS = {
    SurfaceKind.P2C: (9, 3, False),
    SurfaceKind.P2R: (9, 3, False),
    SurfaceKind.K3: (0, 24, True),
    SurfaceKind.ENRIQUES: (0, 12, True),
    SurfaceKind.ABELIAN: (0, 0, True),
}

# K is numerically trivial on these, so K.C_i = 0 for every curve
_TRIVIAL_CANONICAL = (SurfaceKind.K3, SurfaceKind.ENRIQUES, SurfaceKind.ABELIAN)


class SurfaceService:
    """Service for ambient surface invariants"""

    def preset(self, kind, d: Optional[int] = None) -> SurfaceInvariants:
        kind = self._coerce_kind(kind)
        if kind is SurfaceKind.DEGREE_D:
            if d is None or d < 1:
                raise InvalidInputError("DegreeDInP3 needs a degree d >= 1")
            return SurfaceInvariants(
                k_squared=d * (d - 4) ** 2,
                c2=d * (d * d - 4 * d + 6),
                kodaira_nonneg=d >= 4,
                kind=kind,
                d=d,
            )
        if d is not None:
            raise InvalidInputError(f"degree given for {kind.value}, which takes none")
        if kind is SurfaceKind.CUSTOM:
            raise InvalidInputError("Custom surfaces need explicit invariants; use custom()")
        k_squared, c2, nonneg = _FIXED_PRESETS[kind]
        return SurfaceInvariants(k_squared=k_squared, c2=c2, kodaira_nonneg=nonneg, kind=kind)

    def custom(self, k_squared: int, c2: int, kodaira_nonneg: bool) -> SurfaceInvariants:
        return SurfaceInvariants(
            k_squared=k_squared, c2=c2, kodaira_nonneg=kodaira_nonneg, kind=SurfaceKind.CUSTOM
        )

    def line_component(self, surface: SurfaceInvariants) -> Component:
        """The component type of a line on this surface, by adjunction"""
        if surface.kind.is_plane:
            return Component(genus=0, self_intersection=1, canonical_degree=-3)
        if surface.kind is SurfaceKind.DEGREE_D:
            return Component(genus=0, self_intersection=2 - surface.d, canonical_degree=surface.d - 4)
        raise InvalidInputError(f"lines are not defined on a {surface.label} surface")

    def canonical_dot_C(self, surface: SurfaceInvariants, summary: ConfigurationSummary) -> int:
        """K_X.C as the sum of the components' canonical degrees, adjunction enforced"""
        for position, component in enumerate(summary.components):
            if component.adjunction_defect != 0:
                raise AdjunctionError(
                    f"component {position}: 2g - 2 = {2 * component.genus - 2} but "
                    f"C^2 + K.C = {component.self_intersection + component.canonical_degree}"
                )
            if surface.kind in _TRIVIAL_CANONICAL and component.canonical_degree != 0:
                raise AdjunctionError(
                    f"component {position}: K.C = {component.canonical_degree} on a "
                    f"{surface.label} surface, where K is numerically trivial"
                )
        return sum(c.canonical_degree for c in summary.components)

    def is_line_configuration(self, surface: SurfaceInvariants, summary: ConfigurationSummary) -> bool:
        """True when every component is a line of this surface"""
        try:
            line = self.line_component(surface)
        except InvalidInputError:
            return False
        return all(c == line for c in summary.components)

    @staticmethod
    def _coerce_kind(kind) -> SurfaceKind:
        if isinstance(kind, SurfaceKind):
            return kind
        try:
            return SurfaceKind(kind)
        except ValueError:
            raise InvalidInputError(f"unknown surface kind {kind!r}") from None
