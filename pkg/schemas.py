"""
Pydantic schemas for configuration files and reports.

Configuration files reject unknown fields. Rationals are "p/q" strings (plain
integers are accepted on input); reports always emit "p/q".
"""

from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, field_validator, model_validator

from domain import SurfaceKind
from utils.rationals import parse_rational

SCHEMA_VERSION = 1


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


# Configuration files

class SurfaceSection(StrictModel):
    kind: SurfaceKind
    d: Optional[int] = Field(default=None, ge=1)
    k_squared: Optional[int] = None
    c2: Optional[int] = None
    kodaira_nonneg: Optional[bool] = None

    @model_validator(mode="after")
    def check_custom(self):
        if self.kind is SurfaceKind.CUSTOM:
            missing = [name for name in ("k_squared", "c2", "kodaira_nonneg") if getattr(self, name) is None]
            if missing:
                raise ValueError(f"Custom surfaces need {', '.join(missing)}")
        return self


class ComponentSection(StrictModel):
    genus: int = Field(ge=0)
    self_intersection: Optional[int] = None
    canonical_degree: Optional[int] = None
    count: int = Field(default=1, ge=1)


class ConfigurationSection(StrictModel):
    components: List[ComponentSection] = Field(min_length=1)
    multiplicities: Dict[int, int] = Field(default_factory=dict)
    transversal: bool = True
    connected: Optional[bool] = None
    isolated_lines: Optional[int] = Field(default=None, ge=0)

    @field_validator("multiplicities")
    @classmethod
    def check_multiplicities(cls, value: Dict[int, int]) -> Dict[int, int]:
        for r, t in value.items():
            if r < 2:
                raise ValueError(f"multiplicity key {r} is below 2")
            if t < 0:
                raise ValueError(f"t_{r} = {t} is negative")
        return value


class GeometrySection(StrictModel):
    lines: List[List[Union[StrictInt, str]]] = Field(min_length=2)
    ambient: SurfaceKind = SurfaceKind.P2R
    claimed_multiplicities: Optional[Dict[int, int]] = None

    @field_validator("lines", mode="after")
    @classmethod
    def parse_lines(cls, value) -> List[Tuple[Fraction, Fraction, Fraction]]:
        parsed = []
        for position, line in enumerate(value):
            if len(line) != 3:
                raise ValueError(f"line {position} needs three coordinates, got {len(line)}")
            parsed.append(tuple(parse_rational(c) for c in line))
        return parsed


class PointSection(StrictModel):
    multiplicity: int = Field(ge=0)


class ConfigFile(StrictModel):
    schema_version: int = SCHEMA_VERSION
    surface: Optional[SurfaceSection] = None
    configuration: Optional[ConfigurationSection] = None
    geometry: Optional[GeometrySection] = None
    point_selection: Optional[List[PointSection]] = None

    @model_validator(mode="after")
    def check_exactly_one_source(self):
        if (self.configuration is None) == (self.geometry is None):
            raise ValueError("exactly one of 'configuration' and 'geometry' must be present")
        if self.schema_version != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {self.schema_version}")
        return self


# Reports

class SurfaceDocument(BaseModel):
    kind: str
    d: Optional[int] = None
    k_squared: int
    c2: int
    kodaira_nonneg: bool


class ConfigurationDocument(BaseModel):
    n: int
    s: int
    f_vector: List[int]
    multiplicities: Dict[str, int]
    genera: List[int]


class BoundDocument(BaseModel):
    name: str
    kind: str
    role: str
    bound_value: Optional[str] = None
    quantity: Optional[str] = None
    lhs: Optional[str] = None
    rhs: Optional[str] = None
    margin: Optional[str] = None
    satisfied: Optional[bool] = None
    note: Optional[str] = None


class SkippedDocument(BaseModel):
    name: str
    reason: str


class SweepDocument(BaseModel):
    max_smooth: int
    minimum: str
    argmin: List[int]
    singular_value: str
    singular_points_minimise: bool


class ReportDocument(BaseModel):
    schema_version: int = SCHEMA_VERSION
    source: Optional[str] = None
    surface: SurfaceDocument
    configuration: ConfigurationDocument
    index: str
    constant_at_points: Optional[str] = None
    selection_sweep: Optional[SweepDocument] = None
    bounds: List[BoundDocument] = Field(default_factory=list)
    skipped: List[SkippedDocument] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
