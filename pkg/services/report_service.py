"""
ReportService - Configuration file loading and report emission

Turns a configuration file into surface invariants and a configuration
summary, evaluates every applicable bound and serializes the outcome as JSON
or CSV. Rationals are always written as "p/q".
"""

import csv
import io
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from domain import (
    BoundOutcome,
    Component,
    ConfigurationSummary,
    HarbourneReport,
    LineArrangement,
    MultiplicityVector,
    PointSelection,
    SelectionSweep,
    SurfaceInvariants,
    SurfaceKind,
)
from schemas import (
    BoundDocument,
    ComponentSection,
    ConfigFile,
    ConfigurationDocument,
    ReportDocument,
    SkippedDocument,
    SurfaceDocument,
    SweepDocument,
)
from utils.errors import ConfigFileError, InvalidInputError
from utils.rationals import format_rational

from .arrangement_service import ArrangementService
from .bound_service import PSEUDOLINE_FLAT_BOUND, BoundService
from .harbourne_service import HarbourneService
from .surface_service import SurfaceService

logger = logging.getLogger(__name__)

PSEUDOLINE_CSV_COLUMNS = [
    "class_id", "k", "t_vector", "f0", "f1", "f2", "index_num", "index_den", "flat_bound_ok",
    "shnurnikov_margin_num", "shnurnikov_margin_den",
]

REPORT_CSV_COLUMNS = [
    "name", "kind", "role", "bound_value", "quantity", "lhs", "rhs", "margin", "satisfied", "note",
]

_TRIVIAL_CANONICAL = (SurfaceKind.K3, SurfaceKind.ENRIQUES, SurfaceKind.ABELIAN)


def _rational(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else format_rational(value)


class ReportService:
    """Service for configuration files and Harbourne reports"""

    def __init__(self, harbourne_service: Optional[HarbourneService] = None,
                 surface_service: Optional[SurfaceService] = None,
                 bound_service: Optional[BoundService] = None,
                 arrangement_service: Optional[ArrangementService] = None):
        self.harbourne = harbourne_service or HarbourneService()
        self.surfaces = surface_service or SurfaceService()
        self.bounds = bound_service or BoundService(self.harbourne, self.surfaces)
        self.arrangements = arrangement_service or ArrangementService()

    # Loading

    def load_config(self, path: Union[str, Path]) -> ConfigFile:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigFileError(f"cannot read file: {exc.strerror}", location=str(path)) from None
        return self.parse_config(text, source=str(path))

    def parse_config(self, text: str, source: str = "<input>") -> ConfigFile:
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigFileError(exc.msg, location=f"{source}:{exc.lineno}:{exc.colno}") from None
        try:
            return ConfigFile.model_validate(raw)
        except ValidationError as exc:
            error = exc.errors()[0]
            field = ".".join(str(part) for part in error["loc"]) or "<root>"
            raise ConfigFileError(error["msg"], location=f"{source}: {field}") from None

    def resolve_surface(self, doc: ConfigFile, preset: Optional[str] = None,
                        d: Optional[int] = None) -> SurfaceInvariants:
        """Surface from --surface-preset when given, otherwise from the file"""
        if preset is not None:
            return self.surfaces.preset(preset, d)
        section = doc.surface
        if section is None:
            raise ConfigFileError("no surface given; add a 'surface' section or pass --surface-preset")
        if section.kind is SurfaceKind.CUSTOM:
            return self.surfaces.custom(section.k_squared, section.c2, section.kodaira_nonneg)

        surface = self.surfaces.preset(section.kind, section.d)
        declared = {"k_squared": section.k_squared, "c2": section.c2, "kodaira_nonneg": section.kodaira_nonneg}
        for name, value in declared.items():
            if value is not None and value != getattr(surface, name):
                raise ConfigFileError(
                    f"{name} = {value} contradicts the {surface.label} preset value {getattr(surface, name)}",
                    location=f"surface.{name}",
                )
        return surface

    def build_summary(self, doc: ConfigFile,
                      surface: SurfaceInvariants) -> Tuple[ConfigurationSummary, List[str]]:
        """Configuration summary and provenance notes"""
        if doc.configuration is not None:
            section = doc.configuration
            components: List[Component] = []
            for position, component in enumerate(section.components):
                components.extend([self._component(component, surface, position)] * component.count)
            summary = ConfigurationSummary(
                components=tuple(components),
                multiplicities=MultiplicityVector.from_mapping(section.multiplicities),
                transversal=section.transversal,
                connected=section.connected,
                isolated_lines=section.isolated_lines,
            )
            return summary, []

        geometry = doc.geometry
        ambient = surface.kind if surface.kind.is_plane else geometry.ambient
        arr = self.arrangements.make_arrangement(geometry.lines, ambient)
        inc = self.arrangements.compute_incidences(arr)
        summary = self.arrangements.to_configuration(arr, inc, surface)

        notes: List[str] = []
        if geometry.claimed_multiplicities is not None:
            claimed = MultiplicityVector.from_mapping(geometry.claimed_multiplicities)
            if claimed != inc.multiplicities:
                notes.append(
                    f"claimed multiplicities {claimed.label() or 'none'} differ from the computed "
                    f"incidences {inc.multiplicities.label()}; the claimed ones are evaluated"
                )
                logger.warning(notes[-1])
            summary = ConfigurationSummary(
                components=summary.components,
                multiplicities=claimed,
                connected=summary.connected,
            )
        return summary, notes

    def _component(self, section: ComponentSection, surface: SurfaceInvariants, position: int) -> Component:
        c2, kc = section.self_intersection, section.canonical_degree
        adjunction = 2 * section.genus - 2
        if c2 is None and kc is None:
            if surface.kind in _TRIVIAL_CANONICAL:
                kc = 0
            elif section.genus == 0 and (surface.kind.is_plane or surface.kind is SurfaceKind.DEGREE_D):
                line = self.surfaces.line_component(surface)
                c2, kc = line.self_intersection, line.canonical_degree
            else:
                raise ConfigFileError(
                    "give self_intersection or canonical_degree for this surface",
                    location=f"configuration.components.{position}",
                )
        if c2 is None:
            c2 = adjunction - kc
        if kc is None:
            kc = adjunction - c2
        return Component(genus=section.genus, self_intersection=c2, canonical_degree=kc)

    # Report building

    def build_report(self, doc: ConfigFile, surface: SurfaceInvariants,
                     summary: ConfigurationSummary, notes: Optional[List[str]] = None,
                     sweep_smooth: Optional[int] = None) -> HarbourneReport:
        index = self.harbourne.harbourne_index(summary)
        applicable, skipped = self.bounds.evaluate_all(surface, summary)
        notes = list(notes or [])

        constant = None
        if doc.point_selection:
            selection = PointSelection(tuple(p.multiplicity for p in doc.point_selection))
            constant = self.harbourne.harbourne_constant_at_points(summary, selection)
            augmentation = self._augmentation_outcome(summary, selection)
            if augmentation is not None:
                (applicable if augmentation.applicable else skipped).append(augmentation)

        sweep = None
        if sweep_smooth is not None:
            sweep = self.harbourne.sweep_against_singular_points(summary, sweep_smooth)

        for outcome in applicable:
            if outcome.note:
                notes.append(outcome.note)
        return HarbourneReport(
            index=index,
            bound_results=tuple(applicable),
            skipped=tuple(skipped),
            constant_at_points=constant,
            notes=tuple(notes),
            selection_sweep=sweep,
        )

    def _augmentation_outcome(self, summary: ConfigurationSummary,
                              selection: PointSelection) -> Optional[BoundOutcome]:
        if selection.singular_counts() != summary.multiplicities.as_dict() or len(selection) == summary.s:
            return None
        result = self.bounds.point_augmentation_for(summary, selection)
        if not result.hypothesis:
            return BoundOutcome.not_applicable("point_augmentation", "augmented_value_above_minus_one", kind="inequality")
        return self.bounds.inequality_outcome(
            "point_augmentation", result.augmented_value, result.base_value, at_most=False
        )

    def create_report(self, path: Union[str, Path], preset: Optional[str] = None, d: Optional[int] = None,
                      sweep_smooth: Optional[int] = None) -> Tuple[HarbourneReport, ReportDocument]:
        """Load a file and evaluate it end to end"""
        doc = self.load_config(path)
        surface = self.resolve_surface(doc, preset, d)
        summary, notes = self.build_summary(doc, surface)
        logger.info(f"Loaded {path}: {summary.n} curves, s = {summary.s} on {surface.label}")
        report = self.build_report(doc, surface, summary, notes, sweep_smooth=sweep_smooth)
        return report, self.to_document(report, surface, summary, source=str(path))

    def to_document(self, report: HarbourneReport, surface: SurfaceInvariants,
                    summary: ConfigurationSummary, source: Optional[str] = None) -> ReportDocument:
        return ReportDocument(
            source=source,
            surface=SurfaceDocument(
                kind=surface.kind.value,
                d=surface.d,
                k_squared=surface.k_squared,
                c2=surface.c2,
                kodaira_nonneg=surface.kodaira_nonneg,
            ),
            configuration=ConfigurationDocument(
                n=summary.n,
                s=summary.s,
                f_vector=list(self.harbourne.f_vector(summary.multiplicities)),
                multiplicities={str(r): t for r, t in summary.multiplicities.items()},
                genera=list(summary.genera),
            ),
            index=format_rational(report.index),
            constant_at_points=_rational(report.constant_at_points),
            selection_sweep=self._sweep_document(report.selection_sweep),
            bounds=[self._bound_document(o) for o in report.bound_results],
            skipped=[SkippedDocument(name=o.name, reason=o.reason) for o in report.skipped],
            notes=list(report.notes),
        )

    @staticmethod
    def _sweep_document(sweep: Optional[SelectionSweep]) -> Optional[SweepDocument]:
        if sweep is None:
            return None
        return SweepDocument(
            max_smooth=sweep.max_smooth,
            minimum=format_rational(sweep.minimum),
            argmin=list(sweep.argmin.points),
            singular_value=format_rational(sweep.singular_value),
            singular_points_minimise=sweep.singular_points_minimise,
        )

    @staticmethod
    def _bound_document(outcome: BoundOutcome) -> BoundDocument:
        return BoundDocument(
            name=outcome.name,
            kind=outcome.kind,
            role="informational" if outcome.informational else "asserted",
            bound_value=_rational(outcome.bound_value),
            quantity=_rational(outcome.quantity),
            lhs=_rational(outcome.lhs),
            rhs=_rational(outcome.rhs),
            margin=_rational(outcome.margin),
            satisfied=outcome.satisfied,
            note=outcome.note,
        )

    # Emission

    def emit_json(self, document: ReportDocument) -> str:
        return document.model_dump_json(indent=2) + "\n"

    def emit_csv(self, document: ReportDocument) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=REPORT_CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerow({"name": "harbourne_index", "kind": "index", "role": "value", "quantity": document.index})
        if document.constant_at_points is not None:
            writer.writerow({
                "name": "constant_at_points", "kind": "constant", "role": "value",
                "quantity": document.constant_at_points,
            })
        if document.selection_sweep is not None:
            sweep = document.selection_sweep
            writer.writerow({
                "name": "selection_sweep", "kind": "constant", "role": "value", "quantity": sweep.minimum,
                "rhs": sweep.singular_value, "satisfied": str(sweep.singular_points_minimise).lower(),
                "note": f"argmin {' '.join(map(str, sweep.argmin))}; max_smooth {sweep.max_smooth}",
            })
        for bound in document.bounds:
            row = bound.model_dump()
            row["satisfied"] = "" if bound.satisfied is None else str(bound.satisfied).lower()
            writer.writerow({key: ("" if value is None else value) for key, value in row.items()})
        for skipped in document.skipped:
            writer.writerow({"name": skipped.name, "kind": "skipped", "role": "skipped", "note": skipped.reason})
        return buffer.getvalue()

    def emit(self, document: ReportDocument, fmt: str) -> str:
        if fmt == "json":
            return self.emit_json(document)
        if fmt == "csv":
            return self.emit_csv(document)
        raise InvalidInputError(f"unknown format {fmt!r}")

    # Generated configuration files

    def config_document(self, generated: Union[ConfigurationSummary, LineArrangement],
                        surface: SurfaceInvariants) -> Dict:
        """A configuration file reproducing a generated configuration"""
        surface_section = {"kind": surface.kind.value}
        if surface.d is not None:
            surface_section["d"] = surface.d

        if isinstance(generated, LineArrangement):
            return {
                "schema_version": 1,
                "surface": surface_section,
                "geometry": {
                    "lines": [[format_rational(c) for c in line] for line in generated.lines],
                    "ambient": generated.ambient.value,
                },
            }

        grouped: List[Dict] = []
        for component in generated.components:
            entry = {
                "genus": component.genus,
                "self_intersection": component.self_intersection,
                "canonical_degree": component.canonical_degree,
            }
            if grouped and {k: v for k, v in grouped[-1].items() if k != "count"} == entry:
                grouped[-1]["count"] += 1
            else:
                grouped.append({**entry, "count": 1})

        section = {
            "components": grouped,
            "multiplicities": {str(r): t for r, t in generated.multiplicities.items()},
            "transversal": generated.transversal,
        }
        if generated.known_isolated_lines() is not None:
            section["isolated_lines"] = generated.known_isolated_lines()
        if generated.connected is not None:
            section["connected"] = generated.connected
        return {"schema_version": 1, "surface": surface_section, "configuration": section}

    # Pseudoline tables

    def pseudoline_rows(self, classes) -> List[Dict]:
        """One row per (class, index, margin)"""
        rows = []
        for cls, index, margin in classes:
            f0, f1, f2 = self.harbourne.f_vector(cls.t_vector)
            rows.append({
                "class_id": cls.class_id,
                "k": cls.k,
                "t_vector": cls.t_vector.label(),
                "f0": f0,
                "f1": f1,
                "f2": f2,
                "index_num": index.numerator,
                "index_den": index.denominator,
                "flat_bound_ok": index >= PSEUDOLINE_FLAT_BOUND,
                "shnurnikov_margin_num": margin.numerator,
                "shnurnikov_margin_den": margin.denominator,
                "events": cls.representative.encode(),
            })
        return rows

    def scan_row(self, result) -> Dict:
        return {
            "k": result.k,
            "class_count": result.class_count,
            "min_index": format_rational(result.min_index),
            "argmin_index": result.argmin_index.class_id,
            "argmin_index_t_vector": result.argmin_index.t_vector.label(),
            "min_shnurnikov_margin": format_rational(result.min_shnurnikov_margin),
            "argmin_shnurnikov": result.argmin_shnurnikov.class_id,
            "argmin_shnurnikov_t_vector": result.argmin_shnurnikov.t_vector.label(),
            "flat_bound_violations": result.flat_bound_violations,
        }

    def emit_table(self, rows: List[Dict], columns: List[str], fmt: str) -> str:
        """CSV with exactly the given columns, or JSON records with rationals as "p/q" """
        if fmt == "csv":
            buffer = io.StringIO()
            writer = csv.DictWriter(buffer, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({
                    key: str(value).lower() if isinstance(value, bool) else value for key, value in row.items()
                })
            return buffer.getvalue()
        if fmt == "json":
            return json.dumps([self._json_record(row) for row in rows], indent=2) + "\n"
        raise InvalidInputError(f"unknown format {fmt!r}")

    @staticmethod
    def _json_record(row: Dict) -> Dict:
        record = {}
        for key, value in row.items():
            if key.endswith("_num"):
                base = key[:-len("_num")]
                record[base] = f"{value}/{row[base + '_den']}"
            elif not key.endswith("_den"):
                record[key] = value
        return record
