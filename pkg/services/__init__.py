"""
Services package for the Harbourne index toolkit

One service class per concern: indices, surfaces, bounds, arrangements,
pseudolines, reports and the census store.
"""

from .harbourne_service import HarbourneService
from .surface_service import SurfaceService
from .bound_service import BoundService
from .arrangement_service import ArrangementService
from .pseudoline_service import PseudolineService
from .report_service import ReportService
from .census_service import CensusService

__all__ = [
    'HarbourneService',
    'SurfaceService',
    'BoundService',
    'ArrangementService',
    'PseudolineService',
    'ReportService',
    'CensusService'
]
