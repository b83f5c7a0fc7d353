"""
Dependency Injection container for the Harbourne index toolkit
Manages service dependencies and lifecycle.
"""
import logging
from typing import Dict, Any

from .events import event_bus

logger = logging.getLogger(__name__)


class ServiceContainer:
    """
    Dependency injection container for services.
    Manages service creation, dependencies, and lifecycle.
    """

    def __init__(self):
        self._services: Dict[str, Any] = {}
        self._initialized = False
        self._storage_enabled = False

    def initialize(self):
        """Initialize all services with their dependencies"""
        if self._initialized:
            return

        logger.debug("Initializing service container...")

        from services.harbourne_service import HarbourneService
        from services.surface_service import SurfaceService
        from services.bound_service import BoundService
        from services.arrangement_service import ArrangementService
        from services.pseudoline_service import PseudolineService
        from services.report_service import ReportService

        self._services['event_bus'] = event_bus
        self._services['harbourne_service'] = HarbourneService()
        self._services['surface_service'] = SurfaceService()
        self._services['bound_service'] = BoundService(
            harbourne_service=self._services['harbourne_service'],
            surface_service=self._services['surface_service'],
        )
        self._services['arrangement_service'] = ArrangementService()
        self._services['pseudoline_service'] = PseudolineService(
            bound_service=self._services['bound_service']
        )
        self._services['report_service'] = ReportService(
            harbourne_service=self._services['harbourne_service'],
            surface_service=self._services['surface_service'],
            bound_service=self._services['bound_service'],
            arrangement_service=self._services['arrangement_service'],
        )

        self._initialized = True
        logger.debug("Service container initialized successfully")

    def enable_storage(self):
        """Create the census tables and subscribe the census store to result events"""
        if self._storage_enabled:
            return
        from database import create_tables

        create_tables()
        census = self.get_census_service()
        event_bus.subscribe('report_created', census.handle_report_created_event)
        event_bus.subscribe('scan_completed', census.handle_scan_completed_event)
        self._storage_enabled = True
        logger.info("Result storage enabled")

    def get_service(self, service_name: str) -> Any:
        """Get a service by name"""
        if not self._initialized:
            self.initialize()

        if service_name == 'census_service' and service_name not in self._services:
            from services.census_service import CensusService
            self._services['census_service'] = CensusService()

        if service_name not in self._services:
            raise ValueError(f"Service '{service_name}' not found")

        return self._services[service_name]

    def get_harbourne_service(self):
        return self.get_service('harbourne_service')

    def get_surface_service(self):
        return self.get_service('surface_service')

    def get_bound_service(self):
        return self.get_service('bound_service')

    def get_arrangement_service(self):
        return self.get_service('arrangement_service')

    def get_pseudoline_service(self):
        return self.get_service('pseudoline_service')

    def get_report_service(self):
        return self.get_service('report_service')

    def get_census_service(self):
        """Get CensusService instance bound to the configured database"""
        return self.get_service('census_service')


# Global service container instance
container = ServiceContainer()
