import pytest
from sqlalchemy.orm import sessionmaker

import database
from utils import container, event_bus
from utils.config import config


@pytest.fixture
def census_db(tmp_path, monkeypatch):
    """Census store on a throwaway sqlite file; the event bus is reset afterwards"""
    original = database.engine
    engine = database.configure_engine(f"sqlite:///{tmp_path / 'census.db'}")
    database.create_tables()
    monkeypatch.setattr(config, "STORE_RESULTS", False)
    yield sessionmaker(autocommit=False, autoflush=False, bind=engine)
    event_bus.clear()
    container._storage_enabled = False
    container._services.pop("census_service", None)
    database.engine = original
    database.SessionLocal.configure(bind=original)
    engine.dispose()
