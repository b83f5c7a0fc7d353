from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker

from utils.config import config


def _make_engine(url: str):
    if url.startswith("sqlite"):
        return create_engine(url, connect_args={"check_same_thread": False})
    return create_engine(url, pool_pre_ping=True, pool_recycle=300)


engine = _make_engine(config.DATABASE_URL)
SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)


def configure_engine(url: str):
    """Rebind the census store to another database URL"""
    global engine
    engine = _make_engine(url)
    SessionLocal.configure(bind=engine)
    return engine


def create_tables():
    """Create all census tables"""
    from models import Base
    Base.metadata.create_all(bind=engine)
