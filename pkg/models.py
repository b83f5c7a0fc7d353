from sqlalchemy import Column, Integer, String, DateTime, Boolean, Text, Index, UniqueConstraint
from sqlalchemy.orm import declarative_base
from sqlalchemy.sql import func

Base = declarative_base()

# Rationals are stored as exact "p/q" text


class PseudolineClass(Base):
    __tablename__ = "pseudoline_classes"

    id = Column(Integer, primary_key=True, index=True)
    k = Column(Integer, nullable=False, index=True)
    class_id = Column(String(32), nullable=False)
    t_vector = Column(String(200), nullable=False)  # e.g. "3:1 2:3"
    events = Column(Text, nullable=False)            # "p,r;p,r;..."
    f0 = Column(Integer, nullable=False)
    f1 = Column(Integer, nullable=False)
    f2 = Column(Integer, nullable=False)
    harbourne_index = Column(String(64), nullable=False)
    shnurnikov_margin = Column(String(64), nullable=False)
    flat_bound_ok = Column(Boolean, nullable=False)
    created_at = Column(DateTime(timezone=True), server_default=func.now())

    __table_args__ = (
        UniqueConstraint('k', 'class_id', name='uq_pseudoline_class'),
    )


class ScanSummary(Base):
    __tablename__ = "scan_summaries"

    id = Column(Integer, primary_key=True, index=True)
    k = Column(Integer, nullable=False, index=True)
    class_count = Column(Integer, nullable=False)
    min_index = Column(String(64), nullable=False)
    argmin_index = Column(String(32), nullable=False)
    min_shnurnikov_margin = Column(String(64), nullable=False)
    argmin_shnurnikov = Column(String(32), nullable=False)
    flat_bound_violations = Column(Integer, default=0)
    created_at = Column(DateTime(timezone=True), server_default=func.now())

    __table_args__ = (
        Index('idx_scan_k_created', 'k', 'created_at'),
    )


class ReportRecord(Base):
    __tablename__ = "report_records"

    id = Column(Integer, primary_key=True, index=True)
    source = Column(String(500))
    harbourne_index = Column(String(64), nullable=False)
    verdict = Column(String(20), nullable=False)  # ok, violation
    payload = Column(Text, nullable=False)        # report JSON
    created_at = Column(DateTime(timezone=True), server_default=func.now())

    __table_args__ = (
        Index('idx_report_verdict_created', 'verdict', 'created_at'),
    )
