"""
CensusService - Persistence of pseudoline classes, scans and reports

Stores results in the census database through SQLAlchemy sessions and answers
queries for the census command. Subscribed to the event bus when result
storage is enabled.
"""

import logging
from typing import Callable, List, Optional

from sqlalchemy.orm import Session

from models import PseudolineClass, ReportRecord, ScanSummary
from utils.events import ReportCreatedEvent, ScanCompletedEvent
from utils.rationals import format_rational

from .bound_service import PSEUDOLINE_FLAT_BOUND

logger = logging.getLogger(__name__)


class CensusService:
    """Service for the census store"""

    def __init__(self, session_factory: Optional[Callable[[], Session]] = None):
        if session_factory is None:
            from database import SessionLocal
            session_factory = SessionLocal
        self.session_factory = session_factory

    def save_classes(self, db: Session, k: int, classes) -> int:
        """Insert classes not yet stored; returns the number inserted"""
        stored = {
            row.class_id for row in db.query(PseudolineClass.class_id).filter(PseudolineClass.k == k)
        }
        inserted = 0
        for cls, index, margin in classes:
            if cls.class_id in stored:
                continue
            f0 = cls.t_vector.s
            f1 = sum(r * t for r, t in cls.t_vector.items())
            f2 = sum(r * r * t for r, t in cls.t_vector.items())
            db.add(PseudolineClass(
                k=k,
                class_id=cls.class_id,
                t_vector=cls.t_vector.label(),
                events=cls.representative.encode(),
                f0=f0,
                f1=f1,
                f2=f2,
                harbourne_index=format_rational(index),
                shnurnikov_margin=format_rational(margin),
                flat_bound_ok=index >= PSEUDOLINE_FLAT_BOUND,
            ))
            stored.add(cls.class_id)
            inserted += 1
        db.commit()
        logger.info(f"Stored {inserted} new classes for k={k}")
        return inserted

    def save_scan(self, db: Session, result) -> ScanSummary:
        summary = ScanSummary(
            k=result.k,
            class_count=result.class_count,
            min_index=format_rational(result.min_index),
            argmin_index=result.argmin_index.class_id,
            min_shnurnikov_margin=format_rational(result.min_shnurnikov_margin),
            argmin_shnurnikov=result.argmin_shnurnikov.class_id,
            flat_bound_violations=result.flat_bound_violations,
        )
        db.add(summary)
        db.commit()
        return summary

    def save_report(self, db: Session, event: ReportCreatedEvent) -> ReportRecord:
        record = ReportRecord(
            source=event.source,
            harbourne_index=format_rational(event.index),
            verdict=event.verdict,
            payload=event.payload,
        )
        db.add(record)
        db.commit()
        logger.info(f"Stored report for {event.source} ({event.verdict})")
        return record

    def list_scans(self, db: Session, k: Optional[int] = None) -> List[ScanSummary]:
        query = db.query(ScanSummary)
        if k is not None:
            query = query.filter(ScanSummary.k == k)
        return query.order_by(ScanSummary.k, ScanSummary.id).all()

    def list_classes(self, db: Session, k: int) -> List[PseudolineClass]:
        return db.query(PseudolineClass).filter(PseudolineClass.k == k).order_by(PseudolineClass.id).all()

    # Event handlers

    def handle_report_created_event(self, event: ReportCreatedEvent):
        db = self.session_factory()
        try:
            self.save_report(db, event)
        finally:
            db.close()

    def handle_scan_completed_event(self, event: ScanCompletedEvent):
        db = self.session_factory()
        try:
            self.save_classes(db, event.k, event.classes)
            if event.result is not None:
                self.save_scan(db, event.result)
        finally:
            db.close()
