import json
from fractions import Fraction

from main import EXIT_OK, main
from models import PseudolineClass, ReportRecord
from services.census_service import CensusService
from services.pseudoline_service import PseudolineService
from utils.events import EventBus, ReportCreatedEvent, ScanCompletedEvent

pseudolines = PseudolineService()


def scored(k):
    return [(cls, *pseudolines.class_metrics(cls)) for cls in pseudolines.enumerate(k)]


def test_save_classes_skips_stored_classes(census_db):
    census = CensusService(census_db)
    db = census_db()
    try:
        assert census.save_classes(db, 4, scored(4)) == 2
        assert census.save_classes(db, 4, scored(4)) == 0
        stored = census.list_classes(db, 4)
        assert {row.t_vector for row in stored} == {"2:6", "3:1 2:3"}
        assert {row.harbourne_index for row in stored} == {"-4/3", "-5/4"}
        assert all(row.flat_bound_ok for row in stored)
    finally:
        db.close()


def test_save_and_list_scans(census_db):
    census = CensusService(census_db)
    db = census_db()
    try:
        census.save_scan(db, pseudolines.extremal_scan(3))
        census.save_scan(db, pseudolines.extremal_scan(4))
        scans = census.list_scans(db)
        assert [scan.k for scan in scans] == [3, 4]
        only_four = census.list_scans(db, 4)
        assert len(only_four) == 1
        assert only_four[0].min_index == "-4/3"
        assert only_four[0].min_shnurnikov_margin == "-7/2"
    finally:
        db.close()


def test_events_reach_the_store(census_db):
    census = CensusService(census_db)
    bus = EventBus()
    bus.subscribe("report_created", census.handle_report_created_event)
    bus.subscribe("scan_completed", census.handle_scan_completed_event)

    classes = scored(3)
    result = pseudolines.scan_of(3, [cls for cls, _, _ in classes])
    bus.publish_scan_completed(ScanCompletedEvent(k=3, classes=classes, result=result))
    bus.publish_report_created(ReportCreatedEvent(
        source="triangle.json", index=Fraction(-1), verdict="ok", payload="{}"
    ))

    db = census_db()
    try:
        assert len(census.list_classes(db, 3)) == 1
        assert len(census.list_scans(db, 3)) == 1
        record = db.query(ReportRecord).one()
        assert (record.source, record.harbourne_index, record.verdict) == ("triangle.json", "-1/1", "ok")
    finally:
        db.close()


def test_failing_handler_does_not_stop_others():
    bus = EventBus()
    seen = []

    def broken(event):
        raise RuntimeError("store unavailable")

    bus.subscribe("report_created", broken)
    bus.subscribe("report_created", seen.append)
    event = ReportCreatedEvent(source="x", index=Fraction(0), verdict="ok", payload="{}")
    bus.publish_report_created(event)
    assert seen == [event]


def test_store_flag_persists_cli_results(census_db, tmp_path, capsys):
    document = {
        "schema_version": 1,
        "surface": {"kind": "P2R"},
        "geometry": {"lines": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
    }
    path = tmp_path / "triangle.json"
    path.write_text(json.dumps(document), encoding="utf-8")

    assert main(["--store", "compute", str(path)]) == EXIT_OK
    assert main(["--store", "pseudolines", "--k", "4", "--mode", "scan"]) == EXIT_OK
    capsys.readouterr()

    assert main(["census", "--k", "4"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("k,class_count,min_index")
    assert lines[1].startswith("4,2,-4/3")

    db = census_db()
    try:
        assert db.query(ReportRecord).count() == 1
        assert db.query(PseudolineClass).filter(PseudolineClass.k == 4).count() == 2
    finally:
        db.close()
