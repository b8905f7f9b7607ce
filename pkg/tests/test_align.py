import datetime

import numpy as np
import pytest

from attn_peaks import (
    DisasterRecord,
    InputError,
    NewsEvent,
    align_events,
    alignment_summary,
    load_registry,
)
from support import oracle_alignment_pairs

D = datetime.date

REGISTRY_HEADER = "record_id,source,raw_type,onset_date,location,status\n"


def write_registry(tmp_path, body: str, name: str = "registry.csv", header: str = REGISTRY_HEADER):
    path = tmp_path / name
    path.write_text(header + body, encoding="utf-8")
    return path


def make_event(hazard: str, start: D, length: int = 1, peak_offset: int = 0) -> NewsEvent:
    days = tuple(
        (start + datetime.timedelta(days=i), 2 + (1 if i == peak_offset else 0))
        for i in range(length)
    )
    return NewsEvent(
        hazard=hazard,
        peak_date=start + datetime.timedelta(days=peak_offset),
        start_date=start,
        end_date=start + datetime.timedelta(days=length - 1),
        day_counts=days,
    )


def make_record(
    record_id: str, hazard: str, onset: D, source: str = "EMDAT"
) -> DisasterRecord:
    return DisasterRecord(
        record_id=record_id,
        source=source,
        hazard=hazard,
        onset_date=onset,
        location="",
        raw_type=hazard,
        status="",
    )


class TestLoadRegistry:
    def test_empty_registry(self, tmp_path):
        path = write_registry(tmp_path, "")
        load = load_registry(path, "EMDAT")
        assert load.records == []
        assert load.n_ignored_by_type == 0

    def test_type_map_applies(self, tmp_path):
        path = write_registry(
            tmp_path,
            'r1,EMDAT,"Mass movement (wet)",2011-01-11,Rio de Janeiro,\n',
        )
        load = load_registry(path, "EMDAT")
        record = load.records[0]
        assert record.hazard == "landslide"
        assert record.raw_type == "Mass movement (wet)"
        assert record.onset_date == D(2011, 1, 11)
        assert record.source == "EMDAT"

    def test_status_filter_drops_and_counts(self, tmp_path):
        path = write_registry(
            tmp_path,
            "r1,S2ID,Deslizamentos,2011-01-11,Petropolis,registered\n"
            "r2,S2ID,Deslizamentos,2011-02-11,Petropolis,recognised\n",
        )
        load = load_registry(
            path, "S2ID", type_map={"Deslizamentos": "landslide"}
        )
        assert [r.record_id for r in load.records] == ["r2"]
        assert load.n_dropped_by_status == 1

    def test_status_filter_only_applies_to_s2id(self, tmp_path):
        path = write_registry(tmp_path, "r1,EMDAT,Wildfire,2011-01-11,,registered\n")
        load = load_registry(path, "EMDAT")
        assert len(load.records) == 1

    def test_ignored_types_are_counted(self, tmp_path):
        path = write_registry(tmp_path, "r1,EMDAT,Epidemic,2011-01-11,,\n")
        load = load_registry(path, "EMDAT", type_map={"Epidemic": "ignore"})
        assert load.records == []
        assert load.n_ignored_by_type == 1

    def test_unmapped_raw_type_lists_the_label(self, tmp_path):
        path = write_registry(tmp_path, "r1,EMDAT,Volcanic activity,2011-01-11,,\n")
        with pytest.raises(InputError, match="'Volcanic activity'"):
            load_registry(path, "EMDAT")

    def test_invalid_date_names_the_row(self, tmp_path):
        path = write_registry(
            tmp_path,
            "r1,EMDAT,Wildfire,2011-01-11,,\n"
            "r2,EMDAT,Wildfire,2011-13-40,,\n",
        )
        with pytest.raises(InputError, match="invalid date at row 2"):
            load_registry(path, "EMDAT")

    def test_source_mismatch_is_rejected(self, tmp_path):
        path = write_registry(tmp_path, "r1,S2ID,Wildfire,2011-01-11,,\n")
        with pytest.raises(InputError, match="declares source 'S2ID'"):
            load_registry(path, "EMDAT")

    def test_blank_source_column_inherits_argument(self, tmp_path):
        path = write_registry(tmp_path, "r1,,Wildfire,2011-01-11,,\n")
        assert load_registry(path, "EMDAT").records[0].source == "EMDAT"

    def test_duplicate_record_id_is_rejected(self, tmp_path):
        path = write_registry(
            tmp_path,
            "r1,EMDAT,Wildfire,2011-01-11,,\nr1,EMDAT,Wildfire,2011-01-12,,\n",
        )
        with pytest.raises(InputError, match="duplicate record id"):
            load_registry(path, "EMDAT")

    def test_unexpected_header_is_rejected(self, tmp_path):
        path = write_registry(tmp_path, "", header="id,source,type,onset,loc,status\n")
        with pytest.raises(InputError, match="unexpected registry header"):
            load_registry(path, "EMDAT")


class TestAlignEvents:
    def test_onset_on_first_news_day_aligns_with_lag_zero(self):
        ev = make_event("landslide", D(2011, 1, 12))
        rec = make_record("r1", "landslide", D(2011, 1, 12))
        report = align_events([ev], [rec], window_days=5)
        assert len(report.pairs) == 1
        assert report.pairs[0].lag_days == 0

    def test_window_boundaries_are_inclusive(self):
        ev = make_event("landslide", D(2011, 1, 12))
        at_window = make_record("r1", "landslide", D(2011, 1, 7))
        beyond = make_record("r2", "landslide", D(2011, 1, 6))
        report = align_events([ev], [at_window, beyond], window_days=5)
        assert [p.record_id for p in report.pairs] == ["r1"]
        assert report.pairs[0].lag_days == 5
        assert report.unmatched_records == [("EMDAT", "r2")]

    def test_news_before_onset_never_aligns(self):
        ev = make_event("landslide", D(2011, 1, 12))
        rec = make_record("r1", "landslide", D(2011, 1, 13))
        assert align_events([ev], [rec], window_days=5).pairs == []

    def test_event_can_align_with_multiple_records(self):
        ev = make_event("landslide", D(2011, 1, 12))
        records = [
            make_record("r1", "landslide", D(2011, 1, 11)),
            make_record("r2", "landslide", D(2011, 1, 9)),
        ]
        report = align_events([ev], records, window_days=5)
        assert {(p.record_id, p.lag_days) for p in report.pairs} == {("r1", 1), ("r2", 3)}
        assert report.aligned_by_source == {"EMDAT": {"landslide": 1}}

    def test_hazard_separation(self):
        ev = make_event("fire", D(2011, 1, 12))
        rec = make_record("r1", "landslide", D(2011, 1, 12))
        report = align_events([ev], [rec], window_days=5)
        assert report.pairs == []
        assert report.unmatched_events == ["fire-2011-01-12"]
        assert report.unmatched_records == [("EMDAT", "r1")]

    def test_negative_window_is_rejected(self):
        with pytest.raises(ValueError, match="window_days"):
            align_events([], [], window_days=-1)

    def test_matches_all_pairs_oracle_on_random_fixtures(self):
        rng = np.random.default_rng(13)
        base = D(2010, 1, 1)
        for _ in range(30):
            events = [
                make_event(
                    rng.choice(["landslide", "fire"]),
                    base + datetime.timedelta(days=int(rng.integers(0, 200)) * 3),
                )
                for _ in range(20)
            ]
            # keep event ids unique per hazard+start
            events = list({e.event_id: e for e in events}.values())
            records = [
                make_record(
                    f"r{i}",
                    rng.choice(["landslide", "fire"]),
                    base + datetime.timedelta(days=int(rng.integers(-5, 605))),
                    source=rng.choice(["EMDAT", "S2ID"]),
                )
                for i in range(25)
            ]
            window = int(rng.integers(0, 9))
            report = align_events(events, records, window)
            got = {(p.event_id, p.source, p.record_id, p.lag_days) for p in report.pairs}
            assert got == oracle_alignment_pairs(events, records, window)
            # symmetric bookkeeping
            matched_events = {p.event_id for p in report.pairs}
            assert len(report.unmatched_events) + len(matched_events) == len(events)
            matched_records = {(p.source, p.record_id) for p in report.pairs}
            assert len(report.unmatched_records) + len(matched_records) == len(records)

    def test_widening_window_is_monotone(self):
        rng = np.random.default_rng(17)
        base = D(2015, 6, 1)
        events = [
            make_event("fire", base + datetime.timedelta(days=int(d) * 2))
            for d in rng.integers(0, 100, 12)
        ]
        events = list({e.event_id: e for e in events}.values())
        records = [
            make_record(f"r{i}", "fire", base + datetime.timedelta(days=int(d)))
            for i, d in enumerate(rng.integers(-10, 210, 30))
        ]
        previous: set = set()
        for window in range(0, 12):
            pairs = {
                (p.event_id, p.source, p.record_id)
                for p in align_events(events, records, window).pairs
            }
            assert previous <= pairs
            previous = pairs


class TestAlignmentSummary:
    def test_no_pairs(self):
        report = align_events([make_event("fire", D(2020, 1, 1))], [], 5)
        summary = alignment_summary(report, 1)
        assert summary["events_aligned_any_source"] == 0
        assert summary["aligned_fraction"] == 0.0

    def test_two_of_eight(self):
        events = [
            make_event("fire", D(2020, 1, 1) + datetime.timedelta(days=20 * i))
            for i in range(8)
        ]
        records = [
            make_record("r1", "fire", events[0].start_date),
            make_record("r2", "fire", events[3].start_date - datetime.timedelta(days=2)),
        ]
        summary = alignment_summary(align_events(events, records, 5), 8)
        assert summary["events_aligned_any_source"] == 2
        assert summary["aligned_fraction"] == 0.25

    def test_zero_events_reports_null_fraction(self):
        summary = alignment_summary(align_events([], [], 5), 0)
        assert summary["aligned_fraction"] is None

    def test_miniature_corpus_reproduces_constructed_tallies(self):
        # 88 events (58 landslide + 30 fire), spaced far apart; registry built
        # so exactly 24 landslide + 3 fire events align with EMDAT entries.
        base = D(2001, 1, 1)
        landslide = [
            make_event("landslide", base + datetime.timedelta(days=40 * i))
            for i in range(58)
        ]
        fire = [
            make_event("fire", base + datetime.timedelta(days=40 * i + 20))
            for i in range(30)
        ]
        records = [
            make_record(f"em-l{i}", "landslide", landslide[i].start_date - datetime.timedelta(days=i % 6))
            for i in range(24)
        ] + [
            make_record(f"em-f{i}", "fire", fire[i].start_date - datetime.timedelta(days=i % 6))
            for i in range(3)
        ] + [
            # entries that never match: wrong side of the window
            make_record(f"em-x{i}", "landslide", landslide[30 + i].start_date + datetime.timedelta(days=1))
            for i in range(10)
        ]
        report = align_events(landslide + fire, records, 5)
        summary = alignment_summary(report, 88)
        assert summary["by_source"]["EMDAT"]["aligned_events_by_hazard"] == {
            "fire": 3,
            "landslide": 24,
        }
        assert summary["by_source"]["EMDAT"]["aligned_events_total"] == 27
        assert summary["events_aligned_any_source"] == 27
        assert summary["aligned_fraction"] == pytest.approx(27 / 88)
        assert summary["by_source"]["EMDAT"]["unmatched_records"] == 10
