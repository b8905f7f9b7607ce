"""Disaster-registry loading and temporal alignment of news events.

Registry entries come from normalized CSV exports (global EM-DAT style or
national S2iD style); their native type labels are mapped onto the hazard
vocabulary through a user-editable type map. A news event aligns with a
registry entry when the hazards match and the entry's onset date falls on
the event's first news day or up to ``window_days`` before it. One event
can align with several entries that occur concurrently.
"""

from __future__ import annotations

import csv
import datetime
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InputError
from .peaks import NewsEvent

REGISTRY_COLUMNS = ("record_id", "source", "raw_type", "onset_date", "location", "status")

DEFAULT_WINDOW_DAYS = 5

# Default raw_type -> hazard mapping, keyed by EM-DAT type/subtype labels
# (mass-movement family, wildfires, technological fires). "ignore" drops the
# record; any raw_type absent from the map is an error so that registry
# filtering stays auditable.
DEFAULT_TYPE_MAP: dict[str, str] = {
    "Mass movement (wet)": "landslide",
    "Mass movement (dry)": "landslide",
    "Landslide": "landslide",
    "Landslide (wet)": "landslide",
    "Landslide (dry)": "landslide",
    "Mudslide": "landslide",
    "Avalanche": "landslide",
    "Avalanche (wet)": "landslide",
    "Avalanche (dry)": "landslide",
    "Rockfall": "landslide",
    "Rockfall (wet)": "landslide",
    "Rockfall (dry)": "landslide",
    "Sudden Subsidence (wet)": "landslide",
    "Sudden Subsidence (dry)": "landslide",
    "Wildfire": "fire",
    "Forest fire": "fire",
    "Land fire (Brush, Bush, Pasture)": "fire",
    "Fire": "fire",
    "Fire (Industrial)": "fire",
    "Fire (Miscellaneous)": "fire",
}

# National-registry entries are kept only in these recognition states.
DEFAULT_S2ID_ACCEPT = ("recognised",)

IGNORE = "ignore"


@dataclass(frozen=True, slots=True)
class DisasterRecord:
    """One registry entry after hazard mapping."""

    record_id: str
    source: str
    hazard: str
    onset_date: datetime.date
    location: str
    raw_type: str
    status: str


@dataclass
class RegistryLoad:
    """Records kept from one registry file, plus drop tallies."""

    records: list[DisasterRecord]
    n_ignored_by_type: int = 0
    n_dropped_by_status: int = 0


def load_registry(
    path: Path | str,
    source: str,
    type_map: dict[str, str] | None = None,
    status_accept: tuple[str, ...] = DEFAULT_S2ID_ACCEPT,
) -> RegistryLoad:
    """Load a normalized registry CSV and map its types onto hazards.

    ``source`` declares the registry (``EMDAT``, ``S2ID`` or another label);
    a non-empty ``source`` column in the file must agree with it. Records
    whose ``raw_type`` maps to ``"ignore"`` are dropped and counted. For
    S2ID, records whose ``status`` is not in ``status_accept`` (compared
    case-insensitively) are dropped and counted as well.
    """
    if not source:
        raise InputError("registry source must be a non-empty label")
    path = Path(path)
    if not path.is_file():
        raise InputError(f"registry file not found: {path}")
    mapping = DEFAULT_TYPE_MAP if type_map is None else type_map
    accepted_status = {s.strip().casefold() for s in status_accept}

    rows: list[tuple[int, dict[str, str]]] = []
    with path.open(newline="", encoding="utf-8-sig") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise InputError(f"registry file {path} is empty (header expected)") from None
        if header != list(REGISTRY_COLUMNS):
            raise InputError(
                f"unexpected registry header in {path}: {header!r} "
                f"(expected {','.join(REGISTRY_COLUMNS)})"
            )
        for row_number, row in enumerate(reader, start=1):
            if len(row) != len(REGISTRY_COLUMNS):
                raise InputError(
                    f"malformed row {row_number}: expected "
                    f"{len(REGISTRY_COLUMNS)} fields, got {len(row)}"
                )
            rows.append((row_number, dict(zip(REGISTRY_COLUMNS, row))))

    unmapped = sorted({v["raw_type"] for _, v in rows if v["raw_type"] not in mapping})
    if unmapped:
        raise InputError(
            f"registry {path} has raw_type labels missing from the type map: "
            + ", ".join(repr(u) for u in unmapped)
        )

    load = RegistryLoad(records=[])
    seen_ids: set[str] = set()
    for row_number, values in rows:
        if values["source"] and values["source"] != source:
            raise InputError(
                f"row {row_number} declares source {values['source']!r} "
                f"but the file was loaded as {source!r}"
            )
        record_id = values["record_id"]
        if not record_id:
            raise InputError(f"malformed row {row_number}: empty field 'record_id'")
        if record_id in seen_ids:
            raise InputError(f"duplicate record id {record_id!r} at row {row_number}")
        seen_ids.add(record_id)
        hazard = mapping[values["raw_type"]]
        if hazard == IGNORE:
            load.n_ignored_by_type += 1
            continue
        if source == "S2ID" and values["status"].strip().casefold() not in accepted_status:
            load.n_dropped_by_status += 1
            continue
        try:
            onset = datetime.date.fromisoformat(values["onset_date"])
        except ValueError:
            raise InputError(
                f"invalid date at row {row_number}: {values['onset_date']!r}"
            ) from None
        load.records.append(
            DisasterRecord(
                record_id=record_id,
                source=source,
                hazard=hazard,
                onset_date=onset,
                location=values["location"],
                raw_type=values["raw_type"],
                status=values["status"],
            )
        )
    return load


@dataclass(frozen=True)
class AlignmentPair:
    """One event-record match; lag is first news day minus onset, in days."""

    event_id: str
    record_id: str
    source: str
    hazard: str
    lag_days: int


@dataclass
class AlignmentReport:
    """All pairs plus the bookkeeping around them.

    ``aligned_by_source[source][hazard]`` counts events with at least one
    pair from that source (an event counts once per source). Unmatched
    records are ``(source, record_id)`` tuples.
    """

    window_days: int
    pairs: list[AlignmentPair] = field(default_factory=list)
    aligned_by_source: dict[str, dict[str, int]] = field(default_factory=dict)
    unmatched_events: list[str] = field(default_factory=list)
    unmatched_records: list[tuple[str, str]] = field(default_factory=list)


def align_events(
    events: list[NewsEvent],
    records: list[DisasterRecord],
    window_days: int = DEFAULT_WINDOW_DAYS,
) -> AlignmentReport:
    """Temporally align news events with registry records.

    A pair ``(event, record)`` is emitted iff the hazards match and
    ``start_date(event) - onset_date(record)`` is between 0 and
    ``window_days`` days inclusive:onsets after the first news day never
    align, since coverage follows the disaster. All qualifying pairs are
    emitted, so one event may align with several records.
    """
    if window_days < 0:
        raise ValueError(f"window_days must be >= 0, got {window_days}")
    pairs: list[AlignmentPair] = []
    matched_events: set[str] = set()
    matched_records: set[tuple[str, str]] = set()
    by_source_hazard: dict[str, dict[str, set[str]]] = {}
    for event in events:
        event_id = event.event_id
        for record in records:
            if record.hazard != event.hazard:
                continue
            lag = (event.start_date - record.onset_date).days
            if 0 <= lag <= window_days:
                pairs.append(
                    AlignmentPair(
                        event_id=event_id,
                        record_id=record.record_id,
                        source=record.source,
                        hazard=event.hazard,
                        lag_days=lag,
                    )
                )
                matched_events.add(event_id)
                matched_records.add((record.source, record.record_id))
                by_source_hazard.setdefault(record.source, {}).setdefault(
                    event.hazard, set()
                ).add(event_id)
    pairs.sort(key=lambda p: (p.event_id, p.source, p.record_id))
    return AlignmentReport(
        window_days=window_days,
        pairs=pairs,
        aligned_by_source={
            source: {hazard: len(ids) for hazard, ids in sorted(hazards.items())}
            for source, hazards in sorted(by_source_hazard.items())
        },
        unmatched_events=sorted(
            e.event_id for e in events if e.event_id not in matched_events
        ),
        unmatched_records=sorted(
            (r.source, r.record_id)
            for r in records
            if (r.source, r.record_id) not in matched_records
        ),
    )


def alignment_summary(report: AlignmentReport, n_events_total: int) -> dict:
    """Aggregate alignment tallies for the run report.

    The overall fraction counts events aligned to at least one source and
    is None when there are no events at all.
    """
    aligned_any = {p.event_id for p in report.pairs}
    by_source: dict[str, dict] = {}
    sources = set(report.aligned_by_source) | {s for s, _ in report.unmatched_records}
    sources |= {p.source for p in report.pairs}
    for source in sorted(sources):
        per_hazard = report.aligned_by_source.get(source, {})
        by_source[source] = {
            "aligned_events_by_hazard": dict(sorted(per_hazard.items())),
            "aligned_events_total": sum(per_hazard.values()),
            "unmatched_records": sum(1 for s, _ in report.unmatched_records if s == source),
        }
    return {
        "window_days": report.window_days,
        "n_events_total": n_events_total,
        "events_aligned_any_source": len(aligned_any),
        "aligned_fraction": (
            len(aligned_any) / n_events_total if n_events_total > 0 else None
        ),
        "by_source": by_source,
    }
