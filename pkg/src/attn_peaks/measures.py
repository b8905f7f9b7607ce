"""Per-event attention measures and distribution summaries.

Each news event is characterized by: the article count at its peak day,
the total article volume, the duration in days, the gap to the previous
event, the days from first article to peak, the days from peak to last
article, and the diversity of text content and outlets. Per hazard, the
event count completes the measure set. Distributions are summarized as
box-plot statistics with Tukey 1.5*IQR outlier fences.
"""

from __future__ import annotations

import datetime
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError
from .ingest import Document
from .peaks import NewsEvent

# Per-event measure columns, in emission order. days_since_last_peak is a
# secondary variant of days_since_last (peak-to-peak instead of gap between
# events); n_genres counts genre labels where n_text_types counts
# deduplicated text content.
MEASURE_COLUMNS = (
    "n_at_peak",
    "total_volume",
    "duration_days",
    "days_since_last",
    "days_to_peak",
    "days_to_fade",
    "n_text_types",
    "n_outlets",
    "n_genres",
    "days_since_last_peak",
)


@dataclass
class MeasureSet:
    """The measures of one news event."""

    event_id: str
    hazard: str
    peak_date: datetime.date
    n_at_peak: int
    total_volume: int
    duration_days: int
    days_since_last: int | None
    days_to_peak: int
    days_to_fade: int
    n_text_types: int
    n_outlets: int
    n_genres: int
    days_since_last_peak: int | None


@dataclass
class BoxStats:
    """Box-plot summary: quartiles, whiskers, outliers.

    Quartiles use linear interpolation between order statistics; whiskers
    sit at the most extreme data points within 1.5*IQR of the quartiles and
    points beyond are outliers.
    """

    median: float
    q1: float
    q3: float
    whisker_low: float
    whisker_high: float
    outliers: list[float]
    n: int


def _docs_by_day(docs: list[Document], hazard: str) -> dict[datetime.date, list[Document]]:
    by_day: dict[datetime.date, list[Document]] = defaultdict(list)
    for doc in docs:
        if doc.hazard == hazard:
            by_day[doc.date].append(doc)
    return by_day


def _characterize(
    event: NewsEvent, by_day: dict[datetime.date, list[Document]]
) -> MeasureSet:
    text_keys: set[str] = set()
    outlets: set[str] = set()
    genres: set[str] = set()
    for day, count in event.day_counts:
        day_docs = by_day.get(day, ())
        if not day_docs:
            raise ConsistencyError(
                f"event {event.event_id} day {day} has no documents "
                "(corpus/series mismatch)"
            )
        if len(day_docs) != count:
            raise ConsistencyError(
                f"event {event.event_id} day {day} has {len(day_docs)} documents "
                f"but the series counts {count} (corpus/series mismatch)"
            )
        for doc in day_docs:
            text_keys.add(doc.text_key)
            outlets.add(doc.outlet)
            genres.add(doc.text_type)
    return MeasureSet(
        event_id=event.event_id,
        hazard=event.hazard,
        peak_date=event.peak_date,
        n_at_peak=event.peak_count,
        total_volume=event.total_volume,
        duration_days=event.duration_days,
        days_since_last=None,
        days_to_peak=(event.peak_date - event.start_date).days,
        days_to_fade=(event.end_date - event.peak_date).days,
        n_text_types=len(text_keys),
        n_outlets=len(outlets),
        n_genres=len(genres),
        days_since_last_peak=None,
    )


def characterize(event: NewsEvent, docs: list[Document]) -> MeasureSet:
    """Measures of one event, from the documents of its hazard.

    Every event day must be backed by exactly as many documents as the
    series counted there; a mismatch raises :class:`ConsistencyError`.
    The gap measures (``days_since_last``, ``days_since_last_peak``) need
    the event sequence and are filled by :func:`measure_events`.
    """
    return _characterize(event, _docs_by_day(docs, event.hazard))


def gaps(events: list[NewsEvent]) -> list[int | None]:
    """Days since the previous event, per event; None for the first.

    Measured from the end of the previous event to the start of the current
    one, so adjacent events have a gap of 1. Events must be sorted by start
    date, share one hazard and not overlap.
    """
    out: list[int | None] = []
    previous: NewsEvent | None = None
    for event in events:
        if previous is None:
            out.append(None)
        else:
            if event.hazard != previous.hazard:
                raise ConsistencyError(
                    f"gap between different hazards: {previous.hazard} vs {event.hazard}"
                )
            gap = (event.start_date - previous.end_date).days
            if gap <= 0:
                raise ConsistencyError(
                    f"events {previous.event_id} and {event.event_id} overlap "
                    "or are unsorted"
                )
            out.append(gap)
        previous = event
    return out


def peak_gaps(events: list[NewsEvent]) -> list[int | None]:
    """Peak-to-peak variant of :func:`gaps`."""
    out: list[int | None] = []
    previous: NewsEvent | None = None
    for event in events:
        out.append(None if previous is None else (event.peak_date - previous.peak_date).days)
        previous = event
    return out


def measure_events(events: list[NewsEvent], docs: list[Document]) -> list[MeasureSet]:
    """Characterize a hazard's event sequence, gap measures included.

    ``events`` must be the sorted, non-overlapping output of the detection
    stage for one hazard; ``docs`` the documents the series was built from.
    """
    if not events:
        return []
    by_day = _docs_by_day(docs, events[0].hazard)
    measures = [_characterize(e, by_day) for e in events]
    for measure, gap, peak_gap in zip(measures, gaps(events), peak_gaps(events)):
        measure.days_since_last = gap
        measure.days_since_last_peak = peak_gap
    return measures


def summarize(values: list[float]) -> BoxStats:
    """Box-plot statistics of a non-empty list of numbers.

    Nulls must be excluded beforehand. The summary is permutation-invariant
    and scales with the data.
    """
    if len(values) == 0:
        raise ValueError("summarize requires at least one value")
    arr = np.asarray(values, dtype=float)
    if np.isnan(arr).any():
        raise ValueError("null values must be excluded before summarizing")
    q1, median, q3 = (float(q) for q in np.percentile(arr, [25.0, 50.0, 75.0]))
    reach = 1.5 * (q3 - q1)
    inside = arr[(arr >= q1 - reach) & (arr <= q3 + reach)]
    outliers = sorted(float(v) for v in arr[(arr < q1 - reach) | (arr > q3 + reach)])
    return BoxStats(
        median=median,
        q1=q1,
        q3=q3,
        whisker_low=float(inside.min()),
        whisker_high=float(inside.max()),
        outliers=outliers,
        n=int(arr.size),
    )
