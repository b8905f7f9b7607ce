"""Constrained peak detection and news-event segmentation.

Peaks are local maxima of the daily count series that clear an inclusive
height threshold and survive a minimum-distance pruning. Each surviving
peak is extended over its contiguous run of active days (count > 0) to
form one news event, bounded by zero-count days. When several surviving
peaks share one active run, the run is split between consecutive peaks at
the day with the smallest count strictly between them.

All functions are pure and deterministic; per-hazard detections can run
concurrently without coordination.
"""

from __future__ import annotations

import datetime
from bisect import bisect_left, insort
from dataclasses import dataclass

from .ingest import CountSeries


@dataclass(frozen=True)
class PeakParams:
    """Detection constraints.

    ``min_height`` is an inclusive threshold on the count at the peak day
    (the default of 2 excludes single-article peaks only). ``min_distance``
    removes the lower of two peaks strictly closer than this many days.
    """

    min_height: int = 2
    min_distance: int = 7

    def __post_init__(self) -> None:
        if self.min_height < 1:
            raise ValueError(f"min_height must be >= 1, got {self.min_height}")
        if self.min_distance < 1:
            raise ValueError(f"min_distance must be >= 1, got {self.min_distance}")


@dataclass(frozen=True)
class NewsEvent:
    """One attention burst: a peak day plus its contiguous active neighbours."""

    hazard: str
    peak_date: datetime.date
    start_date: datetime.date
    end_date: datetime.date
    day_counts: tuple[tuple[datetime.date, int], ...]

    @property
    def event_id(self) -> str:
        return f"{self.hazard}-{self.peak_date.isoformat()}"

    @property
    def duration_days(self) -> int:
        return (self.end_date - self.start_date).days + 1

    @property
    def total_volume(self) -> int:
        return sum(count for _, count in self.day_counts)

    @property
    def peak_count(self) -> int:
        return dict(self.day_counts)[self.peak_date]


def local_maxima(series: CountSeries) -> list[int]:
    """Indices of local maxima, ascending.

    An index qualifies when its count is strictly greater than the nearest
    differing neighbour on each side. A flat plateau of equal values yields
    one candidate at its midpoint (rounded down). The signal is not padded,
    so the first and last day can never be candidates.
    """
    x = series.counts
    n = x.shape[0]
    maxima: list[int] = []
    i = 1
    while i < n - 1:
        if x[i - 1] < x[i]:
            ahead = i + 1
            while ahead < n - 1 and x[ahead] == x[i]:
                ahead += 1
            if x[ahead] < x[i]:
                # plateau spans i .. ahead-1
                maxima.append((i + ahead - 1) // 2)
                i = ahead
        i += 1
    return maxima


def enforce_constraints(
    candidates: list[int], series: CountSeries, params: PeakParams
) -> list[int]:
    """Apply the height and distance constraints to candidate maxima.

    Candidates below ``min_height`` are dropped first (the threshold is
    inclusive). Survivors are then processed in order of decreasing count,
    ties broken toward the later date, and kept only when no already-kept
    peak lies strictly closer than ``min_distance`` days. Returned ascending.
    """
    x = series.counts
    survivors = [i for i in candidates if x[i] >= params.min_height]
    order = sorted(survivors, key=lambda i: (x[i], i), reverse=True)
    kept: list[int] = []
    for i in order:
        pos = bisect_left(kept, i)
        if pos > 0 and i - kept[pos - 1] < params.min_distance:
            continue
        if pos < len(kept) and kept[pos] - i < params.min_distance:
            continue
        insort(kept, i)
    return kept


def detect_peaks(series: CountSeries, params: PeakParams | None = None) -> list[int]:
    """Surviving peak indices: ``local_maxima`` filtered by ``enforce_constraints``."""
    params = params or PeakParams()
    return enforce_constraints(local_maxima(series), series, params)


def segment_events(series: CountSeries, peaks: list[int]) -> list[NewsEvent]:
    """Grow each surviving peak into a news event over its active run.

    A peak is extended left and right over consecutive days with count > 0,
    stopping at the first zero-count day. When one contiguous run holds
    several peaks, it is split between consecutive peaks at the day with the
    minimum count strictly between them (earliest such day on ties); that
    day belongs to the earlier event. Events are disjoint and every event
    day is active.
    """
    x = series.counts
    n = x.shape[0]
    events: list[NewsEvent] = []
    k = 0
    while k < len(peaks):
        peak = peaks[k]
        run_start = peak
        while run_start > 0 and x[run_start - 1] > 0:
            run_start -= 1
        run_end = peak
        while run_end < n - 1 and x[run_end + 1] > 0:
            run_end += 1
        group = [peak]
        k += 1
        while k < len(peaks) and peaks[k] <= run_end:
            group.append(peaks[k])
            k += 1
        segment_start = run_start
        for g, peak_index in enumerate(group):
            if g + 1 < len(group):
                cut = _interior_minimum(x, peak_index, group[g + 1])
            else:
                cut = run_end
            events.append(_make_event(series, peak_index, segment_start, cut))
            segment_start = cut + 1
    return events


def _interior_minimum(x, left_peak: int, right_peak: int) -> int:
    """Day of the smallest count strictly between two peaks (earliest on ties)."""
    if right_peak - left_peak < 2:
        return left_peak
    best = left_peak + 1
    for i in range(left_peak + 2, right_peak):
        if x[i] < x[best]:
            best = i
    return best


def _make_event(series: CountSeries, peak: int, start: int, end: int) -> NewsEvent:
    days = tuple(
        (series.day_at(i), int(series.counts[i])) for i in range(start, end + 1)
    )
    return NewsEvent(
        hazard=series.hazard,
        peak_date=series.day_at(peak),
        start_date=series.day_at(start),
        end_date=series.day_at(end),
        day_counts=days,
    )


def detect_events(series: CountSeries, params: PeakParams | None = None) -> list[NewsEvent]:
    """Full detection: constrained peaks segmented into news events."""
    params = params or PeakParams()
    return segment_events(series, detect_peaks(series, params))
