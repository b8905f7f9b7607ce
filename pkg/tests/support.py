"""Shared builders and independent oracles for the test suite.

The oracles here are deliberately written in a different style than the
library (run-compression scans, greedy list checks, all-pairs loops) so
they stay independent of the code paths they verify.
"""

from __future__ import annotations

import datetime

import numpy as np

from attn_peaks import CountSeries, Document, NewsEvent

DAY0 = datetime.date(2000, 1, 1)


def make_series(values, hazard: str = "landslide", start: datetime.date = DAY0) -> CountSeries:
    values = np.asarray(values, dtype=np.int64)
    return CountSeries(
        start=start,
        end=start + datetime.timedelta(days=len(values) - 1),
        counts=values,
        hazard=hazard,
    )


def make_doc(
    doc_id: str,
    day: datetime.date,
    hazard: str = "landslide",
    outlet: str = "Blatt 1",
    text_type: str = "Genre 1",
    text: str = "Erdrutsch in Brasilien",
    text_key: str | None = None,
) -> Document:
    return Document(
        id=doc_id,
        date=day,
        outlet=outlet,
        text_type=text_type,
        hazard=hazard,
        text=text,
        text_key=text_key if text_key is not None else f"key-{doc_id}",
    )


def docs_matching_series(series: CountSeries, outlet_pool: int = 5, genre_pool: int = 3):
    """One document per count unit, so characterize() sees a consistent corpus."""
    docs = []
    n = 0
    for offset, count in enumerate(series.counts):
        day = series.start + datetime.timedelta(days=offset)
        for _ in range(int(count)):
            docs.append(
                make_doc(
                    f"{series.hazard}-{n:05d}",
                    day,
                    hazard=series.hazard,
                    outlet=f"Blatt {n % outlet_pool + 1}",
                    text_type=f"Genre {n % genre_pool + 1}",
                )
            )
            n += 1
    return docs


def oracle_peaks(values, min_height: int, min_distance: int) -> list[int]:
    """Brute-force peak oracle.

    Enumerates strict and plateau maxima by compressing equal-value runs,
    then greedily keeps them in decreasing-count order (later index wins
    ties) subject to the minimum-distance rule.
    """
    x = list(values)
    n = len(x)
    candidates = []
    i = 0
    while i < n:
        j = i
        while j + 1 < n and x[j + 1] == x[i]:
            j += 1
        left_is_lower = i > 0 and x[i - 1] < x[i]
        right_is_lower = j < n - 1 and x[j + 1] < x[i]
        if left_is_lower and right_is_lower:
            candidates.append((i + j) // 2)
        i = j + 1
    kept: list[int] = []
    for c in sorted(candidates, key=lambda k: (x[k], k), reverse=True):
        if x[c] < min_height:
            continue
        if all(abs(c - k) >= min_distance for k in kept):
            kept.append(c)
    return sorted(kept)


def oracle_alignment_pairs(events: list[NewsEvent], records, window_days: int):
    """All-pairs predicate check, independent of align_events bookkeeping."""
    pairs = set()
    for event in events:
        for record in records:
            lag = (event.start_date - record.onset_date).days
            if event.hazard == record.hazard and 0 <= lag <= window_days:
                pairs.add((event.event_id, record.source, record.record_id, lag))
    return pairs


def write_small_corpus(root, with_registries: bool = True):
    """A tiny end-to-end fixture: config + documents + registries.

    Yields one landslide event (2020-01-10..12, peak on the 11th) and one
    fire event (2020-02-05); one document is dropped by the country filter.
    Returns the config path.
    """
    rows = [
        "id,date,outlet,text_type,hazard,text",
        "L1,2020-01-10,Blatt 1,Bericht,landslide,Erdrutsch in Brasilien A",
        "L2,2020-01-11,Blatt 1,Bericht,landslide,Erdrutsch in Brasilien B",
        "L3,2020-01-11,Blatt 2,Meldung,landslide,Erdrutsch in Brasilien C",
        "L4,2020-01-11,Blatt 3,Bericht,landslide,Erdrutsch in Brasilien D",
        "L5,2020-01-12,Blatt 2,Bericht,landslide,Erdrutsch in Brasilien E",
        "LX,2020-01-11,Blatt 4,Bericht,landslide,Brasilien und Peru",
        "F1,2020-02-05,Blatt 1,Bericht,fire,Feuer in Brasilien A",
        "F2,2020-02-05,Blatt 5,Meldung,fire,Feuer in Brasilien B",
    ]
    (root / "documents.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    config_lines = [
        "[corpus]",
        "documents = documents.csv",
        "format = csv",
        "hazards = landslide, fire",
        "",
        "[range]",
        "start = 2020-01-01",
        "end = 2020-12-31",
        "",
        "[peaks]",
        "min_height = 2",
        "min_distance = 7",
        "",
        "[output]",
        "dir = out",
    ]
    if with_registries:
        (root / "emdat.csv").write_text(
            "record_id,source,raw_type,onset_date,location,status\n"
            'EM-1,EMDAT,"Mass movement (wet)",2020-01-09,Rio de Janeiro,\n'
            "EM-2,EMDAT,Wildfire,2019-06-01,Acre,\n",
            encoding="utf-8",
        )
        config_lines += ["", "[align]", "window_days = 5", "emdat = emdat.csv"]
    config_path = root / "config.ini"
    config_path.write_text("\n".join(config_lines) + "\n", encoding="utf-8")
    return config_path


def random_series(rng: np.random.Generator, max_len: int = 400, max_value: int = 10):
    length = int(rng.integers(1, max_len + 1))
    # Mostly-sparse draws so zero-separated bursts dominate, as in real data.
    values = rng.integers(0, max_value + 1, size=length)
    mask = rng.random(length) < 0.55
    values[mask] = 0
    return make_series(values)
