#!/usr/bin/env python3
"""Regenerate the golden end-to-end fixture under tests/data/golden/.

The corpus is fully deterministic: six planted attention bursts (four
landslide, two fire), a handful of single-article noise days that must not
become events, and thirty documents the country filter must drop. The
registries plant six alignable records, one never-matching record, one
record ignored by the type map, one dropped by the recognition-status
filter and one with no nearby event.

The expected/ directory holds the artifacts of one full pipeline run over
the fixture. The acceptance test asserts hand-computed event, measure and
alignment values BEFORE comparing bytes against expected/, so regenerating
this directory cannot silently launder a behavior change: rerun this
script only after updating the hand-computed literals in
tests/test_acceptance.py.
"""

from __future__ import annotations

import csv
import shutil
import sys
from datetime import date, timedelta
from pathlib import Path

from attn_peaks import load_config, run_pipeline

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "data" / "golden"

# (hazard, first day, daily counts). Single-count days stay below the
# default peak height and must not produce events.
BURSTS = [
    ("landslide", date(2003, 4, 18), [1]),
    ("landslide", date(2005, 6, 10), [1]),
    ("fire", date(2008, 7, 7), [1, 1]),
    ("landslide", date(2009, 9, 9), [1]),
    ("fire", date(2010, 3, 3), [1]),
    ("landslide", date(2011, 1, 12), [4, 9, 28, 13, 5]),
    ("fire", date(2013, 1, 27), [14, 6]),
    ("landslide", date(2015, 11, 5), [4]),
    ("landslide", date(2019, 1, 25), [5, 16, 7]),
    ("fire", date(2019, 8, 20), [3, 18, 7, 3]),
    ("fire", date(2021, 12, 1), [1]),
    ("landslide", date(2022, 2, 15), [11, 4, 3]),
]

# Two documents of the 2015-11-05 burst share this exact text, so the burst
# has four articles but only three unique texts.
DUPLICATE_TEXT = "Erdrutsch in Brasilien nahe Petrópolis"

# Documents the filter must drop: the target plus a second country.
MULTI_COUNTRY = [
    ("landslide", date(2011, 1, 12), "Paraguay"),
    ("landslide", date(2011, 1, 14), "Peru"),
    ("landslide", date(2011, 1, 15), "Kolumbien"),
    ("fire", date(2013, 1, 27), "USA"),
    ("landslide", date(2015, 11, 5), "Frankreich"),
    ("landslide", date(2019, 1, 26), "Bolivien"),
    ("fire", date(2019, 8, 20), "Venezuela"),
    ("fire", date(2019, 8, 21), "Argentinien"),
    ("fire", date(2019, 8, 22), "Chile"),
    ("fire", date(2021, 12, 1), "Uruguay"),
    ("landslide", date(2022, 2, 15), "Peru"),
    ("fire", date(2004, 10, 10), "Peru"),
    ("landslide", date(2007, 3, 3), "Kolumbien"),
    ("landslide", date(2024, 6, 30), "Peru"),
]

# Documents that mention a different country only.
OTHER_COUNTRY = [
    ("landslide", date(2011, 1, 14), "Peru"),
    ("fire", date(2019, 8, 21), "Kolumbien"),
    ("landslide", date(2005, 5, 5), "Chile"),
    ("fire", date(2012, 12, 12), "Argentinien"),
    ("landslide", date(2019, 1, 25), "Peru"),
    ("fire", date(2013, 1, 28), "Chile"),
    ("landslide", date(2022, 2, 16), "Argentinien"),
    ("fire", date(2008, 7, 7), "Peru"),
    ("landslide", date(2016, 1, 1), "Kolumbien"),
]

# Documents with no country mention at all.
NO_COUNTRY = [
    ("landslide", date(2011, 1, 13)),
    ("fire", date(2019, 8, 23)),
    ("landslide", date(2003, 4, 18)),
    ("fire", date(2010, 3, 3)),
    ("landslide", date(2020, 9, 15)),
    ("fire", date(2018, 11, 11)),
    ("landslide", date(2015, 11, 5)),
]

EMDAT_ROWS = [
    ("EM-0001", "EMDAT", "Mass movement (wet)", "2011-01-11", "Rio de Janeiro (Serrana)", ""),
    ("EM-0002", "EMDAT", "Landslide", "2011-01-12", "Nova Friburgo", ""),
    ("EM-0003", "EMDAT", "Mass movement (wet)", "2019-01-20", "Minas Gerais", ""),
    ("EM-0004", "EMDAT", "Mass movement (wet)", "2019-01-19", "Minas Gerais", ""),
    ("EM-0005", "EMDAT", "Fire (Industrial)", "2013-01-27", "Santa Maria", ""),
    ("EM-0006", "EMDAT", "Epidemic", "2020-03-01", "Brasilien", ""),
]

S2ID_ROWS = [
    ("S2-0007", "S2ID", "Deslizamentos", "2022-02-15", "Petrópolis", "recognised"),
    ("S2-0008", "S2ID", "Incêndio florestal", "2019-08-16", "Amazonas", "recognised"),
    ("S2-0009", "S2ID", "Deslizamentos", "2015-11-03", "Mariana", "registered"),
    ("S2-0010", "S2ID", "Incêndio urbano", "2005-01-01", "Manaus", "recognised"),
]

CONFIG = """\
[corpus]
documents = documents.csv
format = csv
hazards = landslide, fire

[range]
start = 2000-01-01
end = 2024-12-31

[gazetteer]
target = Brasilien

[peaks]
min_height = 2
min_distance = 7

[align]
window_days = 5
emdat = emdat.csv
s2id = s2id.csv
s2id_accept = recognised

[type_map]
Epidemic = ignore
Deslizamentos = landslide
Incêndio florestal = fire
Incêndio urbano = fire

[output]
dir = out
"""


def build_documents() -> list[tuple]:
    rows = []
    counter = 0

    def next_id() -> str:
        nonlocal counter
        counter += 1
        return f"doc{counter:04d}"

    for hazard, first_day, counts in BURSTS:
        noun = "Erdrutsch" if hazard == "landslide" else "Waldbrände"
        burst_index = 0
        duplicate_burst = hazard == "landslide" and first_day == date(2015, 11, 5)
        for offset, count in enumerate(counts):
            day = first_day + timedelta(days=offset)
            for _ in range(count):
                doc_id = next_id()
                if duplicate_burst and burst_index in (1, 2):
                    text = DUPLICATE_TEXT
                else:
                    text = f"{noun} in Brasilien, Meldung {doc_id}"
                rows.append(
                    (
                        doc_id,
                        day.isoformat(),
                        f"Blatt {burst_index % 7 + 1}",
                        f"Genre {burst_index % 3 + 1}",
                        hazard,
                        text,
                    )
                )
                burst_index += 1
    for hazard, day, other in MULTI_COUNTRY:
        doc_id = next_id()
        rows.append(
            (
                doc_id,
                day.isoformat(),
                "Blatt 1",
                "Genre 1",
                hazard,
                f"Bericht aus Brasilien und {other}, Notiz {doc_id}",
            )
        )
    for hazard, day, other in OTHER_COUNTRY:
        doc_id = next_id()
        rows.append(
            (
                doc_id,
                day.isoformat(),
                "Blatt 2",
                "Genre 2",
                hazard,
                f"Unwetter in {other}, Notiz {doc_id}",
            )
        )
    for hazard, day in NO_COUNTRY:
        doc_id = next_id()
        rows.append(
            (
                doc_id,
                day.isoformat(),
                "Blatt 3",
                "Genre 3",
                hazard,
                f"Starkregen in den Bergen, Notiz {doc_id}",
            )
        )
    rows.sort(key=lambda r: (r[1], r[0]))
    return rows


def write_csv(path: Path, header: list[str], rows: list[tuple]) -> None:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def main() -> int:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    documents = build_documents()
    write_csv(
        GOLDEN_DIR / "documents.csv",
        ["id", "date", "outlet", "text_type", "hazard", "text"],
        documents,
    )
    write_csv(
        GOLDEN_DIR / "emdat.csv",
        ["record_id", "source", "raw_type", "onset_date", "location", "status"],
        EMDAT_ROWS,
    )
    write_csv(
        GOLDEN_DIR / "s2id.csv",
        ["record_id", "source", "raw_type", "onset_date", "location", "status"],
        S2ID_ROWS,
    )
    (GOLDEN_DIR / "config.ini").write_text(CONFIG, encoding="utf-8")

    expected = GOLDEN_DIR / "expected"
    if expected.exists():
        shutil.rmtree(expected)
    config = load_config(GOLDEN_DIR / "config.ini")
    config.out_dir = expected
    artifacts = run_pipeline(config, "run")
    # the manifest embeds absolute input paths; it is compared across runs
    # by the tests instead of being frozen here
    (expected / "manifest.json").unlink()
    print(f"wrote {len(documents)} documents and {len(artifacts.files) - 1} artifacts")
    for hazard, events in artifacts.events.items():
        print(f"  {hazard}: {len(events)} events")
    return 0


if __name__ == "__main__":
    sys.exit(main())
