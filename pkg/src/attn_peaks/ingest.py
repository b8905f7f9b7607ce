"""Corpus ingestion: document loading, country filtering, daily count series.

A document is one news item with a calendar date, an outlet, a genre label
(``text_type``), a hazard label and the body text. Documents are filtered
with a gazetteer heuristic that keeps only texts mentioning exactly one
configured target country and no other country name. The daily counts of
the surviving documents, per hazard, form the attention series that drives
peak detection.

File formats
------------
Documents: CSV with header ``id,date,outlet,text_type,hazard,text[,text_key]``
or JSON-lines with the same keys. UTF-8, dates ISO-8601 ``YYYY-MM-DD``.
``text_key`` is the identity key for deduplicated text content; when absent
or empty it defaults to a SHA-256 digest of the NFC-normalized body text.

Gazetteer: UTF-8 text, one country name per line; ``#`` starts a comment
line. Matching is case-insensitive after Unicode NFC normalization, on
whole tokens delimited by any non-letter character, so hyphenated and
multi-word names ("Saudi-Arabien", "Costa Rica") match as token sequences.
Declined or adjectival forms ("brasilianisch") are not matched.

All functions are pure; loaded corpora can be shared across threads.
"""

from __future__ import annotations

import csv
import datetime
import hashlib
import json
import re
import sys
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConsistencyError, InputError

DEFAULT_HAZARDS = ("landslide", "fire")

DOCUMENT_COLUMNS = ("id", "date", "outlet", "text_type", "hazard", "text")
OPTIONAL_DOCUMENT_COLUMNS = ("text_key",)

# Runs of Unicode letters; digits, underscore and punctuation all delimit.
_TOKEN_RE = re.compile(r"[^\W\d_]+")


def canonical_tokens(text: str) -> list[str]:
    """Casefolded letter tokens of NFC-normalized ``text``."""
    return [t.casefold() for t in _TOKEN_RE.findall(unicodedata.normalize("NFC", text))]


def text_digest(text: str) -> str:
    """Default text identity key: SHA-256 hex digest of the NFC-normalized body."""
    return hashlib.sha256(unicodedata.normalize("NFC", text).encode("utf-8")).hexdigest()


@dataclass(slots=True)
class Document:
    """One news item."""

    id: str
    date: datetime.date
    outlet: str
    text_type: str
    hazard: str
    text: str
    text_key: str


@dataclass
class Gazetteer:
    """Country-name lexicon with one designated target country.

    Entries are deduplicated after canonicalization; the stored spelling of
    the first occurrence wins. ``target`` may be given in any spelling that
    canonicalizes to an entry.
    """

    entries: tuple[str, ...]
    target: str
    _index: dict = field(init=False, repr=False)
    _target_entry: str = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.entries:
            raise InputError("gazetteer has no entries")
        index: dict[str, list[tuple[tuple[str, ...], str]]] = {}
        by_tokens: dict[tuple[str, ...], str] = {}
        kept: list[str] = []
        for entry in self.entries:
            tokens = tuple(canonical_tokens(entry))
            if not tokens:
                raise InputError(f"gazetteer entry {entry!r} contains no letters")
            if tokens in by_tokens:
                continue
            by_tokens[tokens] = entry
            kept.append(entry)
            index.setdefault(tokens[0], []).append((tokens, entry))
        self.entries = tuple(kept)
        self._index = index
        target_tokens = tuple(canonical_tokens(self.target))
        if target_tokens not in by_tokens:
            raise InputError(f"gazetteer target {self.target!r} is not a gazetteer entry")
        self._target_entry = by_tokens[target_tokens]

    @property
    def target_entry(self) -> str:
        """The stored entry spelling that the target canonicalizes to."""
        return self._target_entry


def default_gazetteer_path() -> Path:
    """Path of the German country-exonym list shipped with the package."""
    return Path(str(resources.files("attn_peaks").joinpath("data/countries_de.txt")))


def load_gazetteer(path: Path | str | None = None, target: str = "Brasilien") -> Gazetteer:
    """Load a gazetteer file (default: the shipped German exonym list).

    One country name per line; blank lines and lines starting with ``#``
    are skipped.
    """
    if path is None:
        path = default_gazetteer_path()
    path = Path(path)
    if not path.is_file():
        raise InputError(f"gazetteer file not found: {path}")
    entries = []
    for line in path.read_text(encoding="utf-8-sig").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        entries.append(line)
    return Gazetteer(entries=tuple(entries), target=target)


def extract_country_mentions(text: str, gazetteer: Gazetteer) -> set[str]:
    """Every gazetteer entry occurring in ``text`` as a whole token sequence."""
    tokens = canonical_tokens(text)
    found: set[str] = set()
    index = gazetteer._index
    for i, token in enumerate(tokens):
        for sequence, entry in index.get(token, ()):
            if len(sequence) == 1 or tuple(tokens[i : i + len(sequence)]) == sequence:
                found.add(entry)
    return found


def filter_single_country(docs: list[Document], gazetteer: Gazetteer) -> list[Document]:
    """Keep documents whose country mentions are exactly ``{target}``.

    Order is preserved; the output is always a subset of the input.
    """
    target = {gazetteer.target_entry}
    return [d for d in docs if extract_country_mentions(d.text, gazetteer) == target]


def _parse_date(value: str, row: int) -> datetime.date:
    try:
        return datetime.date.fromisoformat(value)
    except (TypeError, ValueError):
        raise InputError(f"invalid date at row {row}: {value!r}") from None


def _make_document(
    values: dict, row: int, hazards: tuple[str, ...], seen_ids: set[str]
) -> Document:
    doc_id = values["id"]
    if not doc_id:
        raise InputError(f"malformed row {row}: empty field 'id'")
    if doc_id in seen_ids:
        raise InputError(f"duplicate document id {doc_id!r} at row {row}")
    seen_ids.add(doc_id)
    hazard = values["hazard"]
    if hazard not in hazards:
        raise InputError(f"unknown hazard label {hazard!r} at row {row}")
    text = values["text"]
    text_key = values.get("text_key") or text_digest(text)
    return Document(
        id=doc_id,
        date=_parse_date(values["date"], row),
        outlet=sys.intern(values["outlet"]),
        text_type=sys.intern(values["text_type"]),
        hazard=sys.intern(hazard),
        text=text,
        text_key=text_key,
    )


def _load_documents_csv(path: Path, hazards: tuple[str, ...]) -> list[Document]:
    docs: list[Document] = []
    seen_ids: set[str] = set()
    with path.open(newline="", encoding="utf-8-sig") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise InputError(f"document file {path} is empty (header expected)") from None
        expected = list(DOCUMENT_COLUMNS)
        if header not in (expected, expected + list(OPTIONAL_DOCUMENT_COLUMNS)):
            raise InputError(
                f"unexpected document header in {path}: {header!r} "
                f"(expected {','.join(expected)}[,text_key])"
            )
        has_key = len(header) == len(expected) + 1
        for row_number, row in enumerate(reader, start=1):
            if len(row) != len(header):
                raise InputError(
                    f"malformed row {row_number}: expected {len(header)} fields, got {len(row)}"
                )
            values = dict(zip(header, row))
            if not has_key:
                values["text_key"] = ""
            docs.append(_make_document(values, row_number, hazards, seen_ids))
    return docs


def _load_documents_jsonl(path: Path, hazards: tuple[str, ...]) -> list[Document]:
    docs: list[Document] = []
    seen_ids: set[str] = set()
    allowed = set(DOCUMENT_COLUMNS) | set(OPTIONAL_DOCUMENT_COLUMNS)
    with path.open(encoding="utf-8") as handle:
        for row_number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"malformed row {row_number}: {exc}") from None
            if not isinstance(record, dict):
                raise InputError(f"malformed row {row_number}: expected a JSON object")
            unknown = sorted(set(record) - allowed)
            if unknown:
                raise InputError(f"malformed row {row_number}: unknown field {unknown[0]!r}")
            missing = [k for k in DOCUMENT_COLUMNS if k not in record]
            if missing:
                raise InputError(f"malformed row {row_number}: missing field {missing[0]!r}")
            values = {k: record.get(k, "") for k in allowed}
            for key, value in values.items():
                if not isinstance(value, str):
                    raise InputError(
                        f"malformed row {row_number}: field {key!r} must be a string"
                    )
            docs.append(_make_document(values, row_number, hazards, seen_ids))
    return docs


def load_documents(
    path: Path | str,
    format: str = "csv",
    hazards: tuple[str, ...] = DEFAULT_HAZARDS,
) -> list[Document]:
    """Load document records from a CSV or JSON-lines file.

    Rows are numbered from 1, excluding the CSV header. Every well-formed
    record is returned in file order; a malformed row, a duplicate ``id``
    or an unknown hazard label raises :class:`InputError`.
    """
    path = Path(path)
    if not path.is_file():
        raise InputError(f"document file not found: {path}")
    if format == "csv":
        return _load_documents_csv(path, tuple(hazards))
    if format == "jsonl":
        return _load_documents_jsonl(path, tuple(hazards))
    raise InputError(f"unknown document format {format!r} (expected csv or jsonl)")


class CountSeries:
    """Dense daily integer counts over a fixed calendar range, for one hazard.

    ``counts[i]`` is the article count on ``start + i days``; the array spans
    ``start`` .. ``end`` inclusive, leap days included.
    """

    __slots__ = ("start", "end", "counts", "hazard")

    def __init__(
        self, start: datetime.date, end: datetime.date, counts: np.ndarray, hazard: str
    ) -> None:
        if start > end:
            raise InputError(f"series range is not well-ordered: {start} > {end}")
        counts = np.asarray(counts, dtype=np.int64)
        expected = (end - start).days + 1
        if counts.ndim != 1 or counts.shape[0] != expected:
            raise ConsistencyError(
                f"count array length {counts.shape} does not match day span {expected}"
            )
        if (counts < 0).any():
            raise ConsistencyError("counts must be non-negative")
        self.start = start
        self.end = end
        self.counts = counts
        self.hazard = hazard

    @property
    def n_days(self) -> int:
        return self.counts.shape[0]

    def index_of(self, day: datetime.date) -> int:
        offset = (day - self.start).days
        if not 0 <= offset < self.n_days:
            raise IndexError(f"{day} outside series range {self.start}..{self.end}")
        return offset

    def day_at(self, index: int) -> datetime.date:
        if not 0 <= index < self.n_days:
            raise IndexError(f"index {index} outside series of {self.n_days} days")
        return self.start + datetime.timedelta(days=index)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CountSeries):
            return NotImplemented
        return (
            self.start == other.start
            and self.end == other.end
            and self.hazard == other.hazard
            and bool(np.array_equal(self.counts, other.counts))
        )

    def __repr__(self) -> str:
        return (
            f"CountSeries(hazard={self.hazard!r}, {self.start}..{self.end}, "
            f"total={int(self.counts.sum())})"
        )


def build_count_series(
    docs: list[Document],
    hazard: str,
    start: datetime.date,
    end: datetime.date,
) -> CountSeries:
    """Daily counts of ``hazard`` documents over ``start``..``end`` inclusive.

    Identical texts from different outlets count as separate observations.
    Any document dated outside the range is a hard error; silent truncation
    would corrupt the counts.
    """
    if start > end:
        raise InputError(f"series range is not well-ordered: {start} > {end}")
    n_days = (end - start).days + 1
    counts = np.zeros(n_days, dtype=np.int64)
    for doc in docs:
        if doc.date < start or doc.date > end:
            raise InputError(
                f"document {doc.id!r} dated {doc.date} is outside the series range "
                f"{start}..{end}"
            )
        if doc.hazard == hazard:
            counts[(doc.date - start).days] += 1
    return CountSeries(start=start, end=end, counts=counts, hazard=hazard)


@dataclass
class CorpusStats:
    """Descriptive statistics of one hazard's document sample and count series.

    ``n_text_types`` counts deduplicated text content (distinct ``text_key``);
    ``n_genres`` counts the source's genre labels (distinct ``text_type``).
    ``active_mean``/``active_std`` are computed over active days only (count
    greater than zero) and are None when there is no active day; the std is
    the population standard deviation.
    """

    n_articles: int
    n_text_types: int
    n_genres: int
    daily_max: int
    n_active_days: int
    active_mean: float | None
    active_std: float | None
    n_outlets: int


def corpus_stats(docs: list[Document], series: CountSeries) -> CorpusStats:
    """Compute :class:`CorpusStats` for documents and the series built from them."""
    if int(series.counts.sum()) != len(docs):
        raise ConsistencyError(
            f"series total {int(series.counts.sum())} does not match "
            f"document count {len(docs)}"
        )
    active = series.counts[series.counts > 0]
    n_active = int(active.size)
    return CorpusStats(
        n_articles=len(docs),
        n_text_types=len({d.text_key for d in docs}),
        n_genres=len({d.text_type for d in docs}),
        daily_max=int(series.counts.max(initial=0)),
        n_active_days=n_active,
        active_mean=float(active.mean()) if n_active else None,
        active_std=float(active.std()) if n_active else None,
        n_outlets=len({d.outlet for d in docs}),
    )
