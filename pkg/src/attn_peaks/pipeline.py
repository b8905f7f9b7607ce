"""End-to-end pipeline: configuration, stage orchestration, artifact writers.

A run loads documents, applies the single-country filter, builds one count
series per hazard, detects and segments news events, computes the event
measures and their distribution summaries, aligns events against the
configured disaster registries and writes one report per stage.

Outputs are data-only (CSV / JSON) and byte-stable: rows and keys are
canonically ordered, no timestamps are embedded, and reruns on identical
inputs reproduce every artifact exactly. Files are written to a temporary
directory first and moved into place only when the whole run succeeded.

Configuration is a flat INI file; every key has a default except the input
paths, and every CLI flag overrides its config key::

    [corpus]
    documents = documents.csv
    format = csv
    hazards = landslide, fire

    [range]
    start = 2000-01-01
    end = 2024-12-31

    [gazetteer]
    path =            ; empty -> packaged German country list
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
    Mass movement (wet) = landslide

    [output]
    dir = out
"""

from __future__ import annotations

import configparser
import datetime
import hashlib
import json
import os
import shutil
import tempfile
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from . import align as align_mod
from .align import DEFAULT_S2ID_ACCEPT, DEFAULT_TYPE_MAP, IGNORE, AlignmentReport, RegistryLoad
from .errors import AttnPeaksError, ConsistencyError, InputError
from .ingest import (
    DEFAULT_HAZARDS,
    CorpusStats,
    CountSeries,
    Document,
    build_count_series,
    corpus_stats,
    filter_single_country,
    load_documents,
    load_gazetteer,
)
from .measures import MEASURE_COLUMNS, MeasureSet, measure_events, summarize
from .peaks import NewsEvent, PeakParams, detect_events

COMMANDS = ("ingest", "detect", "measure", "align", "report", "run")

_MEASURES_HEADER = ("hazard", "event_id", "peak_date") + MEASURE_COLUMNS


@dataclass
class PipelineConfig:
    """Resolved run parameters. Input paths have no defaults; the rest do."""

    documents: Path | None = None
    doc_format: str = "csv"
    start: datetime.date = datetime.date(2000, 1, 1)
    end: datetime.date = datetime.date(2024, 12, 31)
    hazards: tuple[str, ...] = DEFAULT_HAZARDS
    run_hazards: tuple[str, ...] = ()  # empty -> all of `hazards`
    gazetteer: Path | None = None  # None -> packaged default list
    target: str = "Brasilien"
    min_height: int = 2
    min_distance: int = 7
    window_days: int = 5
    registries: tuple[tuple[str, Path], ...] = ()
    type_map: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_TYPE_MAP))
    s2id_accept: tuple[str, ...] = DEFAULT_S2ID_ACCEPT
    out_dir: Path = Path("out")

    @property
    def active_hazards(self) -> tuple[str, ...]:
        return self.run_hazards or self.hazards


def _split_list(raw: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in raw.split(",") if part.strip())


def load_config(path: Path | str) -> PipelineConfig:
    """Parse an INI config file into a :class:`PipelineConfig`."""
    path = Path(path)
    if not path.is_file():
        raise InputError(f"config file not found: {path}")
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=(";",)
    )
    parser.optionxform = str  # type: ignore[assignment]  # keep type-map key case
    try:
        parser.read(path, encoding="utf-8")
    except configparser.Error as exc:
        raise InputError(f"config file {path} is malformed: {exc}") from None

    config = PipelineConfig()
    base = path.parent

    def _path(raw: str) -> Path:
        p = Path(raw)
        return p if p.is_absolute() else base / p

    def _get(section: str, option: str) -> str | None:
        value = parser.get(section, option, fallback=None)
        return value.strip() if value is not None and value.strip() else None

    def _get_int(section: str, option: str, current: int) -> int:
        raw = _get(section, option)
        if raw is None:
            return current
        try:
            return int(raw)
        except ValueError:
            raise InputError(f"config [{section}] {option} must be an integer: {raw!r}") from None

    def _get_date(section: str, option: str, current: datetime.date) -> datetime.date:
        raw = _get(section, option)
        if raw is None:
            return current
        try:
            return datetime.date.fromisoformat(raw)
        except ValueError:
            raise InputError(f"config [{section}] {option} is not a date: {raw!r}") from None

    known = {
        "corpus": {"documents", "format", "hazards"},
        "range": {"start", "end"},
        "gazetteer": {"path", "target"},
        "peaks": {"min_height", "min_distance"},
        "align": {"window_days", "emdat", "s2id", "other", "s2id_accept"},
        "type_map": None,
        "output": {"dir"},
    }
    for section in parser.sections():
        if section not in known:
            raise InputError(f"config file {path} has an unknown section [{section}]")
        allowed = known[section]
        if allowed is not None:
            unknown = sorted(set(parser.options(section)) - allowed)
            if unknown:
                raise InputError(
                    f"config [{section}] has an unknown key {unknown[0]!r}"
                )

    if raw := _get("corpus", "documents"):
        config.documents = _path(raw)
    if raw := _get("corpus", "format"):
        if raw not in ("csv", "jsonl"):
            raise InputError(f"config [corpus] format must be csv or jsonl: {raw!r}")
        config.doc_format = raw
    if raw := _get("corpus", "hazards"):
        config.hazards = _split_list(raw)
    config.start = _get_date("range", "start", config.start)
    config.end = _get_date("range", "end", config.end)
    if raw := _get("gazetteer", "path"):
        config.gazetteer = _path(raw)
    if raw := _get("gazetteer", "target"):
        config.target = raw
    config.min_height = _get_int("peaks", "min_height", config.min_height)
    config.min_distance = _get_int("peaks", "min_distance", config.min_distance)
    config.window_days = _get_int("align", "window_days", config.window_days)
    registries = []
    for source, option in (("EMDAT", "emdat"), ("S2ID", "s2id"), ("other", "other")):
        if raw := _get("align", option):
            registries.append((source, _path(raw)))
    config.registries = tuple(registries)
    if raw := _get("align", "s2id_accept"):
        config.s2id_accept = _split_list(raw)
    if parser.has_section("type_map"):
        for raw_type, hazard in parser.items("type_map"):
            config.type_map[raw_type] = hazard.strip()
    if raw := _get("output", "dir"):
        config.out_dir = _path(raw)
    return config


def validate_config(config: PipelineConfig) -> None:
    """Check ranges, labels and referenced files before any stage runs."""
    if config.start > config.end:
        raise InputError(f"date range is not well-ordered: {config.start} > {config.end}")
    if config.min_height < 1:
        raise InputError(f"min_height must be >= 1, got {config.min_height}")
    if config.min_distance < 1:
        raise InputError(f"min_distance must be >= 1, got {config.min_distance}")
    if config.window_days < 0:
        raise InputError(f"window_days must be >= 0, got {config.window_days}")
    if not config.hazards:
        raise InputError("no hazards configured")
    unknown = [h for h in config.run_hazards if h not in config.hazards]
    if unknown:
        raise InputError(
            f"--hazard {unknown[0]!r} is not in the configured vocabulary "
            f"{', '.join(config.hazards)}"
        )
    if config.doc_format not in ("csv", "jsonl"):
        raise InputError(f"unknown document format {config.doc_format!r}")
    if config.documents is None:
        raise InputError("no documents file configured (set [corpus] documents or --documents)")
    if not Path(config.documents).is_file():
        raise InputError(f"documents file not found: {config.documents}")
    if config.gazetteer is not None and not Path(config.gazetteer).is_file():
        raise InputError(f"gazetteer file not found: {config.gazetteer}")
    for source, reg_path in config.registries:
        if not Path(reg_path).is_file():
            raise InputError(f"registry file not found ({source}): {reg_path}")
    bad = sorted(
        {v for v in config.type_map.values() if v != IGNORE and v not in config.hazards}
    )
    if bad:
        raise InputError(
            f"type map target {bad[0]!r} is neither a configured hazard nor {IGNORE!r}"
        )


@dataclass
class RunArtifacts:
    """Everything a run produced: written files plus the in-memory results."""

    out_dir: Path
    files: dict[str, Path]
    series: dict[str, CountSeries]
    stats: dict[str, CorpusStats]
    events: dict[str, list[NewsEvent]]
    measures: dict[str, list[MeasureSet]]
    summaries: dict | None
    alignment: AlignmentReport | None
    registry_loads: dict[str, RegistryLoad]
    report: dict | None


@contextmanager
def _stage(name: str):
    """Tag any pipeline error with the stage it happened in."""
    try:
        yield
    except AttnPeaksError as exc:
        raise type(exc)(f"{name}: {exc}") from exc


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _write_json(path: Path, obj) -> None:
    path.write_text(
        json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )


def emit_timeseries(series: CountSeries, events: list[NewsEvent], path: Path | str) -> Path:
    """Write the plot-ready CSV ``date,count,is_event_day,is_peak``.

    One row per calendar day in the series range; flags are 0/1 and the
    count column sums to the series total.
    """
    path = Path(path)
    event_days = {day for event in events for day, _ in event.day_counts}
    peak_days = {event.peak_date for event in events}
    lines = ["date,count,is_event_day,is_peak"]
    day = series.start
    one_day = datetime.timedelta(days=1)
    for count in series.counts:
        lines.append(
            f"{day.isoformat()},{int(count)},"
            f"{1 if day in event_days else 0},{1 if day in peak_days else 0}"
        )
        day += one_day
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _write_events_jsonl(path: Path, events_by_hazard: dict[str, list[NewsEvent]]) -> None:
    lines = []
    for hazard, events in events_by_hazard.items():
        for event in events:
            record = {
                "hazard": hazard,
                "peak_date": event.peak_date.isoformat(),
                "start_date": event.start_date.isoformat(),
                "end_date": event.end_date.isoformat(),
                "days": [
                    {"date": day.isoformat(), "count": count}
                    for day, count in event.day_counts
                ],
            }
            lines.append(json.dumps(record, ensure_ascii=False, separators=(",", ":")))
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def _write_measures_csv(path: Path, measures_by_hazard: dict[str, list[MeasureSet]]) -> None:
    lines = [",".join(_MEASURES_HEADER)]
    for hazard, measures in measures_by_hazard.items():
        for m in measures:
            row = [hazard, m.event_id, m.peak_date.isoformat()]
            for column in MEASURE_COLUMNS:
                value = getattr(m, column)
                row.append("" if value is None else str(value))
            lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _boxstats_json(stats) -> dict:
    return {
        "median": stats.median,
        "q1": stats.q1,
        "q3": stats.q3,
        "whisker_low": stats.whisker_low,
        "whisker_high": stats.whisker_high,
        "outliers": stats.outliers,
        "n": stats.n,
    }


def _summaries(measures_by_hazard: dict[str, list[MeasureSet]]) -> dict:
    out: dict = {}
    for hazard, measures in measures_by_hazard.items():
        per_measure: dict = {}
        for column in MEASURE_COLUMNS:
            values = [getattr(m, column) for m in measures]
            values = [v for v in values if v is not None]
            per_measure[column] = _boxstats_json(summarize(values)) if values else None
        out[hazard] = {"n_events": len(measures), "measures": per_measure}
    return out


def _corpus_stats_json(stats: dict[str, CorpusStats]) -> dict:
    return {
        hazard: {
            "n_articles": s.n_articles,
            "n_text_types": s.n_text_types,
            "n_genres": s.n_genres,
            "daily_max": s.daily_max,
            "n_active_days": s.n_active_days,
            "active_mean": s.active_mean,
            "active_std": s.active_std,
            "n_outlets": s.n_outlets,
        }
        for hazard, s in stats.items()
    }


def _alignment_json(
    report: AlignmentReport, registry_loads: dict[str, RegistryLoad]
) -> dict:
    return {
        "window_days": report.window_days,
        "registries": {
            source: {
                "records": len(load.records),
                "ignored_by_type": load.n_ignored_by_type,
                "dropped_by_status": load.n_dropped_by_status,
            }
            for source, load in registry_loads.items()
        },
        "pairs": [
            {
                "event_id": p.event_id,
                "record_id": p.record_id,
                "source": p.source,
                "hazard": p.hazard,
                "lag_days": p.lag_days,
            }
            for p in report.pairs
        ],
        "aligned_events_by_source": report.aligned_by_source,
        "unmatched_events": report.unmatched_events,
        "unmatched_records": [
            {"source": source, "record_id": record_id}
            for source, record_id in report.unmatched_records
        ],
    }


def _manifest(config: PipelineConfig, command: str) -> dict:
    from . import __version__

    inputs: dict[str, dict] = {}

    def _add(role: str, path: Path | None) -> None:
        if path is not None:
            inputs[role] = {"path": str(path), "sha256": _sha256(Path(path))}

    _add("documents", config.documents)
    gazetteer = config.gazetteer
    if gazetteer is None:
        from .ingest import default_gazetteer_path

        gazetteer = default_gazetteer_path()
    _add("gazetteer", gazetteer)
    for source, reg_path in config.registries:
        _add(f"registry_{source}", reg_path)
    return {
        "tool": "attn-peaks",
        "version": __version__,
        "command": command,
        "parameters": {
            "start": config.start.isoformat(),
            "end": config.end.isoformat(),
            "hazards": list(config.active_hazards),
            "doc_format": config.doc_format,
            "target": config.target,
            "min_height": config.min_height,
            "min_distance": config.min_distance,
            "window_days": config.window_days,
            "s2id_accept": list(config.s2id_accept),
            "type_map": dict(sorted(config.type_map.items())),
        },
        "inputs": inputs,
    }


def run_pipeline(config: PipelineConfig, command: str = "run") -> RunArtifacts:
    """Run the pipeline up to ``command`` and write that stage's artifacts.

    ``run`` executes every stage and writes all artifacts plus the run
    manifest. Any stage error aborts the run with a stage-tagged message;
    nothing is left behind in the output directory.
    """
    if command not in COMMANDS:
        raise InputError(f"unknown command {command!r}")
    with _stage("config"):
        validate_config(config)
    hazards = config.active_hazards
    params = PeakParams(min_height=config.min_height, min_distance=config.min_distance)

    with _stage("ingest"):
        gazetteer = load_gazetteer(config.gazetteer, target=config.target)
        raw_docs = load_documents(config.documents, config.doc_format, config.hazards)
        docs = filter_single_country(raw_docs, gazetteer)
        series: dict[str, CountSeries] = {}
        stats: dict[str, CorpusStats] = {}
        docs_by_hazard: dict[str, list[Document]] = {h: [] for h in hazards}
        for doc in docs:
            if doc.hazard in docs_by_hazard:
                docs_by_hazard[doc.hazard].append(doc)
        for hazard in hazards:
            series[hazard] = build_count_series(
                docs_by_hazard[hazard], hazard, config.start, config.end
            )
            stats[hazard] = corpus_stats(docs_by_hazard[hazard], series[hazard])

    events: dict[str, list[NewsEvent]] = {}
    measures: dict[str, list[MeasureSet]] = {}
    summaries: dict | None = None
    alignment: AlignmentReport | None = None
    registry_loads: dict[str, RegistryLoad] = {}
    report: dict | None = None
    want = COMMANDS.index(command)

    if want >= COMMANDS.index("detect"):
        with _stage("detect"):
            for hazard in hazards:
                events[hazard] = detect_events(series[hazard], params)
    if want >= COMMANDS.index("measure"):
        with _stage("measure"):
            for hazard in hazards:
                measures[hazard] = measure_events(events[hazard], docs_by_hazard[hazard])
            summaries = _summaries(measures)
    if want >= COMMANDS.index("align"):
        with _stage("align"):
            records = []
            for source, reg_path in config.registries:
                load = align_mod.load_registry(
                    reg_path, source, config.type_map, config.s2id_accept
                )
                registry_loads[source] = load
                records.extend(load.records)
            all_events = [e for hazard in hazards for e in events[hazard]]
            alignment = align_mod.align_events(all_events, records, config.window_days)
    if want >= COMMANDS.index("report"):
        with _stage("report"):
            report = {
                "range": {"start": config.start.isoformat(), "end": config.end.isoformat()},
                "hazards": list(hazards),
                "corpus": _corpus_stats_json(stats),
                "n_events": {hazard: len(events[hazard]) for hazard in hazards},
                "alignment": align_mod.alignment_summary(
                    alignment, sum(len(events[h]) for h in hazards)
                ),
            }

    with _stage("write"):
        files = _write_artifacts(
            config, command, hazards, series, stats, events, measures,
            summaries, alignment, registry_loads, report,
        )
    return RunArtifacts(
        out_dir=config.out_dir,
        files=files,
        series=series,
        stats=stats,
        events=events,
        measures=measures,
        summaries=summaries,
        alignment=alignment,
        registry_loads=registry_loads,
        report=report,
    )


def _write_artifacts(
    config: PipelineConfig,
    command: str,
    hazards: tuple[str, ...],
    series: dict[str, CountSeries],
    stats: dict[str, CorpusStats],
    events: dict[str, list[NewsEvent]],
    measures: dict[str, list[MeasureSet]],
    summaries: dict | None,
    alignment: AlignmentReport | None,
    registry_loads: dict[str, RegistryLoad],
    report: dict | None,
) -> dict[str, Path]:
    out_dir = Path(config.out_dir)
    out_dir.parent.mkdir(parents=True, exist_ok=True)
    tmp = Path(tempfile.mkdtemp(prefix=".attn-peaks-", dir=out_dir.parent))
    staged: list[str] = []

    def _stage_file(name: str) -> Path:
        staged.append(name)
        return tmp / name

    try:
        if command in ("ingest", "run"):
            _write_json(_stage_file("corpus_stats.json"), _corpus_stats_json(stats))
        if command in ("ingest", "detect", "run"):
            for hazard in hazards:
                emit_timeseries(
                    series[hazard],
                    events.get(hazard, []),
                    _stage_file(f"timeseries_{hazard}.csv"),
                )
        if command in ("detect", "run"):
            _write_events_jsonl(_stage_file("events.jsonl"), events)
        if command in ("measure", "run"):
            _write_measures_csv(_stage_file("measures.csv"), measures)
            _write_json(_stage_file("summaries.json"), summaries)
        if command in ("align", "run"):
            _write_json(
                _stage_file("alignment.json"), _alignment_json(alignment, registry_loads)
            )
        if command in ("report", "run"):
            _write_json(_stage_file("report.json"), report)
        if command == "run":
            _write_json(_stage_file("manifest.json"), _manifest(config, command))
        out_dir.mkdir(parents=True, exist_ok=True)
        files: dict[str, Path] = {}
        for name in staged:
            final = out_dir / name
            os.replace(tmp / name, final)
            files[name] = final
        return files
    finally:
        shutil.rmtree(tmp, ignore_errors=True)
