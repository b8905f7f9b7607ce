"""attn-peaks: daily news-attention series, news-event segmentation, measures,
and temporal alignment against disaster registries."""

from .align import (
    DEFAULT_S2ID_ACCEPT,
    DEFAULT_TYPE_MAP,
    DEFAULT_WINDOW_DAYS,
    AlignmentPair,
    AlignmentReport,
    DisasterRecord,
    RegistryLoad,
    align_events,
    alignment_summary,
    load_registry,
)
from .errors import AttnPeaksError, ConsistencyError, InputError
from .ingest import (
    DEFAULT_HAZARDS,
    CorpusStats,
    CountSeries,
    Document,
    Gazetteer,
    build_count_series,
    corpus_stats,
    default_gazetteer_path,
    extract_country_mentions,
    filter_single_country,
    load_documents,
    load_gazetteer,
    text_digest,
)
from .measures import (
    MEASURE_COLUMNS,
    BoxStats,
    MeasureSet,
    characterize,
    gaps,
    measure_events,
    peak_gaps,
    summarize,
)
from .peaks import (
    NewsEvent,
    PeakParams,
    detect_events,
    detect_peaks,
    enforce_constraints,
    local_maxima,
    segment_events,
)
from .pipeline import (
    PipelineConfig,
    RunArtifacts,
    emit_timeseries,
    load_config,
    run_pipeline,
    validate_config,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentPair",
    "AlignmentReport",
    "AttnPeaksError",
    "BoxStats",
    "ConsistencyError",
    "CorpusStats",
    "CountSeries",
    "DEFAULT_HAZARDS",
    "DEFAULT_S2ID_ACCEPT",
    "DEFAULT_TYPE_MAP",
    "DEFAULT_WINDOW_DAYS",
    "DisasterRecord",
    "Document",
    "Gazetteer",
    "InputError",
    "MEASURE_COLUMNS",
    "MeasureSet",
    "NewsEvent",
    "PeakParams",
    "PipelineConfig",
    "RegistryLoad",
    "RunArtifacts",
    "align_events",
    "alignment_summary",
    "build_count_series",
    "characterize",
    "corpus_stats",
    "default_gazetteer_path",
    "detect_events",
    "detect_peaks",
    "emit_timeseries",
    "enforce_constraints",
    "extract_country_mentions",
    "filter_single_country",
    "gaps",
    "load_config",
    "load_documents",
    "load_gazetteer",
    "load_registry",
    "local_maxima",
    "measure_events",
    "peak_gaps",
    "run_pipeline",
    "segment_events",
    "summarize",
    "text_digest",
    "validate_config",
]
