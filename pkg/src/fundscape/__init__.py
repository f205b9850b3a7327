"""fundscape: science-funding impact analytics.

From a heterogeneous corpus of grants, papers, and downstream impact
documents (patents, clinical trials, policy, news), compute per-grant
impact vectors and relative impact indices, lay out the interactive
impact landscape, train future-impact predictors, and serve it all over
HTTP.
"""

__version__ = "0.1.0"

from . import atlas, corpus, landscape, metrics, predictor, records, synth
from .corpus import (
    CorpusSnapshot,
    ingest_corpus,
    ingest_dir,
    linked_documents,
    load_snapshot,
    query_grants,
    save_snapshot,
)
from .errors import (
    IngestError,
    LayoutError,
    TrainingError,
    UnknownEntityError,
    UnsupportedCombinationError,
    ValidationError,
)
from .records import (
    CitationLink,
    GrantRecord,
    ImpactDocRecord,
    PaperRecord,
    ResearcherRecord,
    YearWindow,
)
from .synth import SynthConfig, generate_synthetic_corpus

__all__ = [
    "CitationLink",
    "CorpusSnapshot",
    "GrantRecord",
    "ImpactDocRecord",
    "IngestError",
    "LayoutError",
    "PaperRecord",
    "ResearcherRecord",
    "SynthConfig",
    "TrainingError",
    "UnknownEntityError",
    "UnsupportedCombinationError",
    "ValidationError",
    "YearWindow",
    "atlas",
    "corpus",
    "generate_synthetic_corpus",
    "ingest_corpus",
    "ingest_dir",
    "landscape",
    "linked_documents",
    "load_snapshot",
    "metrics",
    "predictor",
    "query_grants",
    "records",
    "save_snapshot",
    "synth",
]
