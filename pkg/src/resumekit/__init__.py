"""Resume annotation toolkit.

Loads a resume-domain ontology and a morphological lexicon, annotates
plain-text resumes by gazetteer lookup and pattern recognizers, exports
EUROPASS-shaped XML, scores annotation sets against gold standards with
partial credit, and ranks candidates against requirement profiles.
"""

__version__ = "0.1.0"

from resumekit.errors import (
    DocumentMismatchError,
    FileFormatError,
    InvalidBetaError,
    LayoutError,
    MissingGoldError,
    PosCodeError,
    ResumekitError,
    UnknownClassError,
    ValidationError,
)
from resumekit.ontology import (
    InstanceEntry,
    OntologyClass,
    OntologySchema,
    PropertyDef,
    effective_properties,
    instances_of,
    load_ontology,
    validate_ontology,
)
from resumekit.lexicon import Lexicon, LexiconEntry, load_lexicon, lookup
from resumekit.pipeline import (
    Annotation,
    SourceDocument,
    Token,
    annotate,
    filter_tokens,
    load_stopwords,
    match_gazetteer,
    read_annotations,
    recognize_patterns,
    split_sentences,
    tag_tokens,
    tokenize,
    write_annotations,
)
from resumekit.europass import EuropassResume, assemble, from_xml, to_xml
from resumekit.evaluator import (
    AlignedPair,
    DiffCounts,
    MetricSet,
    align,
    count,
    f_measure,
    metrics,
    per_class_report,
)
from resumekit.ranker import (
    RankedResume,
    Requirement,
    RequirementProfile,
    load_profile,
    rank,
    score_resume,
)

__all__ = [
    "Annotation",
    "AlignedPair",
    "DiffCounts",
    "DocumentMismatchError",
    "EuropassResume",
    "FileFormatError",
    "InstanceEntry",
    "InvalidBetaError",
    "LayoutError",
    "Lexicon",
    "LexiconEntry",
    "MetricSet",
    "MissingGoldError",
    "OntologyClass",
    "OntologySchema",
    "PosCodeError",
    "PropertyDef",
    "RankedResume",
    "Requirement",
    "RequirementProfile",
    "ResumekitError",
    "SourceDocument",
    "Token",
    "UnknownClassError",
    "ValidationError",
    "align",
    "annotate",
    "assemble",
    "count",
    "effective_properties",
    "f_measure",
    "filter_tokens",
    "from_xml",
    "instances_of",
    "load_lexicon",
    "load_ontology",
    "load_profile",
    "load_stopwords",
    "lookup",
    "match_gazetteer",
    "metrics",
    "per_class_report",
    "rank",
    "read_annotations",
    "recognize_patterns",
    "score_resume",
    "split_sentences",
    "tag_tokens",
    "to_xml",
    "tokenize",
    "validate_ontology",
    "write_annotations",
]
