"""codelex: dictionary-enriched interface metadata and semantic matching.

Parse method declarations out of Java or WSDL files, attach standard
dictionary definitions to the extracted keywords, save the result as a
portable XML metadata script, and use those scripts to match and rank
candidate services against a request.
"""

from .errors import (
    CodelexError,
    ConfigError,
    FormatError,
    InvalidIdentifier,
    InvalidRequest,
    ParseError,
    ProviderUnavailable,
    SchemaError,
    UnknownProject,
    UnknownProvider,
    UnknownTarget,
    UnsupportedFileType,
    UnsupportedLanguage,
)
from .tokenizer import tokenize
from .interface_parser import (
    InterfaceModel,
    MethodDecl,
    ParameterDecl,
    SourceType,
    detect_source_type,
    extract_keywords,
    parse_file,
    parse_java,
    parse_source,
    parse_wsdl,
)
from .dictionary import (
    DefinitionRecord,
    DictionaryGateway,
    LocalDictionary,
    ProviderConfig,
    default_providers,
    load_local_dictionary,
    load_provider_config,
)
from .metadata import AnnotationTarget, KeywordAnnotation, MetadataScript, MethodEntry
from .reader import MetadataReader, MethodMetadata
from .matcher import (
    DEFAULT_CONFIG,
    ConceptMatch,
    ConceptRequirement,
    MatchKind,
    MatchReport,
    MatchRequest,
    MatcherConfig,
    concept_match,
    definition_similarity,
    definition_tokens,
    levenshtein,
    map_concepts,
    rank_services,
    token_similarity,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotationTarget",
    "CodelexError",
    "ConceptMatch",
    "ConceptRequirement",
    "ConfigError",
    "DEFAULT_CONFIG",
    "DefinitionRecord",
    "DictionaryGateway",
    "FormatError",
    "InterfaceModel",
    "InvalidIdentifier",
    "InvalidRequest",
    "KeywordAnnotation",
    "LocalDictionary",
    "MatchKind",
    "MatchReport",
    "MatchRequest",
    "MatcherConfig",
    "MetadataReader",
    "MetadataScript",
    "MethodDecl",
    "MethodEntry",
    "MethodMetadata",
    "ParameterDecl",
    "ParseError",
    "ProviderConfig",
    "ProviderUnavailable",
    "SchemaError",
    "SourceType",
    "UnknownProject",
    "UnknownProvider",
    "UnknownTarget",
    "UnsupportedFileType",
    "UnsupportedLanguage",
    "concept_match",
    "default_providers",
    "definition_similarity",
    "definition_tokens",
    "detect_source_type",
    "extract_keywords",
    "levenshtein",
    "load_local_dictionary",
    "load_provider_config",
    "map_concepts",
    "parse_file",
    "parse_java",
    "parse_source",
    "parse_wsdl",
    "rank_services",
    "token_similarity",
    "tokenize",
]
