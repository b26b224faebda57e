"""Match and rank candidate services against a set of requested concepts.

The decision procedure works on the enriched metadata scripts.  A request
concept can hit a service keyword three ways:

* directly, by string similarity between the two terms (normalized edit
  distance),
* by expansion, when the concept appears inside one of the keyword's stored
  dictionary definitions (or the keyword appears inside the request's
  desired definition), or
* not at all.

When the request also states a desired definition for a concept, the
definitions themselves are compared by word-set overlap, which is what
separates two services that both advertise "service" but mean different
things by it.  Per-service scores are the mean over all request concepts,
and candidates are ranked by that total.

All numeric knobs live in MatcherConfig; the shipped defaults are chosen so
that an exact keyword beats an expansion hit, and an expansion hit beats
near-miss spellings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidIdentifier, InvalidRequest
from .metadata import KeywordAnnotation, MetadataScript
from .tokenizer import tokenize

DEFAULT_STOPWORDS = frozenset(
    "a an the of for and or to in on at is are etc your i can that have their with by it".split()
)


@dataclass(frozen=True)
class MatcherConfig:
    """Scoring knobs, in one place so every reported number is reproducible.

    expansion_weight: name score granted when a concept is found inside a
        keyword's definition; strong evidence, but weaker than an exact match.
    name_weight: share of the combined score carried by the name match; the
        rest goes to definition agreement.  0.5 weighs them equally.
    mapping_threshold: minimum name score for map_concepts to report a pair.
    """

    expansion_weight: float = 0.9
    name_weight: float = 0.5
    mapping_threshold: float = 0.7
    stopwords: frozenset[str] = DEFAULT_STOPWORDS


DEFAULT_CONFIG = MatcherConfig()


class MatchKind(str, Enum):
    DIRECT = "direct"
    EXPANSION = "expansion"
    NONE = "none"


@dataclass(frozen=True)
class ConceptRequirement:
    concept: str
    desired_definition: str | None = None

    def __post_init__(self) -> None:
        if not self.concept:
            raise InvalidRequest("concept must be non-empty")


@dataclass(frozen=True)
class MatchRequest:
    requirements: tuple[ConceptRequirement, ...]

    def __post_init__(self) -> None:
        if not self.requirements:
            raise InvalidRequest("request has no concepts")
        folded = [r.concept.casefold() for r in self.requirements]
        if len(folded) != len(set(folded)):
            raise InvalidRequest("request concepts must be unique")


@dataclass(frozen=True)
class ConceptMatch:
    concept: str
    matched_keyword: str | None
    kind: MatchKind
    name_score: float
    definition_score: float | None
    combined_score: float


@dataclass(frozen=True)
class MatchReport:
    service_id: str
    per_concept: tuple[ConceptMatch, ...]
    total_score: float


# --- string similarity -------------------------------------------------------


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance on case-folded inputs."""
    a, b = a.casefold(), b.casefold()
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ch_a in enumerate(a, start=1):
        current = [i]
        for j, ch_b in enumerate(b, start=1):
            cost = 0 if ch_a == ch_b else 1
            current.append(min(
                previous[j] + 1,        # delete from a
                current[j - 1] + 1,     # insert into a
                previous[j - 1] + cost, # substitute
            ))
        previous = current
    return previous[-1]


def token_similarity(a: str, b: str) -> float:
    """1 minus the edit distance normalized by the longer length; in [0, 1]."""
    a, b = a.casefold(), b.casefold()
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


def definition_tokens(text: str, stopwords: frozenset[str] = DEFAULT_STOPWORDS) -> set[str]:
    """Case-folded word set of a definition, stopwords and digit runs dropped."""
    tokens = set()
    for word in _WORD_RE.findall(text):
        folded = word.casefold()
        if folded.isdigit() or folded in stopwords:
            continue
        tokens.add(folded)
    return tokens


def definition_similarity(
    a: str, b: str, stopwords: frozenset[str] = DEFAULT_STOPWORDS
) -> float:
    """Jaccard overlap of the two definitions' word sets; 0 when both are empty."""
    tokens_a = definition_tokens(a, stopwords)
    tokens_b = definition_tokens(b, stopwords)
    union = tokens_a | tokens_b
    if not union:
        return 0.0
    return len(tokens_a & tokens_b) / len(union)


# --- concept matching ---------------------------------------------------------


def _name_tokens(name: str) -> list[str]:
    try:
        return tokenize(name)
    except InvalidIdentifier:
        # Hand-written scripts may carry non-identifier names; fall back to a
        # plain word split rather than refusing to match.
        return [w.casefold() for w in re.findall(r"[A-Za-z]+|[0-9]+", name)]


def script_keywords(script: MetadataScript) -> list[tuple[str, list[KeywordAnnotation]]]:
    """One entry per distinct keyword of a service: every annotated term plus
    the raw name tokens of its methods and parameters (so an un-enriched
    service still participates with bare tokens)."""
    keywords: dict[str, list[KeywordAnnotation]] = {}
    for _target, annotation in script.iter_annotations():
        keywords.setdefault(annotation.term.casefold(), []).append(annotation)
    for method_name, entry in script.entries.items():
        for token in _name_tokens(method_name):
            if not token.isdigit():
                keywords.setdefault(token, [])
        for parameter_name in entry.parameters:
            for token in _name_tokens(parameter_name):
                if not token.isdigit():
                    keywords.setdefault(token, [])
    return list(keywords.items())


def concept_match(
    requirement: ConceptRequirement,
    keywords: list[tuple[str, list[KeywordAnnotation]]],
    config: MatcherConfig = DEFAULT_CONFIG,
) -> ConceptMatch:
    """Best match for one concept over a service's keywords.

    Each keyword's name score is the larger of its direct string similarity
    to the concept and the expansion weight (when the concept occurs in one
    of the keyword's definitions, or the keyword occurs in the desired
    definition).  Ties pick the lexicographically smallest keyword.  If a
    desired definition was given and the winning keyword carries
    annotations, the combined score blends name and definition agreement;
    otherwise it is the name score alone.
    """
    concept = requirement.concept.casefold()
    merged: dict[str, list[KeywordAnnotation]] = {}
    for term, annotations in keywords:
        merged.setdefault(term.casefold(), []).extend(annotations)
    if not merged:
        return ConceptMatch(
            concept=requirement.concept,
            matched_keyword=None,
            kind=MatchKind.NONE,
            name_score=0.0,
            definition_score=None,
            combined_score=0.0,
        )

    desired = requirement.desired_definition
    desired_tokens = (
        definition_tokens(desired, config.stopwords) if desired is not None else set()
    )

    best_term = None
    best_annotations: list[KeywordAnnotation] = []
    best_score = -1.0
    best_is_expansion = False
    for term in sorted(merged):
        annotations = merged[term]
        direct = token_similarity(concept, term)
        expanded = term in desired_tokens or any(
            concept in definition_tokens(ann.definition, config.stopwords)
            for ann in annotations
        )
        expansion_score = config.expansion_weight if expanded else 0.0
        name_score = max(direct, expansion_score)
        if name_score > best_score:
            best_term = term
            best_annotations = annotations
            best_score = name_score
            best_is_expansion = expansion_score > direct
    assert best_term is not None

    definition_score = None
    combined = best_score
    if desired is not None and best_annotations:
        definition_score = max(
            definition_similarity(desired, ann.definition, config.stopwords)
            for ann in best_annotations
        )
        combined = (
            config.name_weight * best_score
            + (1.0 - config.name_weight) * definition_score
        )
    return ConceptMatch(
        concept=requirement.concept,
        matched_keyword=best_term,
        kind=MatchKind.EXPANSION if best_is_expansion else MatchKind.DIRECT,
        name_score=best_score,
        definition_score=definition_score,
        combined_score=combined,
    )


def map_concepts(
    script_a: MetadataScript,
    script_b: MetadataScript,
    config: MatcherConfig = DEFAULT_CONFIG,
) -> list[tuple[str, str, float]]:
    """Keyword pairs of two services that score at or above the mapping
    threshold, sorted by descending score then pair.  Expansion evidence is
    symmetric: either side's definitions may contain the other's term."""
    keywords_a = script_keywords(script_a)
    keywords_b = script_keywords(script_b)
    pairs: list[tuple[str, str, float]] = []
    for term_a, annotations_a in keywords_a:
        tokens_a = [definition_tokens(ann.definition, config.stopwords) for ann in annotations_a]
        for term_b, annotations_b in keywords_b:
            direct = token_similarity(term_a, term_b)
            expanded = any(term_a in tokens for tokens in (
                definition_tokens(ann.definition, config.stopwords) for ann in annotations_b
            )) or any(term_b in tokens for tokens in tokens_a)
            score = max(direct, config.expansion_weight if expanded else 0.0)
            if score >= config.mapping_threshold:
                pairs.append((term_a, term_b, score))
    pairs.sort(key=lambda pair: (-pair[2], pair[0], pair[1]))
    return pairs


def rank_services(
    request: MatchRequest,
    candidates: list[tuple[str, MetadataScript]],
    config: MatcherConfig = DEFAULT_CONFIG,
) -> list[MatchReport]:
    """One report per candidate, sorted by descending total score with ties
    broken by ascending service id.  The total is the arithmetic mean of the
    per-concept combined scores."""
    if not request.requirements:
        raise InvalidRequest("request has no concepts")
    if not candidates:
        raise InvalidRequest("no candidate services given")
    reports = []
    for service_id, script in candidates:
        keywords = script_keywords(script)
        matches = tuple(
            concept_match(requirement, keywords, config)
            for requirement in request.requirements
        )
        total = sum(match.combined_score for match in matches) / len(matches)
        reports.append(MatchReport(service_id=service_id, per_concept=matches, total_score=total))
    reports.sort(key=lambda report: (-report.total_score, report.service_id))
    return reports


# --- JSON wire format ----------------------------------------------------------


def request_from_dict(data: object) -> MatchRequest:
    """Parse the request JSON shape {"concepts": [{"concept", "desiredDefinition"?}]}."""
    if not isinstance(data, dict) or not isinstance(data.get("concepts"), list):
        raise InvalidRequest('request must be an object with a "concepts" array')
    requirements = []
    for entry in data["concepts"]:
        if not isinstance(entry, dict) or not isinstance(entry.get("concept"), str):
            raise InvalidRequest('each concept entry needs a string "concept"')
        desired = entry.get("desiredDefinition")
        if desired is not None and not isinstance(desired, str):
            raise InvalidRequest('"desiredDefinition" must be a string when present')
        requirements.append(ConceptRequirement(
            concept=entry["concept"].casefold(),
            desired_definition=desired,
        ))
    return MatchRequest(requirements=tuple(requirements))


def report_to_dict(report: MatchReport) -> dict:
    return {
        "serviceId": report.service_id,
        "totalScore": report.total_score,
        "perConcept": [
            {
                "concept": match.concept,
                "matchedKeyword": match.matched_keyword,
                "kind": match.kind.value,
                "nameScore": match.name_score,
                "definitionScore": match.definition_score,
                "combinedScore": match.combined_score,
            }
            for match in report.per_concept
        ],
    }
