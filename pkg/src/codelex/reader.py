"""Read a saved metadata script back and answer per-name queries.

This is the consumer side of the interchange: another program loads the XML
script and asks for the annotations relevant to a method or parameter name.
Unknown names return empty results rather than erroring, because "no
metadata" is a perfectly normal answer when probing a service's
capabilities.  Method and parameter lookup is exact-case (they are
identifiers); keyword search is case-insensitive (it is natural language).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .metadata import AnnotationTarget, KeywordAnnotation, MetadataScript


@dataclass
class MethodMetadata:
    """What the script knows about one method."""

    description: str | None = None
    annotations: list[KeywordAnnotation] = field(default_factory=list)


class MetadataReader:
    """Immutable view over a loaded script; shareable across threads."""

    def __init__(self, script: MetadataScript):
        self._script = script

    @classmethod
    def load(cls, path: str | Path) -> "MetadataReader":
        text = Path(path).read_bytes()
        return cls(MetadataScript.from_xml(text))

    @property
    def script(self) -> MetadataScript:
        return self._script

    def describe_method(self, method_name: str) -> MethodMetadata:
        entry = self._script.entries.get(method_name)
        if entry is None:
            return MethodMetadata()
        return MethodMetadata(
            description=entry.description,
            annotations=list(entry.annotations),
        )

    def describe_parameter(self, method_name: str, parameter_name: str) -> list[KeywordAnnotation]:
        entry = self._script.entries.get(method_name)
        if entry is None:
            return []
        return list(entry.parameters.get(parameter_name, []))

    def find_keyword(self, term: str) -> list[tuple[AnnotationTarget, KeywordAnnotation]]:
        """All annotations whose term matches case-insensitively, in script order."""
        if not term:
            raise ValueError("term must be non-empty")
        folded = term.casefold()
        return [
            (target, annotation)
            for target, annotation in self._script.iter_annotations()
            if annotation.term.casefold() == folded
        ]
