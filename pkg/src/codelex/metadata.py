"""Append-only annotation state for an interface, and its XML script form.

A MetadataScript holds, per method, an optional free-text description, an
ordered list of keyword annotations, and per-parameter ordered annotation
lists.  Adds only ever append: nothing is removed or reordered.  The script
serializes to a small, deterministic XML format (the interchange artifact
another program reads back) and to a line-per-annotation display string for
humans.

XML schema, version 1.0:

    <codeMetadata version="1.0" interface=".." sourceFile=".." sourceType="java|wsdl">
      <method name="..">
        <description>..</description>              <!-- optional -->
        <keyword term=".." language=".." source="..">definition text</keyword>
        <parameter name="..">
          <keyword ../>
        </parameter>
      </method>
    </codeMetadata>

Keyword terms are folded to lowercase at the storage boundary; method and
parameter names are identifiers and keep their case.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace
from typing import Iterator

from .errors import SchemaError, UnknownTarget
from .interface_parser import InterfaceModel, SourceType

SCRIPT_VERSION = "1.0"

# XML 1.0 cannot carry most control characters at all, and \r would be
# normalized away on re-parse; reject both up front so round-trips are exact.
_XML_UNSAFE = re.compile(
    "[^\t\n\u0020-\uD7FF\uE000-\uFFFD\U00010000-\U0010FFFF]"
)


def _require_xml_text(label: str, value: str) -> None:
    if not value:
        raise ValueError(f"{label} must be non-empty")
    if _XML_UNSAFE.search(value):
        raise ValueError(f"{label} contains characters not representable in XML")


@dataclass(frozen=True)
class KeywordAnnotation:
    """One keyword definition attached to a method or parameter."""

    term: str
    language: str
    source: str
    definition: str

    def __post_init__(self) -> None:
        _require_xml_text("term", self.term)
        _require_xml_text("language", self.language)
        _require_xml_text("source", self.source)
        _require_xml_text("definition", self.definition)

    def folded(self) -> "KeywordAnnotation":
        return replace(self, term=self.term.casefold())

    def to_dict(self) -> dict:
        return {
            "term": self.term,
            "language": self.language,
            "source": self.source,
            "definition": self.definition,
        }


@dataclass(frozen=True)
class AnnotationTarget:
    """A method, or one of its parameters, to attach an annotation to."""

    method_name: str
    parameter_name: str | None = None

    def __post_init__(self) -> None:
        if not self.method_name:
            raise ValueError("method_name must be non-empty")
        if self.parameter_name == "":
            raise ValueError("parameter_name must be None or non-empty")

    def to_dict(self) -> dict:
        return {"methodName": self.method_name, "parameterName": self.parameter_name}


@dataclass
class MethodEntry:
    description: str | None = None
    annotations: list[KeywordAnnotation] = field(default_factory=list)
    parameters: dict[str, list[KeywordAnnotation]] = field(default_factory=dict)


@dataclass
class MetadataScript:
    interface_name: str
    source_file: str
    source_type: SourceType
    entries: dict[str, MethodEntry] = field(default_factory=dict)

    # --- construction -------------------------------------------------------

    @classmethod
    def from_model(cls, model: InterfaceModel) -> "MetadataScript":
        """A fresh script with one empty entry per method and parameter.

        Overloaded methods share one entry keyed by name: annotations attach
        to names, not signatures.
        """
        script = cls(
            interface_name=model.interface_name,
            source_file=model.source_file,
            source_type=model.source_type,
        )
        for method in model.methods:
            entry = script.entries.setdefault(method.name, MethodEntry())
            for param in method.parameters:
                entry.parameters.setdefault(param.name, [])
        return script

    # --- mutation -----------------------------------------------------------

    def add_annotation(self, target: AnnotationTarget, annotation: KeywordAnnotation) -> None:
        """Append *annotation* to the target's list.

        Append-only: prior annotations are never touched, and duplicates are
        allowed.  The term is folded to lowercase on the way in.
        """
        entry = self.entries.get(target.method_name)
        if entry is None:
            raise UnknownTarget(f"unknown method {target.method_name!r}")
        if target.parameter_name is None:
            entry.annotations.append(annotation.folded())
            return
        annotations = entry.parameters.get(target.parameter_name)
        if annotations is None:
            raise UnknownTarget(
                f"unknown parameter {target.parameter_name!r} of method {target.method_name!r}"
            )
        annotations.append(annotation.folded())

    def set_description(self, method_name: str, text: str) -> None:
        entry = self.entries.get(method_name)
        if entry is None:
            raise UnknownTarget(f"unknown method {method_name!r}")
        _require_xml_text("description", text)
        entry.description = text

    # --- queries --------------------------------------------------------------

    def iter_annotations(self) -> Iterator[tuple[AnnotationTarget, KeywordAnnotation]]:
        """All annotations in script order: per method, the method's own
        annotations first, then each parameter's in parameter order."""
        for method_name, entry in self.entries.items():
            for annotation in entry.annotations:
                yield AnnotationTarget(method_name), annotation
            for parameter_name, annotations in entry.parameters.items():
                for annotation in annotations:
                    yield AnnotationTarget(method_name, parameter_name), annotation

    def annotation_count(self) -> int:
        return sum(1 for _ in self.iter_annotations())

    # --- serialization --------------------------------------------------------

    def to_xml(self) -> bytes:
        """UTF-8 XML bytes; byte-identical across runs for equal scripts."""
        root = ET.Element("codeMetadata", {
            "version": SCRIPT_VERSION,
            "interface": self.interface_name,
            "sourceFile": self.source_file,
            "sourceType": self.source_type.value,
        })
        for method_name, entry in self.entries.items():
            method_el = ET.SubElement(root, "method", {"name": method_name})
            if entry.description is not None:
                ET.SubElement(method_el, "description").text = entry.description
            for annotation in entry.annotations:
                _append_keyword(method_el, annotation)
            for parameter_name, annotations in entry.parameters.items():
                param_el = ET.SubElement(method_el, "parameter", {"name": parameter_name})
                for annotation in annotations:
                    _append_keyword(param_el, annotation)
        ET.indent(root, space="  ")
        body = ET.tostring(root, encoding="unicode")
        return ('<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n").encode("utf-8")

    @classmethod
    def from_xml(cls, text: str | bytes) -> "MetadataScript":
        """Faithful inverse of to_xml; SchemaError names the offending element."""
        try:
            root = ET.fromstring(text)
        except ET.ParseError as exc:
            raise SchemaError(f"not well-formed XML: {exc}") from exc
        if root.tag != "codeMetadata":
            raise SchemaError(f"expected root element 'codeMetadata', got {root.tag!r}")
        for attr in ("version", "interface", "sourceFile", "sourceType"):
            if root.get(attr) is None:
                raise SchemaError(f"codeMetadata/@{attr}")
        if root.get("version") != SCRIPT_VERSION:
            raise SchemaError(f"unsupported script version {root.get('version')!r}")
        try:
            source_type = SourceType(root.get("sourceType"))
        except ValueError:
            raise SchemaError(f"codeMetadata/@sourceType: {root.get('sourceType')!r}") from None

        script = cls(
            interface_name=root.get("interface", ""),
            source_file=root.get("sourceFile", ""),
            source_type=source_type,
        )
        for method_el in root:
            if method_el.tag != "method":
                raise SchemaError(f"unexpected element {method_el.tag!r} under codeMetadata")
            method_name = method_el.get("name")
            if not method_name:
                raise SchemaError("method/@name")
            if method_name in script.entries:
                raise SchemaError(f"duplicate method element {method_name!r}")
            entry = MethodEntry()
            script.entries[method_name] = entry
            for child in method_el:
                if child.tag == "description":
                    entry.description = child.text or None
                elif child.tag == "keyword":
                    entry.annotations.append(_read_keyword(child))
                elif child.tag == "parameter":
                    parameter_name = child.get("name")
                    if not parameter_name:
                        raise SchemaError("parameter/@name")
                    if parameter_name in entry.parameters:
                        raise SchemaError(
                            f"duplicate parameter element {parameter_name!r} in method {method_name!r}"
                        )
                    annotations = entry.parameters.setdefault(parameter_name, [])
                    for keyword_el in child:
                        if keyword_el.tag != "keyword":
                            raise SchemaError(
                                f"unexpected element {keyword_el.tag!r} under parameter"
                            )
                        annotations.append(_read_keyword(keyword_el))
                else:
                    raise SchemaError(f"unexpected element {child.tag!r} under method")
        return script

    def to_display(self) -> str:
        """One line per annotation:
        ``method[.param] :: term | language | source | definition``."""
        lines = []
        for target, annotation in self.iter_annotations():
            name = target.method_name
            if target.parameter_name is not None:
                name = f"{name}.{target.parameter_name}"
            lines.append(
                f"{name} :: {annotation.term} | {annotation.language}"
                f" | {annotation.source} | {annotation.definition}"
            )
        return "\n".join(lines)


def _append_keyword(parent: ET.Element, annotation: KeywordAnnotation) -> None:
    keyword_el = ET.SubElement(parent, "keyword", {
        "term": annotation.term,
        "language": annotation.language,
        "source": annotation.source,
    })
    keyword_el.text = annotation.definition


def _read_keyword(keyword_el: ET.Element) -> KeywordAnnotation:
    for attr in ("term", "language", "source"):
        if keyword_el.get(attr) is None:
            raise SchemaError(f"keyword/@{attr}")
    definition = keyword_el.text
    if not definition:
        raise SchemaError("keyword definition text is missing")
    try:
        return KeywordAnnotation(
            term=keyword_el.get("term", ""),
            language=keyword_el.get("language", ""),
            source=keyword_el.get("source", ""),
            definition=definition,
        ).folded()
    except ValueError as exc:
        raise SchemaError(f"keyword: {exc}") from exc
