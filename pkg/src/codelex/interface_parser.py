"""Parse method declarations out of Java source or WSDL documents.

The goal is names, not semantics: a declaration scanner good enough to pull
``methodName(paramA, paramB)`` heads out of real files, with every name run
through the identifier tokenizer.  Java parsing finds the first top-level
class (or interface) and matches declaration heads at class-body depth,
skipping bodies by brace counting; WSDL parsing walks portType operations
and resolves each operation's input message parts.  Neither is a full
grammar and neither tries to be.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import InvalidIdentifier, ParseError, UnsupportedFileType
from .tokenizer import tokenize


class SourceType(str, Enum):
    JAVA = "java"
    WSDL = "wsdl"


@dataclass
class ParameterDecl:
    name: str
    tokens: list[str]
    declared_type: str = ""


@dataclass
class MethodDecl:
    name: str
    tokens: list[str]
    parameters: list[ParameterDecl] = field(default_factory=list)
    return_type: str = ""


@dataclass
class InterfaceModel:
    source_file: str
    source_type: SourceType
    interface_name: str
    methods: list[MethodDecl] = field(default_factory=list)


def detect_source_type(path: str) -> SourceType:
    """Map a file extension to its source type (case-insensitive)."""
    suffix = Path(path).suffix.lower()
    if suffix == ".java":
        return SourceType.JAVA
    if suffix in (".wsdl", ".xml"):
        return SourceType.WSDL
    raise UnsupportedFileType(f"unsupported file extension: {path!r}")


def parse_file(path: str | Path) -> InterfaceModel:
    """Read *path* and parse it according to its extension."""
    source_type = detect_source_type(str(path))
    text = Path(path).read_text(encoding="utf-8")
    return parse_source(text, str(path), source_type)


def parse_source(text: str, path: str, source_type: SourceType) -> InterfaceModel:
    if source_type is SourceType.JAVA:
        return parse_java(text, path)
    return parse_wsdl(text, path)


def extract_keywords(model: InterfaceModel) -> set[str]:
    """Union of all method-name and parameter-name tokens, digits excluded."""
    keywords: set[str] = set()
    for method in model.methods:
        keywords.update(t for t in method.tokens if not t.isdigit())
        for param in method.parameters:
            keywords.update(t for t in param.tokens if not t.isdigit())
    return keywords


# --- Java declaration scanning ---------------------------------------------

_JAVA_MODIFIERS = {
    "public", "protected", "private", "static", "final", "abstract",
    "native", "synchronized", "strictfp", "default", "transient", "volatile",
}

_JAVA_KEYWORDS_NOT_NAMES = _JAVA_MODIFIERS | {
    "if", "for", "while", "switch", "catch", "try", "new", "return",
    "throw", "throws", "else", "do", "assert", "class", "interface", "enum",
}

_CLASS_DECL_RE = re.compile(r"\b(?:class|interface)\s+([A-Za-z_$][\w$]*)")
_WORD_RE = re.compile(r"[\w$.\[\]]+")


def _blank_comments_and_literals(text: str) -> str:
    """Replace comments and string/char literals with spaces, keeping length."""
    out = list(text)
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            j = i
            while j < n and text[j] != "\n":
                out[j] = " "
                j += 1
            i = j
        elif ch == "/" and i + 1 < n and text[i + 1] == "*":
            j = text.find("*/", i + 2)
            j = n if j < 0 else j + 2
            for k in range(i, j):
                if out[k] != "\n":
                    out[k] = " "
            i = j
        elif ch in "\"'":
            quote = ch
            j = i + 1
            while j < n:
                if text[j] == "\\":
                    j += 2
                    continue
                if text[j] == quote:
                    break
                j += 1
            end = min(j + 1, n)
            for k in range(i, end):
                if out[k] != "\n":
                    out[k] = " "
            i = end
        else:
            i += 1
    return "".join(out)


def _check_balanced(clean: str, path: str) -> None:
    for open_ch, close_ch, label in (("{", "}", "braces"), ("(", ")", "parentheses")):
        depth = 0
        for ch in clean:
            if ch == open_ch:
                depth += 1
            elif ch == close_ch:
                depth -= 1
                if depth < 0:
                    raise ParseError(f"{path}: unbalanced {label}")
        if depth != 0:
            raise ParseError(f"{path}: unbalanced {label}")


def _collapse_generics(segment: str) -> str:
    prev = None
    while prev != segment:
        prev = segment
        segment = re.sub(r"<[^<>]*>", " ", segment)
    return segment


def _matching_paren(clean: str, open_pos: int) -> int:
    depth = 0
    for i in range(open_pos, len(clean)):
        if clean[i] == "(":
            depth += 1
        elif clean[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    raise ParseError("unbalanced parentheses")


def _parse_parameters(params_text: str, path: str) -> list[ParameterDecl]:
    pieces: list[str] = []
    depth_round = depth_angle = depth_square = 0
    current = []
    for ch in params_text:
        if ch == "," and depth_round == depth_angle == depth_square == 0:
            pieces.append("".join(current))
            current = []
            continue
        if ch == "(":
            depth_round += 1
        elif ch == ")":
            depth_round -= 1
        elif ch == "<":
            depth_angle += 1
        elif ch == ">":
            depth_angle = max(0, depth_angle - 1)
        elif ch == "[":
            depth_square += 1
        elif ch == "]":
            depth_square -= 1
        current.append(ch)
    pieces.append("".join(current))

    parameters: list[ParameterDecl] = []
    for piece in pieces:
        piece = re.sub(r"@[\w.]+(\s*\([^()]*\))?", " ", piece)
        piece = _collapse_generics(piece).replace("...", "[]")
        words = _WORD_RE.findall(piece)
        words = [w for w in words if w != "final"]
        if not words:
            continue
        if len(words) < 2:
            raise ParseError(f"{path}: cannot parse parameter declaration {piece.strip()!r}")
        name = words[-1]
        declared_type = " ".join(words[:-1])
        try:
            tokens = tokenize(name)
        except InvalidIdentifier as exc:
            raise ParseError(f"{path}: parameter name {name!r} is not a plain identifier") from exc
        parameters.append(ParameterDecl(name=name, tokens=tokens, declared_type=declared_type))
    names = [p.name for p in parameters]
    if len(names) != len(set(names)):
        raise ParseError(f"{path}: duplicate parameter name in declaration")
    return parameters


def parse_java(text: str, path: str = "<java>") -> InterfaceModel:
    """Scan Java-like source for method declarations in the first class.

    Finds ``modifiers? type name(params)`` heads at brace depth 1 inside the
    first top-level class or interface body.  Constructors, fields, static
    blocks, and anything nested deeper (inner classes, anonymous classes)
    are skipped.
    """
    clean = _blank_comments_and_literals(text)
    _check_balanced(clean, path)

    class_match = None
    for candidate in _CLASS_DECL_RE.finditer(clean):
        depth = clean.count("{", 0, candidate.start()) - clean.count("}", 0, candidate.start())
        if depth == 0:
            class_match = candidate
            break
    if class_match is None:
        raise ParseError(f"{path}: no class declaration found")
    class_name = class_match.group(1)

    body_open = clean.find("{", class_match.end())
    if body_open < 0:
        raise ParseError(f"{path}: class {class_name} has no body")

    methods: list[MethodDecl] = []
    depth = 1
    stmt_start = body_open + 1  # last statement boundary at class-body depth
    saw_equals = False
    i = body_open + 1
    while i < len(clean) and depth > 0:
        ch = clean[i]
        if ch == "{":
            depth += 1
            if depth == 2:
                stmt_start, saw_equals = i + 1, False
        elif ch == "}":
            depth -= 1
            if depth == 1:
                stmt_start, saw_equals = i + 1, False
        elif depth == 1:
            if ch == ";":
                stmt_start, saw_equals = i + 1, False
            elif ch == "=":
                saw_equals = True
            elif ch == "(":
                close = _matching_paren(clean, i)
                segment = clean[stmt_start:i]
                head = re.sub(r"@[\w.]+(\s*\([^()]*\))?", " ", segment)
                head = _collapse_generics(head)
                words = _WORD_RE.findall(head)
                is_annotation = re.search(r"@\s*[\w.]*\s*\Z", segment) is not None
                if saw_equals or is_annotation or not words:
                    i = close + 1
                    continue
                name = words[-1]
                if name == class_name or name in _JAVA_KEYWORDS_NOT_NAMES:
                    i = close + 1
                    continue
                type_words = [w for w in words[:-1] if w not in _JAVA_MODIFIERS]
                if not type_words:
                    i = close + 1
                    continue
                try:
                    tokens = tokenize(name)
                except InvalidIdentifier as exc:
                    raise ParseError(f"{path}: method name {name!r} is not a plain identifier") from exc
                parameters = _parse_parameters(clean[i + 1:close], path)
                methods.append(MethodDecl(
                    name=name,
                    tokens=tokens,
                    parameters=parameters,
                    return_type=" ".join(type_words),
                ))
                stmt_start, saw_equals = close + 1, False
                i = close + 1
                continue
        i += 1

    signatures = [(m.name, len(m.parameters)) for m in methods]
    if len(signatures) != len(set(signatures)):
        raise ParseError(f"{path}: duplicate method signature (same name and arity)")
    return InterfaceModel(
        source_file=path,
        source_type=SourceType.JAVA,
        interface_name=class_name,
        methods=methods,
    )


# --- WSDL subset ------------------------------------------------------------


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _strip_prefix(ref: str) -> str:
    return ref.rsplit(":", 1)[-1]


def parse_wsdl(text: str, path: str = "<wsdl>") -> InterfaceModel:
    """Extract operations from the first portType of a WSDL 1.1 document.

    Matching is on local element names, so any namespace prefixing works.
    Each operation becomes a method; the parts of its input message become
    the parameters, in document order.  doc/literal wrapper schemas are not
    unwrapped: parts are taken as declared.
    """
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise ParseError(f"{path}: malformed XML: {exc}") from exc

    messages: dict[str, list[tuple[str, str]]] = {}
    for element in root.iter():
        if _local_name(element.tag) != "message":
            continue
        name = element.get("name")
        if not name:
            continue
        parts = [
            (part.get("name", ""), part.get("type") or part.get("element") or "")
            for part in element
            if _local_name(part.tag) == "part"
        ]
        messages[name] = parts

    port_type = next(
        (el for el in root.iter() if _local_name(el.tag) == "portType"), None
    )
    if port_type is None:
        raise ParseError(f"{path}: no portType element found")
    interface_name = port_type.get("name")
    if not interface_name:
        raise ParseError(f"{path}: portType has no name attribute")

    methods: list[MethodDecl] = []
    for operation in port_type:
        if _local_name(operation.tag) != "operation":
            continue
        op_name = operation.get("name")
        if not op_name:
            raise ParseError(f"{path}: operation has no name attribute")
        try:
            tokens = tokenize(op_name)
        except InvalidIdentifier as exc:
            raise ParseError(f"{path}: operation name {op_name!r} is not a plain identifier") from exc

        parameters: list[ParameterDecl] = []
        input_el = next(
            (child for child in operation if _local_name(child.tag) == "input"), None
        )
        if input_el is not None:
            message_ref = _strip_prefix(input_el.get("message", ""))
            if message_ref:
                if message_ref not in messages:
                    raise ParseError(
                        f"{path}: operation {op_name!r} references missing message {message_ref!r}"
                    )
                for part_name, part_type in messages[message_ref]:
                    try:
                        part_tokens = tokenize(part_name)
                    except InvalidIdentifier as exc:
                        raise ParseError(
                            f"{path}: part name {part_name!r} is not a plain identifier"
                        ) from exc
                    parameters.append(ParameterDecl(
                        name=part_name, tokens=part_tokens, declared_type=part_type,
                    ))
        param_names = [p.name for p in parameters]
        if len(param_names) != len(set(param_names)):
            raise ParseError(f"{path}: duplicate part name in operation {op_name!r}")
        methods.append(MethodDecl(name=op_name, tokens=tokens, parameters=parameters))

    signatures = [(m.name, len(m.parameters)) for m in methods]
    if len(signatures) != len(set(signatures)):
        raise ParseError(f"{path}: duplicate operation signature (same name and arity)")
    return InterfaceModel(
        source_file=path,
        source_type=SourceType.WSDL,
        interface_name=interface_name,
        methods=methods,
    )


# --- JSON wire format -------------------------------------------------------


def model_to_dict(model: InterfaceModel) -> dict:
    return {
        "sourceFile": model.source_file,
        "sourceType": model.source_type.value,
        "interfaceName": model.interface_name,
        "methods": [
            {
                "name": m.name,
                "tokens": list(m.tokens),
                "returnType": m.return_type,
                "parameters": [
                    {
                        "name": p.name,
                        "tokens": list(p.tokens),
                        "declaredType": p.declared_type,
                    }
                    for p in m.parameters
                ],
            }
            for m in model.methods
        ],
    }
