"""Command-line front door: parse, lookup, annotate, export, match, serve.

Exit codes are fixed so scripts and CI can branch on them:

    0  success
    1  I/O failure
    2  parse/schema/format error in an input file
    3  unsupported file type
    4  dictionary provider error (unknown, unavailable, wrong language)
    5  bad target or request (unknown method/parameter, pick out of range,
       empty match request)
    6  refusing to overwrite an existing file without --force
    7  requested port already in use

Every failure prints one line to stderr of the form
``error: <ErrorName>: <message>``.
"""

from __future__ import annotations

import functools
import json
import socket
import sys
from pathlib import Path

import click

from .dictionary import DictionaryGateway
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
from .interface_parser import extract_keywords, model_to_dict, parse_file
from .matcher import MatchReport, rank_services, report_to_dict, request_from_dict
from .metadata import AnnotationTarget, KeywordAnnotation, MetadataScript

_EXIT_CODES = {
    ParseError: 2,
    SchemaError: 2,
    FormatError: 2,
    ConfigError: 2,
    InvalidIdentifier: 2,
    UnsupportedFileType: 3,
    UnknownProvider: 4,
    ProviderUnavailable: 4,
    UnsupportedLanguage: 4,
    UnknownTarget: 5,
    InvalidRequest: 5,
    UnknownProject: 5,
}

EXIT_IO = 1
EXIT_PICK = 5
EXIT_EXISTS = 6
EXIT_PORT = 7


def _fail(name: str, message: str, code: int) -> None:
    click.echo(f"error: {name}: {message}", err=True)
    sys.exit(code)


def _handle_errors(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except CodelexError as exc:
            code = next(
                (_EXIT_CODES[k] for k in type(exc).__mro__ if k in _EXIT_CODES), 1
            )
            _fail(type(exc).__name__, str(exc), code)
        except OSError as exc:
            _fail("IoError", str(exc), EXIT_IO)

    return wrapper


def _echo_json(data) -> None:
    click.echo(json.dumps(data, indent=2, ensure_ascii=False))


def _default_cache_dir() -> Path:
    return Path.home() / ".cache" / "codelex"


def _gateway(providers: str | None, cache_dir: str | None) -> DictionaryGateway:
    cache = Path(cache_dir) if cache_dir else _default_cache_dir()
    if providers:
        return DictionaryGateway.from_config_file(providers, cache)
    return DictionaryGateway.default(cache)


_provider_options = [
    click.option("--providers", type=click.Path(exists=True, dir_okay=False),
                 default=None, help="Provider config JSON (default: bundled)."),
    click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
                 help="Definition cache directory (default: ~/.cache/codelex)."),
]


def _with_provider_options(func):
    for option in reversed(_provider_options):
        func = option(func)
    return func


@click.group()
@click.version_option(package_name="codelex")
def main() -> None:
    """Enrich interface descriptions with dictionary metadata and match services."""


@main.command()
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Print the model as JSON.")
@_handle_errors
def parse(source: str, as_json: bool) -> None:
    """Parse SOURCE (.java/.wsdl/.xml) and print its interface model."""
    model = parse_file(source)
    if as_json:
        _echo_json(model_to_dict(model))
        return
    click.echo(f"interface {model.interface_name} [{model.source_type.value}] {model.source_file}")
    for method in model.methods:
        params = ", ".join(p.name for p in method.parameters)
        click.echo(f"  method {method.name}({params})  tokens: {' '.join(method.tokens)}")
        for param in method.parameters:
            click.echo(f"    param {param.name}  tokens: {' '.join(param.tokens)}")
    click.echo(f"keywords: {', '.join(sorted(extract_keywords(model)))}")


@main.command()
@click.argument("term")
@click.option("--provider", "provider_id", required=True, help="Provider id to query.")
@click.option("--language", default="en", show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Print records as JSON.")
@_with_provider_options
@_handle_errors
def lookup(term: str, provider_id: str, language: str, as_json: bool,
           providers: str | None, cache_dir: str | None) -> None:
    """Look TERM up on a dictionary provider and print the definitions."""
    gateway = _gateway(providers, cache_dir)
    records = gateway.lookup(provider_id, term, language)
    if as_json:
        _echo_json([record.to_dict() for record in records])
        return
    if not records:
        click.echo("no definitions")
        return
    for index, record in enumerate(records):
        click.echo(f"[{index}] {record.term} ({record.language}): {record.definition}")
        click.echo(f"    source: {record.source}")


@main.command()
@click.argument("script_path", metavar="SCRIPT", type=click.Path(exists=True, dir_okay=False))
@click.option("--method", "method_name", required=True, help="Method to annotate.")
@click.option("--param", "parameter_name", default=None, help="Parameter of the method to annotate.")
@click.option("--term", required=True, help="Keyword to look up and attach.")
@click.option("--provider", "provider_id", required=True, help="Provider id to query.")
@click.option("--language", default="en", show_default=True)
@click.option("--pick", default=0, show_default=True, help="Index of the definition to attach.")
@_with_provider_options
@_handle_errors
def annotate(script_path: str, method_name: str, parameter_name: str | None, term: str,
             provider_id: str, language: str, pick: int,
             providers: str | None, cache_dir: str | None) -> None:
    """Append the picked definition of TERM to SCRIPT and rewrite it."""
    script = MetadataScript.from_xml(Path(script_path).read_bytes())
    gateway = _gateway(providers, cache_dir)
    records = gateway.lookup(provider_id, term, language)
    if pick < 0 or pick >= len(records):
        _fail("PickOutOfRange",
              f"--pick {pick} out of range: provider returned {len(records)} definition(s)",
              EXIT_PICK)
    record = records[pick]
    target = AnnotationTarget(method_name=method_name, parameter_name=parameter_name)
    script.add_annotation(target, KeywordAnnotation(
        term=record.term,
        language=record.language,
        source=record.source,
        definition=record.definition,
    ))
    _write_file(Path(script_path), script.to_xml())
    click.echo(f"annotated {script_path}: {script.annotation_count()} annotation(s) total")


@main.command()
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Output path (default: <source stem>.metadata.xml).")
@click.option("--force", is_flag=True, help="Overwrite an existing script file.")
@_handle_errors
def init(source: str, output: str | None, force: bool) -> None:
    """Create a fresh, empty metadata script for SOURCE."""
    model = parse_file(source)
    out_path = Path(output) if output else Path(source).with_suffix(".metadata.xml")
    if out_path.exists() and not force:
        _fail("AlreadyExists", f"{out_path} exists; pass --force to overwrite", EXIT_EXISTS)
    _write_file(out_path, MetadataScript.from_model(model).to_xml())
    click.echo(str(out_path))


@main.command()
@click.argument("project_dir", type=click.Path(exists=True, file_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Write the script here instead of stdout.")
@_handle_errors
def export(project_dir: str, output: str | None) -> None:
    """Print (or copy out) the current script of a service project directory."""
    script_file = Path(project_dir) / "script.xml"
    data = script_file.read_bytes()
    MetadataScript.from_xml(data)  # refuse to export something unreadable
    if output:
        _write_file(Path(output), data)
        click.echo(output)
    else:
        click.echo(data.decode("utf-8"), nl=False)


@main.command()
@click.option("--request", "request_path", required=True,
              type=click.Path(exists=True, dir_okay=False), help="Match request JSON file.")
@click.argument("scripts", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Print reports as JSON.")
@_handle_errors
def match(request_path: str, scripts: tuple[str, ...], as_json: bool) -> None:
    """Rank the given script files against a match request."""
    try:
        request_data = json.loads(Path(request_path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidRequest(f"{request_path}: not valid JSON: {exc}") from exc
    request = request_from_dict(request_data)

    candidates = []
    used_ids = set()
    for index, script_file in enumerate(scripts):
        script = MetadataScript.from_xml(Path(script_file).read_bytes())
        service_id = Path(script_file).stem
        if service_id in used_ids:
            service_id = f"{service_id}#{index}"
        used_ids.add(service_id)
        candidates.append((service_id, script))

    reports = rank_services(request, candidates)
    if as_json:
        _echo_json([report_to_dict(report) for report in reports])
        return
    for rank, report in enumerate(reports, start=1):
        click.echo(f"{rank}. {report.service_id}  total={report.total_score:g}")
        for match_ in report.per_concept:
            click.echo("   " + _explain(match_))


def _explain(concept_match) -> str:
    line = f"{concept_match.concept} -> {concept_match.matched_keyword or '(none)'}"
    line += f" [{concept_match.kind.value}] name={concept_match.name_score:g}"
    if concept_match.definition_score is not None:
        line += f" definition={concept_match.definition_score:g}"
    return line + f" combined={concept_match.combined_score:g}"


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data-dir", required=True, type=click.Path(file_okay=False),
              help="Directory for projects and the definition cache (created if missing).")
@click.option("--ui-dir", type=click.Path(file_okay=False), default=None,
              help="Built UI assets to serve at / (default: ./frontend/dist if present).")
@_with_provider_options
@_handle_errors
def serve(port: int, host: str, data_dir: str, ui_dir: str | None,
          providers: str | None, cache_dir: str | None) -> None:
    """Run the annotation HTTP service."""
    import uvicorn

    from .service import create_app

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        probe.bind((host, port))
    except OSError as exc:
        _fail("PortInUse", f"cannot bind {host}:{port}: {exc}", EXIT_PORT)
    finally:
        probe.close()

    data_path = Path(data_dir)
    data_path.mkdir(parents=True, exist_ok=True)
    gateway = _gateway(providers, cache_dir or str(data_path / "cache"))
    static_dir = Path(ui_dir) if ui_dir else Path("frontend/dist")
    app = create_app(data_path, gateway=gateway,
                     static_dir=static_dir if static_dir.is_dir() else None)
    uvicorn.run(app, host=host, port=port)


def _write_file(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    tmp.replace(path)


if __name__ == "__main__":
    main()
