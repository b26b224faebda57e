"""HTTP service hosting annotation projects over the library.

A project is a directory under the data dir holding exactly two things: the
uploaded source file and the current metadata script XML.  The script file
is the store; every read re-loads it, so whatever this service serves is
byte-for-byte what another program would read from disk, and a restart
changes nothing.

Endpoints (all JSON unless noted):

    POST /projects                          upload + parse a source file
    GET  /projects/{id}                     current model, keywords, counts
    POST /projects/{id}/annotations         append one keyword annotation
    GET  /projects/{id}/script?format=xml|display   export the script
    GET  /dictionaries                      configured providers
    GET  /dictionaries/{id}/lookup?term=&language=  definition lookup
    POST /match                             rank scripts/projects for a request
"""

from __future__ import annotations

import secrets
import threading
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Response
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

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
from .interface_parser import InterfaceModel, extract_keywords, model_to_dict, parse_file
from .matcher import rank_services, report_to_dict, request_from_dict
from .metadata import AnnotationTarget, KeywordAnnotation, MetadataScript

_STATUS_BY_ERROR = {
    UnsupportedFileType: 415,
    ParseError: 422,
    InvalidIdentifier: 422,
    UnknownTarget: 422,
    SchemaError: 422,
    InvalidRequest: 422,
    UnsupportedLanguage: 422,
    FormatError: 422,
    UnknownProvider: 404,
    UnknownProject: 404,
    ProviderUnavailable: 503,
    ConfigError: 500,
}

SCRIPT_FILENAME = "script.xml"


class ProjectStore:
    """File-backed project persistence: one directory per project."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def lock(self, project_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(project_id, threading.Lock())

    def create(self, filename: str, content: str) -> str:
        name = Path(filename).name
        if not name:
            raise UnsupportedFileType("filename is empty")
        # Parse first: nothing is persisted for files we cannot handle.
        project_id = secrets.token_hex(4)
        while (self.root / project_id).exists():
            project_id = secrets.token_hex(4)
        project_dir = self.root / project_id
        project_dir.mkdir(parents=True)
        source_path = project_dir / name
        source_path.write_text(content, encoding="utf-8")
        try:
            model = parse_file(source_path)
        except CodelexError:
            source_path.unlink()
            project_dir.rmdir()
            raise
        script = MetadataScript.from_model(model)
        self._write_script(project_dir, script)
        return project_id

    def _dir(self, project_id: str) -> Path:
        project_dir = self.root / project_id
        if not project_dir.is_dir():
            raise UnknownProject(f"no project with id {project_id!r}")
        return project_dir

    def _source_path(self, project_dir: Path) -> Path:
        for candidate in sorted(project_dir.iterdir()):
            if candidate.name != SCRIPT_FILENAME and candidate.is_file():
                return candidate
        raise UnknownProject(f"project {project_dir.name!r} has no source file")

    def model(self, project_id: str) -> InterfaceModel:
        return parse_file(self._source_path(self._dir(project_id)))

    def script(self, project_id: str) -> MetadataScript:
        return MetadataScript.from_xml(self.script_bytes(project_id))

    def script_bytes(self, project_id: str) -> bytes:
        return (self._dir(project_id) / SCRIPT_FILENAME).read_bytes()

    def save_script(self, project_id: str, script: MetadataScript) -> None:
        self._write_script(self._dir(project_id), script)

    def timestamps(self, project_id: str) -> tuple[str, str]:
        project_dir = self._dir(project_id)
        source_stat = self._source_path(project_dir).stat()
        script_stat = (project_dir / SCRIPT_FILENAME).stat()
        return _iso(source_stat.st_mtime), _iso(max(source_stat.st_mtime, script_stat.st_mtime))

    @staticmethod
    def _write_script(project_dir: Path, script: MetadataScript) -> None:
        target = project_dir / SCRIPT_FILENAME
        tmp = target.with_suffix(".xml.tmp")
        tmp.write_bytes(script.to_xml())
        tmp.replace(target)


def _iso(timestamp: float) -> str:
    return datetime.fromtimestamp(timestamp, tz=timezone.utc).isoformat(timespec="seconds")


class ProjectUpload(BaseModel):
    filename: str
    content: str


class AnnotationBody(BaseModel):
    methodName: str
    parameterName: str | None = None
    term: str
    language: str
    source: str
    definition: str


class ConceptBody(BaseModel):
    concept: str
    desiredDefinition: str | None = None


class MatchBody(BaseModel):
    concepts: list[ConceptBody]
    scripts: list[str] = []
    projectIds: list[str] = []


def create_app(
    data_dir: str | Path,
    gateway: DictionaryGateway | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    data_dir = Path(data_dir)
    store = ProjectStore(data_dir / "projects")
    if gateway is None:
        gateway = DictionaryGateway.default(cache_dir=data_dir / "cache")

    app = FastAPI(title="codelex annotation service")

    async def _domain_error(_request, exc: CodelexError):
        status = 500
        for klass in type(exc).__mro__:
            if klass in _STATUS_BY_ERROR:
                status = _STATUS_BY_ERROR[klass]
                break
        return JSONResponse(
            status_code=status,
            content={"detail": f"{type(exc).__name__}: {exc}"},
        )

    app.add_exception_handler(CodelexError, _domain_error)

    def _project_summary(project_id: str) -> dict:
        model = store.model(project_id)
        script = store.script(project_id)
        created_at, updated_at = store.timestamps(project_id)
        return {
            "id": project_id,
            "createdAt": created_at,
            "updatedAt": updated_at,
            "model": model_to_dict(model),
            "keywords": sorted(extract_keywords(model)),
            "annotationCount": script.annotation_count(),
        }

    @app.post("/projects", status_code=201)
    def create_project(body: ProjectUpload) -> dict:
        project_id = store.create(body.filename, body.content)
        return _project_summary(project_id)

    @app.get("/projects/{project_id}")
    def get_project(project_id: str) -> dict:
        return _project_summary(project_id)

    @app.post("/projects/{project_id}/annotations")
    def add_annotation(project_id: str, body: AnnotationBody) -> dict:
        try:
            target = AnnotationTarget(
                method_name=body.methodName, parameter_name=body.parameterName
            )
            annotation = KeywordAnnotation(
                term=body.term,
                language=body.language,
                source=body.source,
                definition=body.definition,
            )
        except ValueError as exc:
            return JSONResponse(status_code=422, content={"detail": str(exc)})
        with store.lock(project_id):
            script = store.script(project_id)
            script.add_annotation(target, annotation)
            store.save_script(project_id, script)
            count = script.annotation_count()
        return {"annotationCount": count}

    @app.get("/projects/{project_id}/script")
    def get_script(project_id: str, format: str = "xml") -> Response:
        if format == "xml":
            return Response(
                content=store.script_bytes(project_id),
                media_type="application/xml; charset=utf-8",
            )
        if format == "display":
            return PlainTextResponse(store.script(project_id).to_display())
        return JSONResponse(
            status_code=400,
            content={"detail": f"unknown format {format!r}; use xml or display"},
        )

    @app.get("/dictionaries")
    def list_dictionaries() -> list[dict]:
        return [provider.to_dict() for provider in gateway.list_providers()]

    @app.get("/dictionaries/{provider_id}/lookup")
    def lookup(provider_id: str, term: str, language: str = "en") -> list[dict]:
        if not term:
            return JSONResponse(status_code=422, content={"detail": "term must be non-empty"})
        records = gateway.lookup(provider_id, term, language)
        return [record.to_dict() for record in records]

    @app.post("/match")
    def match(body: MatchBody) -> list[dict]:
        request = request_from_dict({
            "concepts": [concept.model_dump() for concept in body.concepts]
        })
        candidates: list[tuple[str, MetadataScript]] = []
        for project_id in body.projectIds:
            candidates.append((project_id, store.script(project_id)))
        used_ids = {service_id for service_id, _ in candidates}
        for index, xml_text in enumerate(body.scripts):
            script = MetadataScript.from_xml(xml_text)
            service_id = script.interface_name or f"script-{index}"
            if service_id in used_ids:
                service_id = f"{service_id}#{index}"
            used_ids.add(service_id)
            candidates.append((service_id, script))
        reports = rank_services(request, candidates)
        return [report_to_dict(report) for report in reports]

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
