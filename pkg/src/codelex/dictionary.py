"""Keyword definition lookup across pluggable dictionary providers.

A gateway holds an ordered list of providers (from a JSON config file or the
bundled default), looks terms up case-insensitively, stamps every returned
definition with the source URL it came from, and caches results on disk as
one JSON file per (provider, language, term) key so a repeated lookup never
contacts the provider again.

Live HTTP providers are configuration plus an optional fetch hook supplied
by the caller; nothing in this module scrapes HTML.  The bundled "local"
provider answers from a JSON-lines fixture file and is what tests and the
demo run against.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Callable
from urllib.parse import quote

from .errors import (
    ConfigError,
    FormatError,
    ProviderUnavailable,
    UnknownProvider,
    UnsupportedLanguage,
)

PROVIDER_KINDS = ("local-file", "http")


@dataclass(frozen=True)
class DefinitionRecord:
    """One dictionary answer: a term's definition plus where it came from."""

    term: str
    language: str
    source: str
    definition: str

    def __post_init__(self) -> None:
        if not self.definition:
            raise ValueError("definition must be non-empty")
        if not self.language:
            raise ValueError("language must be non-empty")
        if "://" not in self.source:
            raise ValueError(f"source must be an absolute URL, got {self.source!r}")

    def to_dict(self) -> dict:
        return {
            "term": self.term,
            "language": self.language,
            "source": self.source,
            "definition": self.definition,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DefinitionRecord":
        return cls(
            term=data["term"],
            language=data["language"],
            source=data["source"],
            definition=data["definition"],
        )


@dataclass(frozen=True)
class ProviderConfig:
    id: str
    display_name: str
    base_url: str
    kind: str
    languages: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "displayName": self.display_name,
            "baseUrl": self.base_url,
            "kind": self.kind,
            "languages": list(self.languages),
        }


# Fetch hook for http providers: (provider, folded term, language) -> records.
Fetcher = Callable[[ProviderConfig, str, str], "list[DefinitionRecord]"]


class LocalDictionary:
    """A dictionary answered from a JSON-lines file.

    Each line is an object with keys term, language, definition, and an
    optional source; lines missing source fall back to *default_source*.
    Duplicate (term, language) lines accumulate in file order.
    """

    def __init__(self, records: list[DefinitionRecord]):
        self._records = records

    def lookup(self, term: str, language: str) -> list[DefinitionRecord]:
        folded = term.casefold()
        lang = language.casefold()
        return [
            r for r in self._records
            if r.term.casefold() == folded and r.language.casefold() == lang
        ]


def load_local_dictionary(path: str | Path, default_source: str | None = None) -> LocalDictionary:
    """Load a JSON-lines dictionary file into a provider handle."""
    path = Path(path)
    if default_source is None:
        default_source = path.resolve().as_uri()
    text = path.read_text(encoding="utf-8")

    records: list[DefinitionRecord] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: line {lineno}: not valid JSON") from exc
        if not isinstance(data, dict):
            raise FormatError(f"{path}: line {lineno}: expected a JSON object")
        for key in ("term", "language", "definition"):
            if not isinstance(data.get(key), str) or not data[key]:
                raise FormatError(f"{path}: line {lineno}: missing or empty {key!r}")
        try:
            records.append(DefinitionRecord(
                term=data["term"],
                language=data["language"],
                source=data.get("source") or default_source,
                definition=data["definition"],
            ))
        except ValueError as exc:
            raise FormatError(f"{path}: line {lineno}: {exc}") from exc
    return LocalDictionary(records)


def load_provider_config(path: str | Path) -> list[ProviderConfig]:
    """Read a JSON array of provider objects.

    Relative local-file paths are resolved against the config file's
    directory, so a config can ship next to its fixture data.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON") from exc
    if not isinstance(raw, list):
        raise ConfigError(f"{path}: expected a JSON array of providers")

    providers: list[ProviderConfig] = []
    seen: set[str] = set()
    for entry in raw:
        if not isinstance(entry, dict):
            raise ConfigError(f"{path}: provider entries must be objects")
        try:
            provider_id = entry["id"]
            kind = entry["kind"]
            base_url = entry["baseUrl"]
        except KeyError as exc:
            raise ConfigError(f"{path}: provider missing key {exc}") from exc
        if kind not in PROVIDER_KINDS:
            raise ConfigError(f"{path}: provider {provider_id!r} has unknown kind {kind!r}")
        if provider_id in seen:
            raise ConfigError(f"{path}: duplicate provider id {provider_id!r}")
        seen.add(provider_id)
        if kind == "local-file" and not os.path.isabs(base_url):
            base_url = str((path.parent / base_url).resolve())
        providers.append(ProviderConfig(
            id=provider_id,
            display_name=entry.get("displayName", provider_id),
            base_url=base_url,
            kind=kind,
            languages=tuple(entry.get("languages", ["en"])),
        ))
    return providers


def default_providers() -> list[ProviderConfig]:
    """The bundled provider list: three online dictionaries plus the local fixture."""
    config_path = resources.files("codelex").joinpath("data/providers.json")
    return load_provider_config(Path(str(config_path)))


class DictionaryGateway:
    """Uniform, cached lookup across all configured providers."""

    def __init__(
        self,
        providers: list[ProviderConfig],
        cache_dir: str | Path,
        fetchers: dict[str, Fetcher] | None = None,
    ):
        seen: set[str] = set()
        for provider in providers:
            if provider.id in seen:
                raise ConfigError(f"duplicate provider id {provider.id!r}")
            seen.add(provider.id)
        self._providers = list(providers)
        self._cache_dir = Path(cache_dir)
        self._fetchers = dict(fetchers or {})
        self._local: dict[str, LocalDictionary] = {}

    @classmethod
    def from_config_file(
        cls,
        config_path: str | Path,
        cache_dir: str | Path,
        fetchers: dict[str, Fetcher] | None = None,
    ) -> "DictionaryGateway":
        return cls(load_provider_config(config_path), cache_dir, fetchers)

    @classmethod
    def default(cls, cache_dir: str | Path, fetchers: dict[str, Fetcher] | None = None) -> "DictionaryGateway":
        return cls(default_providers(), cache_dir, fetchers)

    def list_providers(self) -> list[ProviderConfig]:
        return list(self._providers)

    def provider(self, provider_id: str) -> ProviderConfig:
        for provider in self._providers:
            if provider.id == provider_id:
                return provider
        raise UnknownProvider(f"unknown provider id {provider_id!r}")

    def lookup(self, provider_id: str, term: str, language: str = "en") -> list[DefinitionRecord]:
        """Definitions of *term*, served from the on-disk cache when warm.

        The term is case-folded before the query; an empty result list is a
        valid (and cached) outcome.
        """
        provider = self.provider(provider_id)
        if not term:
            raise ValueError("term must be non-empty")
        if language.casefold() not in {lang.casefold() for lang in provider.languages}:
            raise UnsupportedLanguage(
                f"provider {provider_id!r} does not support language {language!r}"
            )
        folded = term.casefold()

        cache_file = self._cache_path(provider_id, language, folded)
        if cache_file.exists():
            data = json.loads(cache_file.read_text(encoding="utf-8"))
            return [DefinitionRecord.from_dict(entry) for entry in data]

        records = self._fetch(provider, folded, language)
        # Reported terms carry the folded query form, so lookups under any
        # casing return identical records.
        records = [replace(record, term=folded) for record in records]
        self._write_cache(cache_file, records)
        return records

    def _fetch(self, provider: ProviderConfig, folded: str, language: str) -> list[DefinitionRecord]:
        if provider.kind == "local-file":
            if provider.id not in self._local:
                source = Path(provider.base_url).resolve().as_uri()
                try:
                    self._local[provider.id] = load_local_dictionary(
                        provider.base_url, default_source=source
                    )
                except OSError as exc:
                    raise ProviderUnavailable(
                        f"provider {provider.id!r}: cannot read {provider.base_url}: {exc}"
                    ) from exc
            return self._local[provider.id].lookup(folded, language)

        fetcher = self._fetchers.get(provider.id) or self._fetchers.get(provider.kind)
        if fetcher is None:
            raise ProviderUnavailable(
                f"provider {provider.id!r} has no fetch hook registered and the cache is cold"
            )
        try:
            return list(fetcher(provider, folded, language))
        except ProviderUnavailable:
            raise
        except Exception as exc:
            raise ProviderUnavailable(f"provider {provider.id!r}: {exc}") from exc

    def _cache_path(self, provider_id: str, language: str, folded_term: str) -> Path:
        safe_term = quote(folded_term, safe="")
        safe_lang = quote(language.casefold(), safe="")
        return self._cache_dir / quote(provider_id, safe="") / safe_lang / f"{safe_term}.json"

    @staticmethod
    def _write_cache(cache_file: Path, records: list[DefinitionRecord]) -> None:
        # Atomic replace: concurrent writers of the same key may race, but
        # they write identical content, so last-write-wins is fine.
        cache_file.parent.mkdir(parents=True, exist_ok=True)
        payload = json.dumps([r.to_dict() for r in records], ensure_ascii=False, indent=2)
        fd, tmp_name = tempfile.mkstemp(dir=cache_file.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(payload)
            os.replace(tmp_name, cache_file)
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise
