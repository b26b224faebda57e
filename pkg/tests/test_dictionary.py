import json
import threading

import pytest

from codelex import (
    ConfigError,
    DefinitionRecord,
    DictionaryGateway,
    FormatError,
    ProviderConfig,
    ProviderUnavailable,
    UnknownProvider,
    UnsupportedLanguage,
    load_local_dictionary,
    load_provider_config,
)

VEHICLE_DEF = "a car, lorry, bus, etc., for transporting people or goods on land"


def http_provider(provider_id="web", languages=("en",)):
    return ProviderConfig(
        id=provider_id,
        display_name=provider_id,
        base_url="http://dict.example.org/",
        kind="http",
        languages=tuple(languages),
    )


# --- local dictionary files ---------------------------------------------------


def test_load_local_dictionary(tmp_path):
    path = tmp_path / "dict.jsonl"
    path.write_text(
        '{"term": "car", "language": "en", "definition": "a road vehicle"}\n'
        '{"term": "car", "language": "en", "definition": "a railway carriage"}\n'
        '{"term": "bus", "language": "en", "definition": "a large motor vehicle",'
        ' "source": "http://src.example.org/bus"}\n',
        encoding="utf-8",
    )
    local = load_local_dictionary(path)
    records = local.lookup("car", "en")
    assert [r.definition for r in records] == ["a road vehicle", "a railway carriage"]
    # records without an explicit source fall back to the file's URI
    assert records[0].source == path.resolve().as_uri()
    assert local.lookup("bus", "en")[0].source == "http://src.example.org/bus"
    assert local.lookup("absent", "en") == []


def test_local_dictionary_missing_definition_names_line(tmp_path):
    path = tmp_path / "dict.jsonl"
    path.write_text(
        '{"term": "car", "language": "en", "definition": "ok"}\n'
        '{"term": "bus", "language": "en"}\n',
        encoding="utf-8",
    )
    with pytest.raises(FormatError, match="line 2"):
        load_local_dictionary(path)


def test_local_dictionary_bad_json_line(tmp_path):
    path = tmp_path / "dict.jsonl"
    path.write_text("not json\n", encoding="utf-8")
    with pytest.raises(FormatError, match="line 1"):
        load_local_dictionary(path)


# --- provider config ------------------------------------------------------------


def test_default_config_lists_four_providers(gateway):
    assert [p.id for p in gateway.list_providers()] == [
        "freedicts", "memidex", "synonymsdict", "local",
    ]
    by_id = {p.id: p for p in gateway.list_providers()}
    assert by_id["freedicts"].base_url == "http://www.dicts.info/"
    assert by_id["memidex"].base_url == "http://www.memidex.com/"
    assert by_id["synonymsdict"].base_url == "http://www.synonym.com/"
    assert by_id["local"].kind == "local-file"


def test_empty_config_file(tmp_path):
    config = tmp_path / "providers.json"
    config.write_text("[]", encoding="utf-8")
    assert load_provider_config(config) == []


def test_duplicate_provider_id_rejected(tmp_path):
    config = tmp_path / "providers.json"
    config.write_text(json.dumps([
        {"id": "x", "kind": "http", "baseUrl": "http://a.example.org/"},
        {"id": "x", "kind": "http", "baseUrl": "http://b.example.org/"},
    ]), encoding="utf-8")
    with pytest.raises(ConfigError):
        load_provider_config(config)


def test_unknown_kind_rejected(tmp_path):
    config = tmp_path / "providers.json"
    config.write_text(json.dumps([
        {"id": "x", "kind": "carrier-pigeon", "baseUrl": "http://a.example.org/"},
    ]), encoding="utf-8")
    with pytest.raises(ConfigError):
        load_provider_config(config)


def test_relative_local_path_resolved_against_config_dir(tmp_path):
    (tmp_path / "words.jsonl").write_text(
        '{"term": "car", "language": "en", "definition": "a road vehicle"}\n',
        encoding="utf-8",
    )
    config = tmp_path / "providers.json"
    config.write_text(json.dumps([
        {"id": "local", "kind": "local-file", "baseUrl": "words.jsonl"},
    ]), encoding="utf-8")
    gateway = DictionaryGateway.from_config_file(config, tmp_path / "cache")
    assert gateway.lookup("local", "car", "en")[0].definition == "a road vehicle"


# --- lookups ---------------------------------------------------------------------


def test_lookup_vehicle_fixture(gateway):
    records = gateway.lookup("local", "vehicle", "en")
    assert len(records) == 1
    assert records[0].definition == VEHICLE_DEF
    assert records[0].language == "en"
    assert "://" in records[0].source


def test_lookup_is_case_insensitive(gateway):
    assert gateway.lookup("local", "Vehicle", "en") == gateway.lookup("local", "vehicle", "en")
    assert gateway.lookup("local", "VEHICLE", "en") == gateway.lookup("local", "vehicle", "en")


def test_lookup_unknown_term_is_empty_not_error(gateway):
    assert gateway.lookup("local", "zzxqv", "en") == []


def test_lookup_multiple_senses_all_returned(gateway):
    records = gateway.lookup("local", "service", "en")
    assert [r.definition for r in records] == [
        "help or advice",
        "a routine inspection and maintenance of a vehicle",
    ]


def test_lookup_unknown_provider(gateway):
    with pytest.raises(UnknownProvider):
        gateway.lookup("nope", "car", "en")


def test_lookup_unsupported_language(gateway):
    with pytest.raises(UnsupportedLanguage):
        gateway.lookup("local", "car", "fr")


def test_lookup_empty_term_rejected(gateway):
    with pytest.raises(ValueError):
        gateway.lookup("local", "", "en")


def test_record_invariants_on_every_result(gateway):
    for term in ("vehicle", "service", "car", "mot"):
        for record in gateway.lookup("local", term, "en"):
            assert record.definition
            assert record.language
            assert "://" in record.source


# --- caching ----------------------------------------------------------------------


def test_second_lookup_served_from_cache(tmp_path):
    calls = []

    def fetch(provider, term, language):
        calls.append(term)
        return [DefinitionRecord(term, language, provider.base_url, f"def of {term}")]

    gateway = DictionaryGateway([http_provider()], tmp_path / "cache", fetchers={"web": fetch})
    first = gateway.lookup("web", "Car", "en")
    second = gateway.lookup("web", "car", "en")
    assert calls == ["car"]
    assert first == second
    assert first[0].term == "car"


def test_empty_result_is_cached(tmp_path):
    calls = []

    def fetch(provider, term, language):
        calls.append(term)
        return []

    gateway = DictionaryGateway([http_provider()], tmp_path / "cache", fetchers={"web": fetch})
    assert gateway.lookup("web", "ghost", "en") == []
    assert gateway.lookup("web", "ghost", "en") == []
    assert calls == ["ghost"]


def test_http_provider_without_fetcher_cold_cache(tmp_path):
    gateway = DictionaryGateway([http_provider()], tmp_path / "cache")
    with pytest.raises(ProviderUnavailable):
        gateway.lookup("web", "car", "en")


def test_warm_cache_survives_provider_outage(tmp_path):
    healthy = lambda provider, term, language: [
        DefinitionRecord(term, language, provider.base_url, "cached def")
    ]
    cache_dir = tmp_path / "cache"
    gateway = DictionaryGateway([http_provider()], cache_dir, fetchers={"web": healthy})
    before = gateway.lookup("web", "car", "en")

    def broken(provider, term, language):
        raise ConnectionError("socket closed")

    offline = DictionaryGateway([http_provider()], cache_dir, fetchers={"web": broken})
    assert offline.lookup("web", "car", "en") == before
    with pytest.raises(ProviderUnavailable):
        offline.lookup("web", "bus", "en")


def test_concurrent_cold_lookups_do_not_corrupt_cache(tmp_path):
    def fetch(provider, term, language):
        return [DefinitionRecord(term, language, provider.base_url, "racing def")]

    gateway = DictionaryGateway([http_provider()], tmp_path / "cache", fetchers={"web": fetch})
    results = []

    def worker():
        results.append(gateway.lookup("web", "car", "en"))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    assert all(result == results[0] for result in results)
    assert gateway.lookup("web", "car", "en") == results[0]


def test_cache_key_encoding_handles_odd_terms(tmp_path):
    def fetch(provider, term, language):
        return [DefinitionRecord(term, language, provider.base_url, "odd def")]

    gateway = DictionaryGateway([http_provider()], tmp_path / "cache", fetchers={"web": fetch})
    for term in ("a/b", "..", "con", "a b", "naïve"):
        assert gateway.lookup("web", term, "en")[0].definition == "odd def"
        assert gateway.lookup("web", term, "en")[0].term == term.casefold()
