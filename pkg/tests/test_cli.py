import json
import shutil
import socket
import subprocess
import sys
import time
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest
from click.testing import CliRunner

from codelex.cli import main
from codelex.interface_parser import model_to_dict, parse_file
from codelex.matcher import rank_services, report_to_dict
from codelex.metadata import MetadataScript
from helpers import SERVICE_INSPECTION_DEF, build_matching_scenario


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def java_file(tmp_path, car_service_java):
    path = tmp_path / "CarService.java"
    path.write_text(car_service_java, encoding="utf-8")
    return path


def cache_args(tmp_path):
    return ["--cache-dir", str(tmp_path / "cli-cache")]


# --- parse -----------------------------------------------------------------


def test_parse_human_output(runner, java_file):
    result = runner.invoke(main, ["parse", str(java_file)])
    assert result.exit_code == 0
    assert "getCarType" in result.output
    assert "keywords:" in result.output


def test_parse_json_matches_library(runner, java_file):
    result = runner.invoke(main, ["parse", str(java_file), "--json"])
    assert result.exit_code == 0
    expected = json.dumps(model_to_dict(parse_file(java_file)), indent=2, ensure_ascii=False)
    assert result.output == expected + "\n"


def test_parse_unsupported_extension(runner, tmp_path):
    path = tmp_path / "x.txt"
    path.write_text("hi", encoding="utf-8")
    result = runner.invoke(main, ["parse", str(path)])
    assert result.exit_code == 3
    assert "error: UnsupportedFileType" in result.output


def test_parse_broken_wsdl(runner, tmp_path):
    path = tmp_path / "broken.wsdl"
    path.write_text("<definitions><portType>", encoding="utf-8")
    result = runner.invoke(main, ["parse", str(path)])
    assert result.exit_code == 2
    assert "error: ParseError" in result.output


# --- lookup -----------------------------------------------------------------


def test_lookup_local_provider(runner, tmp_path):
    result = runner.invoke(
        main, ["lookup", "vehicle", "--provider", "local"] + cache_args(tmp_path)
    )
    assert result.exit_code == 0
    assert "for transporting people or goods on land" in result.output


def test_lookup_unknown_term(runner, tmp_path):
    result = runner.invoke(
        main, ["lookup", "zzxqv", "--provider", "local"] + cache_args(tmp_path)
    )
    assert result.exit_code == 0
    assert "no definitions" in result.output


def test_lookup_unknown_provider(runner, tmp_path):
    result = runner.invoke(
        main, ["lookup", "x", "--provider", "nope"] + cache_args(tmp_path)
    )
    assert result.exit_code == 4
    assert "error: UnknownProvider" in result.output


def test_lookup_json_matches_library(runner, tmp_path):
    from codelex.dictionary import DictionaryGateway

    result = runner.invoke(
        main,
        ["lookup", "service", "--provider", "local", "--json"] + cache_args(tmp_path),
    )
    assert result.exit_code == 0
    gateway = DictionaryGateway.default(tmp_path / "lib-cache")
    expected = json.dumps(
        [r.to_dict() for r in gateway.lookup("local", "service", "en")],
        indent=2,
        ensure_ascii=False,
    )
    assert result.output == expected + "\n"


# --- init / annotate / export --------------------------------------------------


def test_init_creates_script(runner, java_file):
    result = runner.invoke(main, ["init", str(java_file)])
    assert result.exit_code == 0
    out_path = java_file.with_suffix(".metadata.xml")
    assert out_path.exists()
    script = MetadataScript.from_xml(out_path.read_bytes())
    assert list(script.entries) == ["getCarType", "serviceVehicle", "checkMOTStatus"]
    assert script.annotation_count() == 0


def test_init_refuses_overwrite(runner, java_file):
    assert runner.invoke(main, ["init", str(java_file)]).exit_code == 0
    again = runner.invoke(main, ["init", str(java_file)])
    assert again.exit_code == 6
    forced = runner.invoke(main, ["init", str(java_file), "--force"])
    assert forced.exit_code == 0


def test_init_unsupported_file(runner, tmp_path):
    path = tmp_path / "notes.txt"
    path.write_text("x", encoding="utf-8")
    assert runner.invoke(main, ["init", str(path)]).exit_code == 3


def test_annotate_appends_keyword(runner, java_file, tmp_path):
    runner.invoke(main, ["init", str(java_file)])
    script_path = java_file.with_suffix(".metadata.xml")
    result = runner.invoke(main, [
        "annotate", str(script_path),
        "--method", "serviceVehicle",
        "--term", "vehicle",
        "--provider", "local",
    ] + cache_args(tmp_path))
    assert result.exit_code == 0, result.output
    root = ET.fromstring(script_path.read_bytes())
    keywords = root.findall("./method[@name='serviceVehicle']/keyword")
    assert len(keywords) == 1
    assert keywords[0].get("term") == "vehicle"


def test_annotate_parameter_target(runner, java_file, tmp_path):
    runner.invoke(main, ["init", str(java_file)])
    script_path = java_file.with_suffix(".metadata.xml")
    result = runner.invoke(main, [
        "annotate", str(script_path),
        "--method", "getCarType", "--param", "carId",
        "--term", "car",
        "--provider", "local",
    ] + cache_args(tmp_path))
    assert result.exit_code == 0
    script = MetadataScript.from_xml(script_path.read_bytes())
    assert len(script.entries["getCarType"].parameters["carId"]) == 1


def test_annotate_pick_out_of_range(runner, java_file, tmp_path):
    runner.invoke(main, ["init", str(java_file)])
    script_path = java_file.with_suffix(".metadata.xml")
    result = runner.invoke(main, [
        "annotate", str(script_path),
        "--method", "serviceVehicle",
        "--term", "service",
        "--provider", "local",
        "--pick", "5",
    ] + cache_args(tmp_path))
    assert result.exit_code == 5
    assert "2 definition(s)" in result.output


def test_annotate_unknown_method(runner, java_file, tmp_path):
    runner.invoke(main, ["init", str(java_file)])
    script_path = java_file.with_suffix(".metadata.xml")
    result = runner.invoke(main, [
        "annotate", str(script_path),
        "--method", "nope",
        "--term", "vehicle",
        "--provider", "local",
    ] + cache_args(tmp_path))
    assert result.exit_code == 5
    assert "error: UnknownTarget" in result.output


def test_export_prints_script(runner, tmp_path):
    _, candidates = build_matching_scenario()
    project_dir = tmp_path / "proj"
    project_dir.mkdir()
    xml = candidates[0][1].to_xml()
    (project_dir / "script.xml").write_bytes(xml)
    result = runner.invoke(main, ["export", str(project_dir)])
    assert result.exit_code == 0
    assert result.output.encode("utf-8") == xml


# --- match ---------------------------------------------------------------------


@pytest.fixture
def scenario_files(tmp_path):
    request_path = tmp_path / "request.json"
    request_path.write_text(json.dumps({
        "concepts": [
            {"concept": "car"},
            {"concept": "service", "desiredDefinition": SERVICE_INSPECTION_DEF},
        ]
    }), encoding="utf-8")
    _, candidates = build_matching_scenario()
    paths = []
    for service_id, script in candidates:
        path = tmp_path / f"{service_id}.xml"
        path.write_bytes(script.to_xml())
        paths.append(path)
    return request_path, paths


def test_match_scenario(runner, scenario_files):
    request_path, script_paths = scenario_files
    result = runner.invoke(
        main, ["match", "--request", str(request_path)] + [str(p) for p in script_paths]
    )
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0].startswith("1. site1")
    assert "total=0.95" in lines[0]
    assert "total=0.625" in result.output


def test_match_json_matches_library(runner, scenario_files):
    request_path, script_paths = scenario_files
    result = runner.invoke(
        main,
        ["match", "--request", str(request_path), "--json"] + [str(p) for p in script_paths],
    )
    assert result.exit_code == 0
    request, candidates = build_matching_scenario()
    expected = json.dumps(
        [report_to_dict(r) for r in rank_services(request, candidates)],
        indent=2,
        ensure_ascii=False,
    )
    assert result.output == expected + "\n"


def test_match_single_script(runner, scenario_files):
    request_path, script_paths = scenario_files
    result = runner.invoke(main, ["match", "--request", str(request_path), str(script_paths[0])])
    assert result.exit_code == 0
    ranks = [line for line in result.output.splitlines() if line[:1].isdigit()]
    assert len(ranks) == 1
    assert ranks[0].startswith("1. site1")


def test_match_empty_request(runner, scenario_files, tmp_path):
    _, script_paths = scenario_files
    empty = tmp_path / "empty.json"
    empty.write_text('{"concepts": []}', encoding="utf-8")
    result = runner.invoke(main, ["match", "--request", str(empty), str(script_paths[0])])
    assert result.exit_code == 5
    assert "error: InvalidRequest" in result.output


# --- serve ----------------------------------------------------------------------


def free_port() -> int:
    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        return probe.getsockname()[1]


def test_serve_port_in_use(runner, tmp_path):
    holder = socket.socket()
    holder.bind(("127.0.0.1", 0))
    port = holder.getsockname()[1]
    holder.listen(1)
    try:
        result = runner.invoke(main, [
            "serve", "--port", str(port), "--data-dir", str(tmp_path / "data"),
        ])
        assert result.exit_code == 7
        assert "error: PortInUse" in result.output
    finally:
        holder.close()


@pytest.mark.skipif(shutil.which("codelex") is None, reason="console script not installed")
def test_serve_answers_requests(tmp_path):
    import httpx

    port = free_port()
    data_dir = tmp_path / "served-data"
    process = subprocess.Popen(
        ["codelex", "serve", "--port", str(port), "--data-dir", str(data_dir)],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    try:
        deadline = time.time() + 20
        last_error = None
        while time.time() < deadline:
            try:
                response = httpx.get(f"http://127.0.0.1:{port}/dictionaries", timeout=1.0)
                assert response.status_code == 200
                assert [p["id"] for p in response.json()][:3] == [
                    "freedicts", "memidex", "synonymsdict",
                ]
                break
            except (httpx.HTTPError, AssertionError) as exc:
                last_error = exc
                time.sleep(0.25)
        else:
            pytest.fail(f"service never came up: {last_error}")
        assert data_dir.is_dir()  # missing data dir was created
    finally:
        process.terminate()
        process.wait(timeout=10)
