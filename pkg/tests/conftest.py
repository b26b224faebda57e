from __future__ import annotations

from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def car_service_java() -> str:
    return (FIXTURES / "CarService.java").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def vehicle_wsdl() -> str:
    return (FIXTURES / "vehicle_service.wsdl").read_text(encoding="utf-8")


@pytest.fixture
def gateway(tmp_path):
    from codelex.dictionary import DictionaryGateway

    return DictionaryGateway.default(cache_dir=tmp_path / "cache")
