"""Shared test utilities: independent oracles and fixture builders.

The oracles here deliberately avoid the library's own code paths: the
edit-distance oracle is the plain exponential recursion, and the ranking
oracle re-derives scores from set operations and the oracle distance.
"""

from __future__ import annotations

import random

from codelex.interface_parser import InterfaceModel, MethodDecl, ParameterDecl, SourceType
from codelex.matcher import ConceptRequirement, MatchRequest
from codelex.metadata import AnnotationTarget, KeywordAnnotation, MetadataScript
from codelex.tokenizer import tokenize

VEHICLE_DEF = "a car, lorry, bus, etc., for transporting people or goods on land"
SERVICE_INSPECTION_DEF = "a routine inspection and maintenance of a vehicle"
SERVICE_ADVICE_DEF = "help or advice"
DICT_URL = "http://dictionary.example.org/en"


def oracle_levenshtein(a: str, b: str) -> int:
    """Exponential-time recursive edit distance, case-folded like the library."""
    a, b = a.casefold(), b.casefold()

    def walk(i: int, j: int) -> int:
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        cost = 0 if a[i] == b[j] else 1
        return min(
            walk(i + 1, j) + 1,
            walk(i, j + 1) + 1,
            walk(i + 1, j + 1) + cost,
        )

    return walk(0, 0)


def model_from_names(
    interface_name: str,
    methods: dict[str, list[str]],
    source_type: SourceType = SourceType.JAVA,
) -> InterfaceModel:
    """Build an InterfaceModel from {method name: [parameter names]}."""
    suffix = ".java" if source_type is SourceType.JAVA else ".wsdl"
    return InterfaceModel(
        source_file=f"{interface_name}{suffix}",
        source_type=source_type,
        interface_name=interface_name,
        methods=[
            MethodDecl(
                name=name,
                tokens=tokenize(name),
                parameters=[
                    ParameterDecl(name=p, tokens=tokenize(p)) for p in params
                ],
            )
            for name, params in methods.items()
        ],
    )


def build_matching_scenario() -> tuple[MatchRequest, list[tuple[str, MetadataScript]]]:
    """Two advertised services and the request that should prefer the first.

    Site 1 exposes keywords {service, vehicle, mot} with the inspection
    definition on "service" and the land-transport definition on "vehicle";
    site 2 exposes {service, cars, mot, classical, purchase} with the
    help-or-advice definition on "service".  The request asks for "car" and
    for "service" meaning a routine vehicle inspection.
    """
    site1 = MetadataScript.from_model(
        model_from_names("Site1", {"serviceVehicleMot": []})
    )
    site1.add_annotation(
        AnnotationTarget("serviceVehicleMot"),
        KeywordAnnotation("service", "en", DICT_URL, SERVICE_INSPECTION_DEF),
    )
    site1.add_annotation(
        AnnotationTarget("serviceVehicleMot"),
        KeywordAnnotation("vehicle", "en", DICT_URL, VEHICLE_DEF),
    )

    site2 = MetadataScript.from_model(
        model_from_names("Site2", {"serviceCarsMotClassicalPurchase": []})
    )
    site2.add_annotation(
        AnnotationTarget("serviceCarsMotClassicalPurchase"),
        KeywordAnnotation("service", "en", DICT_URL, SERVICE_ADVICE_DEF),
    )

    request = MatchRequest((
        ConceptRequirement("car"),
        ConceptRequirement("service", desired_definition=SERVICE_INSPECTION_DEF),
    ))
    return request, [("site1", site1), ("site2", site2)]


_METHOD_NAMES = [
    "getCarType", "serviceVehicle", "checkStatus", "bookSlot", "findOwner",
    "updateRecord", "listItems2", "parseXMLFile", "registerUser", "cancelBooking",
]
_PARAM_NAMES = [
    "carId", "regNumber", "serviceType", "ownerName", "slotId", "dateFrom",
    "maxResults", "userToken",
]
_TERMS = [
    "car", "Vehicle", "SERVICE", "mot", "status", "naïve", "köln", "Straße",
    "owner", "booking", "ДВИГАТЕЛЬ", "引擎",
]
_LANGUAGES = ["en", "fr", "de-AT", "zh-Hant", "ru"]
_DEFINITIONS = [
    "a road vehicle with an engine",
    "help or advice",
    "routine inspection and maintenance",
    "Fahrzeug für Personen, ein Auto",
    "multi\nline definition\twith tabs",
    "  padded definition  ",
    "测试用的定义文本",
]


def random_script(rng: random.Random) -> MetadataScript:
    """A script with random structure, annotations, and descriptions."""
    method_names = rng.sample(_METHOD_NAMES, rng.randint(0, 5))
    methods = {
        name: rng.sample(_PARAM_NAMES, rng.randint(0, 3)) for name in method_names
    }
    source_type = rng.choice([SourceType.JAVA, SourceType.WSDL])
    script = MetadataScript.from_model(
        model_from_names(f"Iface{rng.randint(0, 999)}", methods, source_type)
    )
    for method_name, params in methods.items():
        if rng.random() < 0.3:
            script.set_description(method_name, rng.choice(_DEFINITIONS))
        for _ in range(rng.randint(0, 3)):
            target = AnnotationTarget(
                method_name,
                rng.choice([None] + params) if params else None,
            )
            script.add_annotation(target, random_annotation(rng))
    return script


def random_annotation(rng: random.Random) -> KeywordAnnotation:
    return KeywordAnnotation(
        term=rng.choice(_TERMS),
        language=rng.choice(_LANGUAGES),
        source=f"http://dict{rng.randint(0, 99)}.example.org/q",
        definition=rng.choice(_DEFINITIONS) + f" #{rng.randint(0, 9999)}",
    )


def random_targets(script: MetadataScript) -> list[AnnotationTarget]:
    """All valid annotation targets of a script."""
    targets: list[AnnotationTarget] = []
    for method_name, entry in script.entries.items():
        targets.append(AnnotationTarget(method_name))
        targets.extend(
            AnnotationTarget(method_name, param) for param in entry.parameters
        )
    return targets
