"""Ladder specs shipped with the package."""

import json
from importlib import resources

from .ladder import LadderSpec


def fixture_names() -> list[str]:
    root = resources.files(__package__) / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def fixture_path(name: str):
    return resources.files(__package__) / "fixtures" / f"{name}.json"


def load_fixture(name: str) -> LadderSpec:
    return LadderSpec.from_json(json.loads(fixture_path(name).read_text(encoding="utf-8")))
