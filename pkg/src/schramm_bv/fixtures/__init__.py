"""JSON fixtures for the worked examples shipped with the package."""

from pathlib import Path

FIXTURES_DIR = Path(__file__).parent


def fixture_path(name: str) -> Path:
    """
    Path of a shipped fixture, with or without the .json suffix.

    Raises:
        FileNotFoundError: No fixture of that name.
    """
    path = FIXTURES_DIR / (name if name.endswith(".json") else f"{name}.json")
    if not path.is_file():
        raise FileNotFoundError(f"no fixture named {name!r}")
    return path


def fixture_names() -> list[str]:
    return sorted(p.stem for p in FIXTURES_DIR.glob("*.json"))


__all__ = ["FIXTURES_DIR", "fixture_names", "fixture_path"]
