"""Packaged pattern, machine and data fixtures."""

from importlib import resources
from pathlib import Path


def fixture_path(name: str) -> Path:
    """Filesystem path of a packaged fixture file."""
    path = Path(str(resources.files(__package__) / name))
    if not path.exists():
        raise FileNotFoundError(f"no fixture named {name!r}")
    return path


def load_text(name: str) -> str:
    return fixture_path(name).read_text()
