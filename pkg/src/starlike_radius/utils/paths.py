"""Output path helpers."""

from __future__ import annotations

import sys
from pathlib import Path
from typing import TextIO

from ..core.errors import DomainError

__all__ = ["ensure_directory", "resolve_output", "write_output"]


def ensure_directory(path: str | Path) -> Path:
    """Ensure the directory ``path`` exists and return it as ``Path``."""

    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def resolve_output(path: str | Path | None) -> Path | None:
    """Return ``None`` for standard output (``None`` or ``"-"``), else a path with its parent created."""

    if path is None or str(path) == "-":
        return None
    target = Path(path)
    if target.exists() and target.is_dir():
        raise DomainError(f"output path {target} is a directory")
    ensure_directory(target.parent if str(target.parent) else ".")
    return target


def write_output(text: str, path: str | Path | None, *, stream: TextIO | None = None) -> None:
    """Write ``text`` to ``path`` or to standard output with ``\\n`` line endings left untouched."""

    target = resolve_output(path)
    if target is None:
        out = stream or sys.stdout
        out.write(text)
        out.flush()
        return
    with target.open("w", encoding="utf-8", newline="") as fh:
        fh.write(text)
