from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Iterator

import pytest

import starlike_radius.api as starlike_api
from starlike_radius.config import loader
from starlike_radius.core.manager import GLOBAL_MANAGER


@pytest.fixture(autouse=True)
def isolated_config(tmp_path_factory: pytest.TempPathFactory, monkeypatch: pytest.MonkeyPatch) -> None:
    user_dir = tmp_path_factory.mktemp("user-config")
    monkeypatch.setattr(loader, "user_config_dir", lambda _: str(user_dir))
    monkeypatch.delenv("STARLIKE_RADIUS_SCAN_N", raising=False)
    for key in list(os.environ):
        if key.startswith("STARLIKE_RADIUS__"):
            monkeypatch.delenv(key)


@pytest.fixture(autouse=True)
def reset_starlike_radius() -> Iterator[None]:
    yield
    GLOBAL_MANAGER.shutdown()
    starlike_api._CONFIGURED = False
    starlike_api._SETTINGS = None
    root = logging.getLogger()
    root.handlers = []
    root.setLevel(logging.NOTSET)
    logging.captureWarnings(False)


@pytest.fixture
def project_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    directory = tmp_path / "project"
    directory.mkdir()
    monkeypatch.chdir(directory)
    return directory
