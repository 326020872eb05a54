"""Tests for the storage service module."""

import json
import os
from pathlib import Path
from unittest.mock import patch

import pytest

from app.core.exceptions import StorageError, StorageNotFoundError
from app.models.schemas import GameConfig, SolveReport, Transcript
from app.services.game_engine import play_match
from app.services.storage import FileSystemStorage, StorageBase, dump_json
from app.services.strategies import GreedyWeightRemover, PushAllPusher


@pytest.fixture
def test_data():
    """Create test data for file operations."""
    return {
        "test_key": "test_value",
        "nested": {
            "key": "value"
        }
    }


def test_read_existing_file(tmp_path, storage, test_data):
    """Test reading an existing JSON file."""
    test_file = tmp_path / "test.json"
    test_file.write_text(json.dumps(test_data))

    assert storage.read(test_file) == test_data


def test_read_nonexistent_file(tmp_path, storage):
    """Test reading a nonexistent file raises StorageNotFoundError."""
    with pytest.raises(StorageNotFoundError):
        storage.read(tmp_path / "nonexistent.json")


def test_read_invalid_json(tmp_path, storage):
    """Test reading an invalid JSON file raises StorageError."""
    test_file = tmp_path / "invalid.json"
    test_file.write_text("invalid json")

    with pytest.raises(StorageError):
        storage.read(test_file)


def test_write_new_file(tmp_path, storage, test_data):
    """Test writing data to a new file, creating missing parents."""
    test_file = tmp_path / "nested" / "new.json"

    storage.write(test_file, test_data)

    assert test_file.exists()
    assert json.loads(test_file.read_text()) == test_data
    assert not (tmp_path / "nested" / "new.json.tmp").exists()


def test_write_existing_file(tmp_path, storage, test_data):
    """Test overwriting an existing file."""
    test_file = tmp_path / "existing.json"
    test_file.write_text(json.dumps({"old": "data"}))

    storage.write(test_file, test_data)

    assert storage.read(test_file) == test_data


def test_write_failure_cleans_up_temp_file(tmp_path, storage):
    """A failed rename leaves neither a partial target nor the temporary file."""
    test_file = tmp_path / "fail.json"
    with patch("app.services.storage.os.replace", side_effect=OSError("disk full")):
        with pytest.raises(StorageError):
            storage.write(test_file, {"a": 1})
    assert not test_file.exists()
    assert not (tmp_path / "fail.json.tmp").exists()


def test_write_retries_transient_errors(tmp_path, test_data):
    """One transient failure is retried."""
    storage = FileSystemStorage(max_retries=2, retry_delay=0)
    test_file = tmp_path / "retry.json"
    real_replace = os.replace
    calls = []

    def flaky_replace(src, dst):
        calls.append(dst)
        if len(calls) == 1:
            raise OSError("busy")
        real_replace(src, dst)

    with patch("app.services.storage.os.replace", side_effect=flaky_replace):
        storage.write(test_file, test_data)
    assert len(calls) == 2
    assert storage.read(test_file) == test_data


def test_exists(tmp_path, storage):
    test_file = tmp_path / "exists.json"
    assert not storage.exists(test_file)
    test_file.touch()
    assert storage.exists(test_file)


def test_transcript_round_trip(tmp_path, storage, general_2_1):
    """Test saving a transcript and loading it back through schema validation."""
    transcript = play_match(PushAllPusher(general_2_1), GreedyWeightRemover(general_2_1), general_2_1)
    path = tmp_path / "transcript.json"

    storage.save_model(path, transcript)

    raw = json.loads(path.read_text())
    assert raw["roundCount"] == transcript.round_count
    assert storage.load_model(path, Transcript) == transcript


def test_load_model_rejects_schema_violations(tmp_path, storage):
    """A document with the wrong shape fails the schema check."""
    path = tmp_path / "report.json"
    path.write_text(json.dumps({"k": 2, "N": "three", "variant": "general", "outcome": "PusherWin"}))

    with pytest.raises(StorageError, match="SolveReport"):
        storage.load_model(path, SolveReport)


def test_load_model_rejects_model_violations(tmp_path, storage):
    """Cross-field rules live in the model, not the schema."""
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"k": 2, "N": 3, "variant": "restricted"}))

    with pytest.raises(StorageError, match="GameConfig"):
        storage.load_model(path, GameConfig)


def test_dump_json_uses_aliases():
    report = SolveReport(k=2, N=1, variant="general", outcome="RemoverWin", states_explored=3)
    assert json.loads(dump_json(report))["statesExplored"] == 3
    assert dump_json(data=[1, 2]) == "[\n  1,\n  2\n]"


def test_storage_base_is_abstract():
    with pytest.raises(TypeError):
        StorageBase()


def test_missing_parent_for_read(storage):
    with pytest.raises(StorageNotFoundError):
        storage.read(Path("/nonexistent-dir-for-tests/file.json"))
