"""
Storage service module for result files.

This module provides one place for every file the tools write or read back:
1. Consistent error handling and retries
2. Atomic writes (temporary file + rename)
3. Permission checking
4. JSON schema validation of documents against the pydantic models
"""

import json
import logging
import os
import time
from abc import ABC, abstractmethod
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar, Union

import jsonschema
from pydantic import BaseModel, ValidationError

from ..core.exceptions import StorageError, StorageNotFoundError, StoragePermissionError

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


@lru_cache(maxsize=None)
def schema_for(model: Type[BaseModel]) -> Dict[str, Any]:
    """JSON schema of a model in its by-alias serialized form."""
    return model.model_json_schema(by_alias=True, mode="serialization")


class StorageBase(ABC):
    """
    Interface for storage backends.

    Args:
        max_retries (int): Maximum number of attempts per operation
        retry_delay (float): Delay in seconds between attempts
    """

    def __init__(self, max_retries: int = 3, retry_delay: float = 0.5):
        self.max_retries = max_retries
        self.retry_delay = retry_delay

    @abstractmethod
    def read(self, path: Union[str, Path]) -> Any:
        """Read data from storage."""

    @abstractmethod
    def write(self, path: Union[str, Path], data: Any) -> None:
        """Write data to storage."""

    @abstractmethod
    def exists(self, path: Union[str, Path]) -> bool:
        """Check if path exists in storage."""


class FileSystemStorage(StorageBase):
    """
    File system storage for JSON documents and plain text.

    Writes go to `<name>.tmp` next to the target and are moved into place with
    os.replace, so readers never see a partial file.
    """

    def _check_path_permissions(self, path: Path, check_write: bool = False) -> None:
        """
        Raises:
            StorageNotFoundError: If the parent directory is missing
            StoragePermissionError: If the required access is not granted
        """
        if not path.parent.exists():
            logger.error(f"Parent directory does not exist: {path.parent}")
            raise StorageNotFoundError(f"Parent directory does not exist: {path.parent}")
        if not os.access(path.parent, os.R_OK):
            logger.error(f"No read permission for directory: {path.parent}")
            raise StoragePermissionError(f"No read permission for directory: {path.parent}")
        if check_write and not os.access(path.parent, os.W_OK):
            logger.error(f"No write permission for directory: {path.parent}")
            raise StoragePermissionError(f"No write permission for directory: {path.parent}")
        if path.exists():
            if not os.access(path, os.R_OK):
                logger.error(f"No read permission for file: {path}")
                raise StoragePermissionError(f"No read permission for file: {path}")
            if check_write and not os.access(path, os.W_OK):
                logger.error(f"No write permission for file: {path}")
                raise StoragePermissionError(f"No write permission for file: {path}")

    def _read_text(self, path: Path) -> str:
        self._check_path_permissions(path)
        for attempt in range(self.max_retries):
            if not path.exists():
                logger.error(f"File not found: {path}")
                raise StorageNotFoundError(f"File not found: {path}")
            try:
                return path.read_text(encoding="utf-8")
            except OSError as e:
                logger.error(f"Error reading file (attempt {attempt + 1}/{self.max_retries}): {e}")
                if attempt == self.max_retries - 1:
                    raise StorageError(f"Failed to read {path} after {self.max_retries} attempts: {e}")
                time.sleep(self.retry_delay)
        raise StorageError(f"Failed to read {path}")

    def write_text(self, path: Union[str, Path], text: str) -> None:
        """
        Write text atomically with retries.

        Raises:
            StoragePermissionError: If there are permission issues
            StorageError: For other storage-related errors
        """
        path = Path(path)
        logger.info(f"Writing file: {path}")
        if not path.parent.exists():
            try:
                path.parent.mkdir(parents=True, exist_ok=True)
            except OSError as e:
                logger.error(f"Failed to create parent directory {path.parent}: {e}")
                raise StorageError(f"Failed to create parent directory {path.parent}: {e}")
        self._check_path_permissions(path, check_write=True)

        temp_path = path.with_name(path.name + ".tmp")
        for attempt in range(self.max_retries):
            try:
                temp_path.write_text(text, encoding="utf-8")
                os.replace(temp_path, path)
                logger.debug(f"Successfully wrote file: {path}")
                return
            except PermissionError as e:
                raise StoragePermissionError(f"Permission denied writing {path}: {e}")
            except OSError as e:
                logger.error(f"Error writing file (attempt {attempt + 1}/{self.max_retries}): {e}")
                if attempt == self.max_retries - 1:
                    raise StorageError(f"Failed to write {path} after {self.max_retries} attempts: {e}")
                time.sleep(self.retry_delay)
            finally:
                if temp_path.exists():
                    try:
                        temp_path.unlink()
                    except OSError as e:
                        logger.warning(f"Failed to clean up temporary file {temp_path}: {e}")

    def read(self, path: Union[str, Path]) -> Any:
        """
        Read a JSON document.

        Raises:
            StorageNotFoundError: If the file doesn't exist
            StorageError: If it is not valid JSON
        """
        path = Path(path)
        logger.info(f"Reading file: {path}")
        text = self._read_text(path)
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            logger.error(f"Invalid JSON in file {path}: {e}")
            raise StorageError(f"Invalid JSON in {path}: {e}")

    def write(self, path: Union[str, Path], data: Any) -> None:
        self.write_text(path, json.dumps(data, indent=2) + "\n")

    def exists(self, path: Union[str, Path]) -> bool:
        return Path(path).exists()

    def save_model(self, path: Union[str, Path], model: BaseModel) -> None:
        """Write a model in its by-alias JSON form."""
        self.write(path, model.model_dump(mode="json", by_alias=True))

    def load_model(self, path: Union[str, Path], model: Type[ModelT]) -> ModelT:
        """
        Read a document, check it against the model's JSON schema, then parse it.

        Raises:
            StorageError: If the document fails schema or model validation
        """
        data = self.read(path)
        try:
            jsonschema.validate(instance=data, schema=schema_for(model))
        except jsonschema.ValidationError as e:
            location = "/".join(str(p) for p in e.absolute_path) or "<root>"
            logger.error(f"{path} does not match the {model.__name__} schema at {location}: {e.message}")
            raise StorageError(f"{path}: not a valid {model.__name__} document ({location}: {e.message})")
        try:
            return model.model_validate(data)
        except ValidationError as e:
            logger.error(f"{path} failed {model.__name__} validation: {e}")
            raise StorageError(f"{path}: not a valid {model.__name__} document: {e}")


def dump_json(model: Optional[BaseModel] = None, data: Any = None) -> str:
    """Deterministic JSON text for stdout."""
    if model is not None:
        data = model.model_dump(mode="json", by_alias=True)
    return json.dumps(data, indent=2, sort_keys=False)


file_storage = FileSystemStorage()
