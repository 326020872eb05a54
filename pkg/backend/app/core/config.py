from pathlib import Path
from typing import Optional, Union

from .exceptions import StorageError
from .logging import logger
from .settings import settings


class PathConfig:
    """Configuration for result file paths."""

    def __init__(self, output_dir: Optional[Union[str, Path]] = None):
        self.project_root = Path.cwd()
        self.output_dir = Path(output_dir or settings.OUTPUT_DIR)
        if not self.output_dir.is_absolute():
            self.output_dir = self.project_root / self.output_dir

    def is_within_dir(self, path: Path, directory: Path) -> bool:
        """Check if a path is within a directory."""
        try:
            path.resolve().relative_to(directory.resolve())
            return True
        except (ValueError, RuntimeError, OSError):
            return False

    def resolve_output(self, path: Union[str, Path]) -> Path:
        """
        Turn an --output argument into a writable path.

        Absolute paths are used as given. Relative names go under the output
        directory and may not climb out of it with "..".

        Raises:
            StorageError: On parent traversal or an uncreatable directory
        """
        path = Path(path)
        if not path.is_absolute():
            if ".." in path.parts:
                logger.debug(f"Rejecting output path with .. references: {path}")
                raise StorageError(f"relative output path may not contain '..': {path}")
            path = self.output_dir / path
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise StorageError(f"cannot create {path.parent}: {e}")
        logger.debug(f"Output path resolved to {path}")
        return path

    def make_relative_to_root(self, path: Union[str, Path]) -> Path:
        """Shorten a path for log and report output when it lies under the project root."""
        path = Path(path)
        try:
            resolved = path.resolve()
            if self.project_root in resolved.parents:
                return resolved.relative_to(self.project_root)
            return path
        except (ValueError, RuntimeError):
            return path
