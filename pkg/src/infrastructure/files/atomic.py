"""Atomic file writes: temp file in the target directory, then rename."""

import os
import tempfile
from pathlib import Path

from infrastructure.logging import get_logger

logger = get_logger(__name__)


def write_text_atomic(path: Path, text: str) -> Path:
    """Write ``text`` to ``path`` so readers see either the old file or the new one.

    Args:
        path: Destination file; parent directories are created
        text: UTF-8 content

    Returns:
        ``path``
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    logger.debug("Artifact written", path=str(path), bytes=len(text.encode("utf-8")))
    return path
