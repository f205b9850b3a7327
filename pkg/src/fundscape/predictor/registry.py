"""On-disk model registry: one metadata JSON plus one opaque blob per
(impact type, topic). Writes are atomic (tmp + rename) and append-only;
re-saving a model overwrites its pair of files in place."""

from __future__ import annotations

import json
import os
from pathlib import Path

from ..errors import ValidationError
from .boosting import blob_hash
from .train import TopicModelRecord


def _slug(topic: tuple) -> str:
    return "--".join(part.replace(" ", "_") for part in topic) or "root"


def _basename(impact_type: str, topic: tuple) -> str:
    return f"{impact_type}__{_slug(topic)}"


def _atomic_write(path: Path, data: bytes):
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def save_model(record: TopicModelRecord, directory) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    base = _basename(record.impact_type, record.topic)
    meta = {
        "impact_type": record.impact_type,
        "topic": list(record.topic),
        "blob_file": f"{base}.blob",
        "blob_hash": record.blob_hash,
        "test_auc": record.test_auc,
        "metadata": record.metadata,
    }
    _atomic_write(directory / f"{base}.blob", record.blob)
    meta_path = directory / f"{base}.json"
    _atomic_write(meta_path, json.dumps(meta, indent=2, sort_keys=True).encode())
    return meta_path


def load_models(directory, impact_type: str | None = None,
                ) -> list[TopicModelRecord]:
    """Load all models in a registry directory, oldest filename first.
    Blob hashes are verified on read."""
    directory = Path(directory)
    if not directory.is_dir():
        raise ValidationError(f"registry directory {directory} does not exist")
    records = []
    for meta_path in sorted(directory.glob("*.json")):
        meta = json.loads(meta_path.read_text())
        if impact_type is not None and meta["impact_type"] != impact_type:
            continue
        blob = (directory / meta["blob_file"]).read_bytes()
        if blob_hash(blob) != meta["blob_hash"]:
            raise ValidationError(
                f"{meta_path.name}: blob hash mismatch (corrupt registry?)"
            )
        records.append(
            TopicModelRecord(
                topic=tuple(meta["topic"]),
                impact_type=meta["impact_type"],
                blob=blob,
                blob_hash=meta["blob_hash"],
                test_auc=float(meta["test_auc"]),
                metadata=meta.get("metadata", {}),
            )
        )
    return records
