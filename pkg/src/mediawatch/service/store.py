"""Durable state: append-only JSONL document segments plus small JSON
snapshots for rebuildable side state.

One segment file per publication day (docs-YYYY-MM-DD.jsonl). Records are
full document snapshots; an update is just a later line with the same
doc_id, and loading takes the last record per id. Every append is flushed
line-atomically, so a killed process loses at most a partial final line,
which the loader tolerates and counts. Nothing is ever rewritten in place
except the snapshot files, which are replaced atomically.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from datetime import datetime, timezone
from pathlib import Path

from mediawatch.ingest.models import Document

log = logging.getLogger(__name__)

AUDIT_FILE = "audit.jsonl"
REPORTS_FILE = "reports.jsonl"


class Store:
    """Single-writer store; concurrent readers get consistent snapshots."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.RLock()
        self._handles: dict[Path, object] = {}
        self.corrupt_lines = 0

    def close(self) -> None:
        with self._lock:
            for fh in self._handles.values():
                fh.close()
            self._handles.clear()

    def __enter__(self) -> "Store":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # documents

    def segment_path(self, doc: Document) -> Path:
        day = doc.published_at.astimezone(timezone.utc).date()
        return self.root / f"docs-{day.isoformat()}.jsonl"

    def put_document(self, doc: Document) -> None:
        self._append(self.segment_path(doc), doc.to_dict())

    def load_documents(self) -> dict[str, Document]:
        """All documents, last record per doc_id winning.

        Segment files are read in name (date) order; corrupt or truncated
        lines are skipped and counted, never fatal.
        """
        docs: dict[str, Document] = {}
        self.corrupt_lines = 0
        for path in sorted(self.root.glob("docs-*.jsonl")):
            for record in self._read_jsonl(path):
                try:
                    doc = Document.from_dict(record)
                except (KeyError, TypeError, ValueError) as exc:
                    self.corrupt_lines += 1
                    log.warning("%s: undecodable document record: %s", path, exc)
                    continue
                docs[doc.doc_id] = doc
        return docs

    # audit log

    def append_audit(self, actor: str, action: str, payload: dict) -> None:
        record = {
            "at": datetime.now(timezone.utc).isoformat(),
            "actor": actor,
            "action": action,
            **payload,
        }
        self._append(self.root / AUDIT_FILE, record)

    def read_audit(self) -> list[dict]:
        return list(self._read_jsonl(self.root / AUDIT_FILE))

    # reports

    def put_report(self, record: dict) -> None:
        self._append(self.root / REPORTS_FILE, record)

    def load_reports(self) -> dict[str, dict]:
        out: dict[str, dict] = {}
        for record in self._read_jsonl(self.root / REPORTS_FILE):
            if "report_id" in record:
                out[record["report_id"]] = record
        return out

    # snapshot state (rebuildable; replaced atomically)

    def save_state(self, name: str, obj) -> None:
        path = self.root / f"{name}.json"
        tmp = path.with_suffix(".json.tmp")
        with self._lock:
            tmp.write_text(json.dumps(obj), encoding="utf-8")
            os.replace(tmp, path)

    def load_state(self, name: str, default=None):
        path = self.root / f"{name}.json"
        if not path.exists():
            return default
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            log.warning("%s: unreadable state snapshot: %s", path, exc)
            return default

    # plumbing

    def _append(self, path: Path, record: dict) -> None:
        line = json.dumps(record, ensure_ascii=False)
        with self._lock:
            fh = self._handles.get(path)
            if fh is None:
                fh = path.open("a", encoding="utf-8")
                self._handles[path] = fh
            fh.write(line + "\n")
            fh.flush()

    def _read_jsonl(self, path: Path):
        if not path.exists():
            return
        with path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    yield json.loads(line)
                except json.JSONDecodeError:
                    # torn tail after a crash, or foreign junk: skip
                    self.corrupt_lines += 1
                    log.warning("%s:%d: skipping undecodable line", path, lineno)
