"""Durable store for the expert validation workflow.

Candidates (terms, patterns, pairs) are pending items keyed by a content
hash of their identity, so a candidate rediscovered on a later pass folds
into the existing item instead of reappearing. State is two append-only
JSON Lines logs (insertions and decisions) that are fsynced before an
operation reports success; replaying them reconstructs the store exactly.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from .errors import BusyError, ConfigError, ConflictError, DataError, NotFoundError

PENDING = "pending"
ACCEPTED = "accepted"
REJECTED = "rejected"
STATUSES = (PENDING, ACCEPTED, REJECTED)
KINDS = ("term", "pattern", "pair")


def item_id(kind: str, identity: dict) -> str:
    canon = json.dumps({"kind": kind, "identity": identity},
                       sort_keys=True, ensure_ascii=False,
                       separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]


@dataclass
class ValidationItem:
    id: str
    kind: str
    payload: dict
    score: float = 0.0
    status: str = PENDING
    decided_at: str | None = None
    decided_by: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Candidate:
    """What an engine proposes: identity decides the id, payload is display."""

    kind: str
    identity: dict
    payload: dict
    score: float = 0.0


class Store:
    """Single-directory persistent item store with an iteration counter."""

    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._items_log = self.directory / "items.jsonl"
        self._decisions_log = self.directory / "decisions.jsonl"
        self._meta_file = self.directory / "meta.json"
        self._items: dict[str, ValidationItem] = {}
        self._order: list[str] = []
        self.iteration = 0
        self._run_lock = threading.Lock()
        self._load()

    def _load(self):
        for record in _read_log(self._items_log):
            item = ValidationItem(
                id=record["id"], kind=record["kind"],
                payload=record["payload"], score=record.get("score", 0.0))
            if item.id not in self._items:
                self._items[item.id] = item
                self._order.append(item.id)
        for record in _read_log(self._decisions_log):
            item = self._items.get(record["id"])
            if item is None:
                raise DataError(f"decision for unknown item {record['id']}",
                                path=self._decisions_log)
            item.status = record["verdict"]
            item.decided_at = record["at"]
            item.decided_by = record["who"]
        if self._meta_file.exists():
            meta = json.loads(self._meta_file.read_text(encoding="utf-8"))
            self.iteration = int(meta.get("iteration", 0))

    def insert(self, candidate: Candidate) -> tuple[ValidationItem, bool]:
        """Add a candidate as pending; an already-known identity is a no-op."""
        if candidate.kind not in KINDS:
            raise ConfigError(f"unknown item kind {candidate.kind!r}")
        iid = item_id(candidate.kind, candidate.identity)
        if iid in self._items:
            return self._items[iid], False
        item = ValidationItem(id=iid, kind=candidate.kind,
                              payload=candidate.payload, score=candidate.score)
        _append_log(self._items_log, {
            "id": item.id, "kind": item.kind, "payload": item.payload,
            "score": item.score})
        self._items[item.id] = item
        self._order.append(item.id)
        return item, True

    def get(self, iid: str) -> ValidationItem:
        if iid not in self._items:
            raise NotFoundError(f"no item with id {iid}")
        return self._items[iid]

    def decide(self, iid: str, verdict: str, who: str) -> ValidationItem:
        """Record an expert verdict; durable before it returns."""
        if verdict not in (ACCEPTED, REJECTED):
            raise ConfigError(f"verdict must be accepted or rejected, got {verdict!r}")
        item = self.get(iid)
        if item.status != PENDING:
            raise ConflictError(f"item {iid} already {item.status}")
        at = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        _append_log(self._decisions_log, {
            "id": iid, "verdict": verdict, "who": who, "at": at})
        item.status = verdict
        item.decided_at = at
        item.decided_by = who
        return item

    def items(self, kind: str | None = None,
              status: str | None = None) -> list[ValidationItem]:
        out = [self._items[i] for i in self._order]
        if kind is not None:
            out = [i for i in out if i.kind == kind]
        if status is not None:
            out = [i for i in out if i.status == status]
        out.sort(key=lambda i: (i.kind, -i.score, i.id))
        return out

    def counts(self) -> dict[str, int]:
        out = {status: 0 for status in STATUSES}
        for item in self._items.values():
            out[item.status] += 1
        return out

    def run_iteration(self, engine) -> dict:
        """One engine turn under the store's exclusive run lock."""
        if engine is None:
            raise ConfigError("no acquisition engine configured")
        if not self._run_lock.acquire(blocking=False):
            raise BusyError("an iteration is already running")
        try:
            new = 0
            for candidate in engine.turn(self):
                _, created = self.insert(candidate)
                if created:
                    new += 1
            self.iteration += 1
            self._write_meta()
            return {"new_candidates": new, "iteration": self.iteration}
        finally:
            self._run_lock.release()

    def _write_meta(self):
        tmp = self._meta_file.with_suffix(".tmp")
        tmp.write_text(json.dumps({"iteration": self.iteration}),
                       encoding="utf-8")
        os.replace(tmp, self._meta_file)


def _append_log(path: Path, record: dict) -> None:
    line = json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n"
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(line)
        fh.flush()
        os.fsync(fh.fileno())


def _read_log(path: Path):
    if not path.exists():
        return
    lines = path.read_text(encoding="utf-8").splitlines()
    for idx, line in enumerate(lines):
        if not line.strip():
            continue
        try:
            yield json.loads(line)
        except json.JSONDecodeError:
            if idx == len(lines) - 1:
                return  # torn tail from a crash mid-append
            raise DataError(f"corrupt log line {idx + 1}", path=path)
