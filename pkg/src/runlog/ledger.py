"""
Run Ledger - Record every solver run for reproducibility and runtime analytics

This module appends one JSON line per CLI run to `<out>/runs.jsonl`, batching
writes so that scripted sweeps do not reopen the file per run.

Usage:
    from src.runlog.ledger import RunLedger, RunSummary

    ledger = RunLedger(Path("out/runs.jsonl"))
    ledger.log_run(
        command="spectrum",
        scenario_hash="3f2a...",
        n_atoms=2,
        status="ok",
        runtime_ms=412.5,
    )
    ledger.flush_and_close()

    summary = RunSummary(Path("out/runs.jsonl"))
    print(summary.status_counts(), summary.runtime_percentiles())
"""

import json
import logging
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional
from uuid import UUID, uuid4

import numpy as np

logger = logging.getLogger(__name__)

RUN_STATUSES = ("ok", "validation_error", "numerical_error", "error")


class RunLedger:
    """
    Batched JSON-lines writer for run records.

    Features:
    - Field validation on every entry
    - Batch flush on size threshold or explicit flush_and_close()
    - Failed writes are kept for the next flush
    """

    def __init__(self, path: Path, batch_size: int = 100):
        """
        Initialize run ledger.

        Args:
            path: JSON-lines file to append to
            batch_size: Number of entries to batch before writing (default: 100)
        """
        if batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {batch_size}")
        self.path = Path(path)
        self.batch_size = batch_size
        self._batch: List[Dict] = []
        self._lock = threading.Lock()

    def log_run(
        self,
        command: str,
        scenario_hash: Optional[str] = None,
        n_atoms: int = 0,
        status: str = "ok",
        runtime_ms: float = 0.0,
        error: Optional[str] = None,
        run_id: Optional[UUID] = None,
    ) -> None:
        """
        Record one run.

        Args:
            command: CLI command (dynamics, spectrum, scan, figure)
            scenario_hash: SHA-256 of the resolved scenario
            n_atoms: Atom count of the scenario (0 if unknown)
            status: One of ok, validation_error, numerical_error, error
            runtime_ms: Wall time in milliseconds
            error: Error message if the run failed
            run_id: Unique run ID (auto-generated if None)

        Raises:
            ValueError: If status is unknown or n_atoms/runtime are negative
        """
        if status not in RUN_STATUSES:
            raise ValueError(f"Status must be one of {', '.join(RUN_STATUSES)}, got {status}")
        if n_atoms < 0:
            raise ValueError("Atom count must be non-negative")
        if runtime_ms < 0:
            raise ValueError("Runtime must be non-negative")

        if run_id is None:
            run_id = uuid4()

        entry = {
            "run_id": str(run_id),
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "command": command,
            "scenario_hash": scenario_hash,
            "n_atoms": n_atoms,
            "status": status,
            "runtime_ms": round(float(runtime_ms), 3),
            "error": error,
        }

        with self._lock:
            self._batch.append(entry)
            if len(self._batch) >= self.batch_size:
                self._flush()

    def _flush(self) -> None:
        """Append the batch to the ledger file; caller holds the lock"""
        if not self._batch:
            return

        batch = self._batch[:]
        self._batch.clear()

        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as handle:
                for entry in batch:
                    handle.write(json.dumps(entry, sort_keys=True) + "\n")
            logger.debug(f"Flushed {len(batch)} run entries to {self.path}")
        except OSError as e:
            logger.error(f"Failed to write run ledger {self.path}: {e}")
            self._batch.extend(batch)

    def flush_and_close(self) -> None:
        """Write remaining entries. Call before exit."""
        with self._lock:
            if self._batch:
                self._flush()
        logger.debug("Run ledger closed")


class RunSummary:
    """
    Aggregates over a ledger file.

    Usage:
        summary = RunSummary(Path("out/runs.jsonl"))
        summary.status_counts()        # {"ok": 12, "numerical_error": 1}
        summary.runtime_percentiles()  # {"p50": ..., "p95": ..., "p99": ...}
    """

    def __init__(self, path: Path):
        self.path = Path(path)

    def entries(self, command: Optional[str] = None) -> List[Dict]:
        if not self.path.exists():
            return []
        with self.path.open(encoding="utf-8") as handle:
            rows = [json.loads(line) for line in handle if line.strip()]
        if command is not None:
            rows = [row for row in rows if row["command"] == command]
        return rows

    def status_counts(self, command: Optional[str] = None) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for row in self.entries(command):
            counts[row["status"]] = counts.get(row["status"], 0) + 1
        return counts

    def runtime_percentiles(self, command: Optional[str] = None) -> Dict[str, float]:
        """p50/p95/p99 runtimes in milliseconds (zeros when empty)"""
        runtimes = [row["runtime_ms"] for row in self.entries(command)]
        if not runtimes:
            return {"p50": 0.0, "p95": 0.0, "p99": 0.0}
        p50, p95, p99 = np.percentile(runtimes, [50, 95, 99])
        return {"p50": float(p50), "p95": float(p95), "p99": float(p99)}
