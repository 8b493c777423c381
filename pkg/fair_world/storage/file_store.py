import json
import os
import shutil
from typing import Any, Dict, List, Optional

import yaml

from ..exceptions import RecordStoreError, RunNotFoundError
from ..pipeline.records import AggregateRecord, ResultRecord
from .csv_codec import emit_aggregates, emit_records, parse_aggregates, parse_records
from .store import RecordStore

RECORDS_FILE = 'records.csv'
AGGREGATES_FILE = 'aggregates.csv'
METADATA_FILE = 'metadata.yaml'
AUDIT_FILE = 'audit.jsonl'


class FileRecordStore(RecordStore):
    """
    A file based result store.

    Each run lives in its own directory named after the run ID, holding ``records.csv``,
    ``aggregates.csv``, ``metadata.yaml`` and ``audit.jsonl``.

    Attributes:
        directory (str): The directory holding the run directories.
    """

    def __init__(self, directory: str) -> None:
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def run_path(self, run_id: str) -> str:
        return os.path.join(self.directory, run_id)

    def _existing(self, run_id: str, filename: str) -> str:
        path = os.path.join(self.run_path(run_id), filename)
        if not os.path.exists(path):
            raise RunNotFoundError(f"Run {run_id} not found in {self.directory}")
        return path

    def save_run(
        self,
        run_id: str,
        records: List[ResultRecord],
        aggregates: List[AggregateRecord],
        metadata: Dict[str, Any],
        audit: Optional[List[Dict[str, Any]]] = None,
    ) -> str:
        """
        Write a run directory.

        :raises RecordStoreError: If a run with the given ID already exists
        """
        path = self.run_path(run_id)
        if os.path.exists(os.path.join(path, RECORDS_FILE)):
            raise RecordStoreError(f"Run {run_id} already exists")
        os.makedirs(path, exist_ok=True)

        emit_records(records, os.path.join(path, RECORDS_FILE))
        emit_aggregates(aggregates, os.path.join(path, AGGREGATES_FILE))
        with open(os.path.join(path, METADATA_FILE), 'w') as f:
            yaml.safe_dump(metadata, f, sort_keys=True)
        with open(os.path.join(path, AUDIT_FILE), 'w') as f:
            for entry in audit or []:
                f.write(json.dumps(entry, sort_keys=True) + "\n")
        return run_id

    def load_records(self, run_id: str) -> List[ResultRecord]:
        return parse_records(self._existing(run_id, RECORDS_FILE))

    def load_aggregates(self, run_id: str) -> List[AggregateRecord]:
        return parse_aggregates(self._existing(run_id, AGGREGATES_FILE))

    def load_metadata(self, run_id: str) -> Dict[str, Any]:
        with open(self._existing(run_id, METADATA_FILE)) as f:
            return yaml.safe_load(f) or {}

    def load_audit(self, run_id: str) -> List[Dict[str, Any]]:
        with open(self._existing(run_id, AUDIT_FILE)) as f:
            return [json.loads(line) for line in f if line.strip()]

    def list_runs(self) -> List[str]:
        return sorted(
            d for d in os.listdir(self.directory) if os.path.exists(os.path.join(self.directory, d, RECORDS_FILE))
        )

    def delete_run(self, run_id: str) -> None:
        self._existing(run_id, RECORDS_FILE)
        shutil.rmtree(self.run_path(run_id))
