import copy
from typing import Any, Dict, List, Optional

from ..exceptions import RecordStoreError, RunNotFoundError
from ..pipeline.records import AggregateRecord, ResultRecord
from .store import RecordStore


class InMemoryRecordStore(RecordStore):
    """
    Keeps runs in process memory; useful for tests and library use.
    """

    def __init__(self) -> None:
        self.runs: Dict[str, Dict[str, Any]] = {}

    def _get(self, run_id: str) -> Dict[str, Any]:
        if run_id not in self.runs:
            raise RunNotFoundError(f"Run {run_id} not found")
        return self.runs[run_id]

    def save_run(
        self,
        run_id: str,
        records: List[ResultRecord],
        aggregates: List[AggregateRecord],
        metadata: Dict[str, Any],
        audit: Optional[List[Dict[str, Any]]] = None,
    ) -> str:
        if run_id in self.runs:
            raise RecordStoreError(f"Run {run_id} already exists")
        self.runs[run_id] = {
            'records': list(records),
            'aggregates': list(aggregates),
            'metadata': copy.deepcopy(metadata),
            'audit': list(audit or []),
        }
        return run_id

    def load_records(self, run_id: str) -> List[ResultRecord]:
        return list(self._get(run_id)['records'])

    def load_aggregates(self, run_id: str) -> List[AggregateRecord]:
        return list(self._get(run_id)['aggregates'])

    def load_metadata(self, run_id: str) -> Dict[str, Any]:
        return copy.deepcopy(self._get(run_id)['metadata'])

    def load_audit(self, run_id: str) -> List[Dict[str, Any]]:
        return copy.deepcopy(self._get(run_id)['audit'])

    def list_runs(self) -> List[str]:
        return sorted(self.runs)

    def delete_run(self, run_id: str) -> None:
        self._get(run_id)
        del self.runs[run_id]
