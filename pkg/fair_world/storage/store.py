from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

from ..pipeline.records import AggregateRecord, ResultRecord


class RecordStore(ABC):
    """Abstract base class for experiment result stores."""

    @abstractmethod
    def save_run(
        self,
        run_id: str,
        records: List[ResultRecord],
        aggregates: List[AggregateRecord],
        metadata: Dict[str, Any],
        audit: Optional[List[Dict[str, Any]]] = None,
    ) -> str:
        """Store the records, aggregates and metadata of a run and return its ID"""
        pass  # pragma: no cover

    @abstractmethod
    def load_records(self, run_id: str) -> List[ResultRecord]:
        """Get the records of a run"""
        pass  # pragma: no cover

    @abstractmethod
    def load_aggregates(self, run_id: str) -> List[AggregateRecord]:
        """Get the aggregates of a run"""
        pass  # pragma: no cover

    @abstractmethod
    def load_metadata(self, run_id: str) -> Dict[str, Any]:
        """Get the metadata of a run"""
        pass  # pragma: no cover

    @abstractmethod
    def load_audit(self, run_id: str) -> List[Dict[str, Any]]:
        """Get the per-cell audit entries of a run"""
        pass  # pragma: no cover

    @abstractmethod
    def list_runs(self) -> List[str]:
        """List all run ids"""
        pass  # pragma: no cover

    @abstractmethod
    def delete_run(self, run_id: str) -> None:
        """Delete a run by ID"""
        pass  # pragma: no cover
