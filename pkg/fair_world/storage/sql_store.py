import json
from typing import Any, Dict, List, Optional

from sqlalchemy import Column, Float, ForeignKey, Integer, String, Text, create_engine, exc, select
from sqlalchemy.orm import declarative_base, relationship, sessionmaker

from ..exceptions import RecordStoreError, RunNotFoundError
from ..metrics.report import MetricReport
from ..pipeline.records import AggregateRecord, RecordStatus, ResultRecord
from .store import RecordStore

Base = declarative_base()


class RunModel(Base):
    """
    Defines the database schema for the runs table.
    """

    __tablename__ = 'runs'

    id = Column(String, primary_key=True)
    run_metadata = Column(Text)
    audit = Column(Text)
    records = relationship("RecordModel", cascade="all, delete-orphan", order_by="RecordModel.position")
    aggregates = relationship("AggregateModel", cascade="all, delete-orphan", order_by="AggregateModel.position")


class RecordModel(Base):
    """
    Defines the database schema for the records table.
    """

    __tablename__ = 'records'

    run_id = Column(String, ForeignKey('runs.id'), primary_key=True)
    position = Column(Integer, primary_key=True)
    dataset = Column(String)
    kind = Column(String)
    level = Column(Float)
    method = Column(String)
    fold = Column(Integer)
    eval_mode = Column(String)
    learner = Column(String)
    status = Column(String)
    metrics = Column(Text)
    sensitive_usage = Column(Float, nullable=True)


class AggregateModel(Base):
    """
    Defines the database schema for the aggregates table.
    """

    __tablename__ = 'aggregates'

    run_id = Column(String, ForeignKey('runs.id'), primary_key=True)
    position = Column(Integer, primary_key=True)
    payload = Column(Text)


class SqlRecordStore(RecordStore):
    """
    SQLAlchemy implementation of RecordStore.
    """

    def __init__(self, connection_string: str):
        self.engine = create_engine(connection_string)
        Base.metadata.create_all(self.engine)
        self.Session = sessionmaker(bind=self.engine)

    def save_run(
        self,
        run_id: str,
        records: List[ResultRecord],
        aggregates: List[AggregateRecord],
        metadata: Dict[str, Any],
        audit: Optional[List[Dict[str, Any]]] = None,
    ) -> str:
        try:
            with self.Session.begin() as session:
                run = RunModel(
                    id=run_id,
                    run_metadata=json.dumps(metadata, sort_keys=True),
                    audit=json.dumps(audit or [], sort_keys=True),
                )
                session.add(run)
                for position, record in enumerate(records):
                    session.add(
                        RecordModel(
                            run_id=run_id,
                            position=position,
                            dataset=record.dataset,
                            kind=record.kind,
                            level=record.level,
                            method=record.method,
                            fold=record.fold,
                            eval_mode=record.eval_mode,
                            learner=record.learner,
                            status=record.status.value,
                            metrics=json.dumps(record.metrics.to_dict()),
                            sensitive_usage=record.sensitive_usage,
                        )
                    )
                for position, aggregate in enumerate(aggregates):
                    payload = json.dumps(aggregate.to_dict())
                    session.add(AggregateModel(run_id=run_id, position=position, payload=payload))
        except exc.IntegrityError:
            raise RecordStoreError(f"Run {run_id} already exists")
        return run_id

    def _run(self, session, run_id: str) -> RunModel:
        run = session.get(RunModel, run_id)
        if not run:
            raise RunNotFoundError(f"Run {run_id} not found")
        return run

    def load_records(self, run_id: str) -> List[ResultRecord]:
        with self.Session() as session:
            return [
                ResultRecord(
                    dataset=r.dataset,
                    kind=r.kind,
                    level=r.level,
                    method=r.method,
                    fold=r.fold,
                    eval_mode=r.eval_mode,
                    learner=r.learner,
                    status=RecordStatus(r.status),
                    metrics=MetricReport.from_dict(json.loads(r.metrics)),
                    sensitive_usage=r.sensitive_usage,
                )
                for r in self._run(session, run_id).records
            ]

    def load_aggregates(self, run_id: str) -> List[AggregateRecord]:
        with self.Session() as session:
            return [AggregateRecord.from_dict(json.loads(a.payload)) for a in self._run(session, run_id).aggregates]

    def load_metadata(self, run_id: str) -> Dict[str, Any]:
        with self.Session() as session:
            return json.loads(self._run(session, run_id).run_metadata)

    def load_audit(self, run_id: str) -> List[Dict[str, Any]]:
        with self.Session() as session:
            return json.loads(self._run(session, run_id).audit)

    def list_runs(self) -> List[str]:
        with self.Session() as session:
            return sorted(session.scalars(select(RunModel.id)).all())

    def delete_run(self, run_id: str) -> None:
        with self.Session.begin() as session:
            session.delete(self._run(session, run_id))
