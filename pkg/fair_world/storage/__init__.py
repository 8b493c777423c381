from .csv_codec import FAILED_MARKER, emit_aggregates, emit_records, parse_aggregates, parse_records
from .file_store import FileRecordStore
from .in_memory_store import InMemoryRecordStore
from .sql_store import SqlRecordStore
from .store import RecordStore
from .store_factory import RecordStoreFactory, RecordStoreType
