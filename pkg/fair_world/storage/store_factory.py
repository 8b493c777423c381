from enum import Enum
from typing import Dict

from .file_store import FileRecordStore
from .in_memory_store import InMemoryRecordStore
from .sql_store import SqlRecordStore
from .store import RecordStore


class RecordStoreType(str, Enum):
    MEMORY = 'MEMORY'
    FILE = 'FILE'
    SQL = 'SQL'


class RecordStoreFactory:
    """Factory class for creating RecordStore instances."""

    _stores: Dict[str, RecordStore] = {}

    @staticmethod
    def from_config(config: dict) -> RecordStore:
        """Create RecordStore instance from the ``storage`` section of a run config."""
        storage_config = config['storage']
        storage_type = RecordStoreType(storage_config['type'])
        stores = RecordStoreFactory._stores

        if storage_type == RecordStoreType.MEMORY:
            store_key = RecordStoreType.MEMORY.value
            if store_key not in stores:
                stores[store_key] = InMemoryRecordStore()
            return stores[store_key]

        elif storage_type == RecordStoreType.FILE:
            file_path = storage_config['file_path']
            store_key = f"{RecordStoreType.FILE.value}:{file_path}"
            if store_key not in stores:
                stores[store_key] = FileRecordStore(file_path)
            return stores[store_key]

        elif storage_type == RecordStoreType.SQL:
            conn = storage_config['connection_string']
            return SqlRecordStore(conn)

        else:
            raise ValueError(f'Unknown record store type: {storage_type}')
