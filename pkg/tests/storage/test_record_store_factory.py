import tempfile
import unittest

from fair_world.storage import FileRecordStore, InMemoryRecordStore, RecordStoreFactory, SqlRecordStore


class TestRecordStoreFactory(unittest.TestCase):
    # Tests that the 'MEMORY' type returns a shared in-memory store
    def test_memory(self):
        store = RecordStoreFactory.from_config({'storage': {'type': 'MEMORY'}})
        self.assertIsInstance(store, InMemoryRecordStore)
        self.assertIs(store, RecordStoreFactory.from_config({'storage': {'type': 'MEMORY'}}))

    # Tests that the 'FILE' type returns a file store rooted at the configured path
    def test_file(self):
        with tempfile.TemporaryDirectory() as tmp_dir:
            store = RecordStoreFactory.from_config({'storage': {'type': 'FILE', 'file_path': tmp_dir}})
            self.assertIsInstance(store, FileRecordStore)
            self.assertEqual(store.directory, tmp_dir)

    # Tests that the 'SQL' type returns a SQL store
    def test_sql(self):
        store = RecordStoreFactory.from_config({'storage': {'type': 'SQL', 'connection_string': 'sqlite://'}})
        self.assertIsInstance(store, SqlRecordStore)
        store.engine.dispose()

    # Tests that an unrecognized storage type raises a ValueError
    def test_unknown_type(self):
        with self.assertRaises(ValueError):
            RecordStoreFactory.from_config({'storage': {'type': 'REDIS'}})

    # Tests that missing keys raise a KeyError
    def test_missing_keys(self):
        with self.assertRaises(KeyError):
            RecordStoreFactory.from_config({})
        with self.assertRaises(KeyError):
            RecordStoreFactory.from_config({'storage': {'type': 'FILE'}})
