import unittest

from .record_store_base_test import AbstractTests


class TestInMemoryRecordStore(AbstractTests.TestRecordStoreABC, unittest.TestCase):
    def setUp(self) -> None:
        super().setUp()

    def get_storage_config(self) -> dict:
        return {'storage': {'type': 'MEMORY'}}

    # Tests that loaded metadata is a copy of the stored one
    def test_metadata_copy(self):
        self.store.save_run(self.run_id, [], [], {'grid': [0.0]})
        self.store.load_metadata(self.run_id)['grid'].append(0.5)
        self.assertEqual(self.store.load_metadata(self.run_id), {'grid': [0.0]})
