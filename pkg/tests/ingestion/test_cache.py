import os
import tempfile
import unittest

from fair_world.bias import BiasKind, BiasSpec, biased_view
from fair_world.exceptions import IngestionError
from fair_world.ingestion import (
    cache_path,
    load_oulad,
    make_synthetic,
    read_cache,
    read_removal_manifest,
    write_cache,
    write_removal_manifest,
)

from .sources import write_oulad


class TestDatasetCache(unittest.TestCase):
    def setUp(self) -> None:
        self.directory = tempfile.mkdtemp()

    # Tests that a cached dataset reads back equal, categorical features included
    def test_round_trip(self):
        stem = load_oulad(write_oulad(self.directory), 'FFF')
        path = write_cache(stem, cache_path(self.directory, stem.name))
        loaded = read_cache(path)
        self.assertTrue(loaded.equals(stem))
        self.assertEqual(loaded.metadata, stem.metadata)
        self.assertEqual(loaded.noise_intensity, 0.2)

    # Tests that flags of biased views survive the cache
    def test_flags(self):
        dataset = make_synthetic(n=50, seed=1)
        view = biased_view(dataset, BiasSpec(BiasKind.SELECT_RANDOM, 1.0, seed=2))
        loaded = read_cache(write_cache(view, os.path.join(self.directory, 'view.parquet')))
        self.assertTrue(loaded.group_removed)
        self.assertTrue(loaded.equals(view))

    # Tests that writing the same dataset twice gives identical bytes
    def test_deterministic_bytes(self):
        dataset = make_synthetic(n=40, seed=3)
        first = write_cache(dataset, os.path.join(self.directory, 'a.parquet'))
        second = write_cache(dataset, os.path.join(self.directory, 'b.parquet'))
        with open(first, 'rb') as a, open(second, 'rb') as b:
            self.assertEqual(a.read(), b.read())

    # Tests that missing caches and foreign parquet files are reported as missing input
    def test_missing_cache(self):
        with self.assertRaises(IngestionError):
            read_cache(os.path.join(self.directory, 'absent.parquet'))


class TestRemovalManifest(unittest.TestCase):
    # Tests that removal manifests list one id per line in ascending order
    def test_manifest(self):
        path = os.path.join(tempfile.mkdtemp(), 'removed.txt')
        write_removal_manifest([7, 2, 11], path)
        with open(path) as f:
            self.assertEqual(f.read(), "2\n7\n11\n")
        self.assertEqual(read_removal_manifest(path), [2, 7, 11])


if __name__ == '__main__':
    unittest.main()
