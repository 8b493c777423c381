import json
import logging
import os
from typing import Dict, Iterable, List

import numpy as np
import pyarrow as pa
import pyarrow.parquet as pq

from ..data.dataset import Dataset
from ..exceptions import IngestionError

logger = logging.getLogger(__name__)

CACHE_SUFFIX = '.parquet'
SCHEMA_KEY = b'fair_world'
RESERVED_COLUMNS = ('instance_id', 'score', 'label', 'weight')


def cache_path(cache_dir: str, name: str) -> str:
    return os.path.join(cache_dir, name + CACHE_SUFFIX)


def _column_roles(dataset: Dataset) -> List[Dict[str, str]]:
    roles = [{'name': 'instance_id', 'kind': 'integer', 'role': 'id'}]
    for column in dataset.feature_manifest:
        if column == dataset.sensitive_name:
            roles.append({'name': column, 'kind': 'binary', 'role': 'sensitive'})
        elif column in dataset.numeric_columns:
            roles.append({'name': column, 'kind': 'numeric', 'role': 'feature'})
        else:
            roles.append({'name': column, 'kind': 'categorical', 'role': 'feature'})
    roles += [
        {'name': 'score', 'kind': 'numeric', 'role': 'score'},
        {'name': 'label', 'kind': 'binary', 'role': 'label'},
        {'name': 'weight', 'kind': 'numeric', 'role': 'weight'},
    ]
    return roles


def write_cache(dataset: Dataset, path: str) -> str:
    """
    Write a dataset to a parquet file whose schema metadata describes every column
    (name, kind, role) and the dataset-level attributes.

    Writing the same dataset twice produces identical bytes.
    """
    clashes = set(RESERVED_COLUMNS) & set(dataset.feature_manifest)
    if clashes:
        raise IngestionError(f"Feature names {sorted(clashes)} clash with reserved cache columns")

    header = {
        'name': dataset.name,
        'threshold': dataset.threshold,
        'sensitive_name': dataset.sensitive_name,
        'feature_manifest': list(dataset.feature_manifest),
        'noise_intensity': dataset.noise_intensity,
        'group_removed': dataset.group_removed,
        'sensitive_visible': dataset.sensitive_visible,
        'metadata': dataset.metadata,
        'columns': _column_roles(dataset),
    }
    table = pa.Table.from_pandas(dataset.to_frame(), preserve_index=False)
    table = table.replace_schema_metadata({SCHEMA_KEY: json.dumps(header, sort_keys=True).encode('utf-8')})

    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    pq.write_table(table, path)
    logger.info("Cached %s (%d rows) to %s", dataset.name, len(dataset), path)
    return path


def read_cache(path: str) -> Dataset:
    """
    Read a dataset written by :func:`write_cache`.
    """
    if not os.path.exists(path):
        raise IngestionError(f"Dataset cache not found: {path}", path=path)
    table = pq.read_table(path)
    metadata = table.schema.metadata or {}
    if SCHEMA_KEY not in metadata:
        raise IngestionError(f"{path} is not a fair_world dataset cache", path=path)
    header = json.loads(metadata[SCHEMA_KEY].decode('utf-8'))

    frame = table.to_pandas()
    sensitive_name = header['sensitive_name']
    manifest = tuple(header['feature_manifest'])
    return Dataset(
        name=header['name'],
        instance_ids=frame['instance_id'].to_numpy(dtype=np.int64),
        features=frame[[c for c in manifest if c != sensitive_name]],
        sensitive=frame[sensitive_name].to_numpy(),
        score=frame['score'].to_numpy(dtype=float),
        label=frame['label'].to_numpy(),
        weight=frame['weight'].to_numpy(dtype=float),
        threshold=float(header['threshold']),
        sensitive_name=sensitive_name,
        feature_manifest=manifest,
        noise_intensity=float(header['noise_intensity']),
        group_removed=bool(header['group_removed']),
        sensitive_visible=bool(header['sensitive_visible']),
        metadata=dict(header['metadata']),
    )


def write_removal_manifest(ids: Iterable[int], path: str) -> str:
    """
    One removed instance id per line, ascending.
    """
    with open(path, 'w') as f:
        for instance_id in sorted(int(i) for i in ids):
            f.write(f"{instance_id}\n")
    return path


def read_removal_manifest(path: str) -> List[int]:
    with open(path) as f:
        return [int(line) for line in f if line.strip()]
