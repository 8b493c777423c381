import logging
import os
import re

import numpy as np
import pandas as pd

from ..data.dataset import PRIVILEGED, UNPRIVILEGED, Dataset
from ..exceptions import IngestionError
from .recipes import STUDENT, STUDENT_BALANCED

logger = logging.getLogger(__name__)

_LINE_PATTERN = re.compile(r'line (\d+)')


def load_student(csv_path: str) -> Dataset:
    """
    Load the UCI Student Performance (Portuguese course) CSV.

    The label is ``G3 >= 10`` and the score is ``G3`` itself; ``G3`` is not a feature
    while ``G1`` and ``G2`` are. Boys form the unprivileged group.

    :param csv_path: Path to the semicolon separated source file
    :return: The ``student`` dataset
    """
    if not os.path.exists(csv_path):
        raise IngestionError(f"Source file not found: {csv_path}", path=csv_path)
    try:
        frame = pd.read_csv(csv_path, sep=';')
    except pd.errors.ParserError as e:
        match = _LINE_PATTERN.search(str(e))
        row = int(match.group(1)) if match else None
        raise IngestionError(f"Malformed row {row} in {csv_path}: {e}", path=csv_path, row=row)

    for column in (STUDENT.target, STUDENT.sensitive):
        if column not in frame.columns:
            raise IngestionError(f"Column '{column}' missing from {csv_path}", path=csv_path)

    grades = pd.to_numeric(frame[STUDENT.target], errors='coerce')
    bad = grades.isna() & frame[STUDENT.target].notna()
    if bad.any():
        # +2: one header line, 1-based rows
        row = int(np.flatnonzero(bad.to_numpy())[0]) + 2
        raise IngestionError(f"Malformed row {row} in {csv_path}: non-numeric {STUDENT.target}", path=csv_path, row=row)
    frame[STUDENT.target] = grades

    complete = frame.dropna().reset_index(drop=True)
    if len(complete) < len(frame):
        logger.info("Dropped %d incomplete rows from %s", len(frame) - len(complete), csv_path)

    score = complete[STUDENT.target].to_numpy(dtype=float)
    sensitive = np.where(complete[STUDENT.sensitive] == STUDENT.unprivileged, UNPRIVILEGED, PRIVILEGED)
    manifest = tuple(c for c in complete.columns if c != STUDENT.target)
    features = complete[[c for c in manifest if c != STUDENT.sensitive]]

    dataset = Dataset(
        name=STUDENT.name,
        instance_ids=np.arange(len(complete)),
        features=features,
        sensitive=sensitive,
        score=score,
        label=(score >= STUDENT.threshold).astype(int),
        threshold=STUDENT.threshold,
        sensitive_name=STUDENT.sensitive,
        feature_manifest=manifest,
        noise_intensity=STUDENT.noise_intensity,
    )
    dataset.require_both_groups()
    logger.info("Loaded %s: %d rows", dataset.name, len(dataset))
    return dataset


def make_student_balanced(student: Dataset, seed: int) -> Dataset:
    """
    Randomly remove privileged rows with a positive label until both groups have the
    same size and the same number of positives.

    :param student: The ``student`` dataset
    :param seed: Seed for choosing the removed rows
    :return: The ``student_balanced`` dataset
    """
    privileged_positive = np.flatnonzero(student.group_mask(PRIVILEGED) & (student.label == 1))
    excess = student.group_size(PRIVILEGED) - student.group_size(UNPRIVILEGED)
    if excess <= 0:
        return student.replace(name=STUDENT_BALANCED.name)

    if excess > len(privileged_positive):
        logger.warning("Only %d privileged positives available to remove %d rows", len(privileged_positive), excess)
        excess = len(privileged_positive)

    rng = np.random.default_rng(seed)
    removed = rng.choice(student.instance_ids[privileged_positive], size=excess, replace=False)
    balanced = student.drop(removed).replace(name=STUDENT_BALANCED.name)

    positives = [int(np.sum(balanced.label[balanced.group_mask(g)])) for g in (UNPRIVILEGED, PRIVILEGED)]
    if positives[0] != positives[1]:
        logger.warning("Balanced groups differ in positive counts: %d vs %d", positives[0], positives[1])
    return balanced
