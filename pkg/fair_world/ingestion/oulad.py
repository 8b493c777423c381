import logging
import os
from typing import Dict, Mapping, Union

import numpy as np
import pandas as pd

from ..data.dataset import PRIVILEGED, UNPRIVILEGED, Dataset
from ..exceptions import IngestionError
from .recipes import OULAD_DERIVED_FEATURES, OULAD_FILES, OULAD_SCORES, OULAD_SOCIAL, OULAD_STEM, DatasetRecipe

logger = logging.getLogger(__name__)

MODULE_RECIPES: Dict[str, DatasetRecipe] = {
    OULAD_STEM.module_code: OULAD_STEM,  # type: ignore
    OULAD_SOCIAL.module_code: OULAD_SOCIAL,  # type: ignore
}

PRESENTATION_KEYS = ['code_module', 'code_presentation', 'id_student']
ACTIVITY_TYPES = ('forumng', 'glossary', 'homepage', 'resource')


def resolve_oulad_files(files: Union[str, Mapping[str, str]]) -> Dict[str, str]:
    """
    Map the five OULAD tables to file paths, either from a directory holding the
    public file names or from an explicit mapping.
    """
    if isinstance(files, str):
        paths = {key: os.path.join(files, name) for key, name in OULAD_FILES.items()}
    else:
        missing_keys = set(OULAD_FILES) - set(files)
        if missing_keys:
            raise IngestionError(f"No path given for OULAD tables: {sorted(missing_keys)}")
        paths = {key: files[key] for key in OULAD_FILES}

    for path in paths.values():
        if not os.path.exists(path):
            raise IngestionError(f"Source file not found: {path}", path=path)
    return paths


def _read(path: str) -> pd.DataFrame:
    try:
        return pd.read_csv(path)
    except pd.errors.ParserError as e:
        raise IngestionError(f"Malformed OULAD file {path}: {e}", path=path)


def _assessment_counts(student_assessment: pd.DataFrame, assessments: pd.DataFrame, module: str) -> pd.DataFrame:
    columns = ['id_assessment', 'code_module', 'code_presentation', 'assessment_type']
    merged = student_assessment.merge(assessments[assessments['code_module'] == module][columns], on='id_assessment')
    counts = (
        merged[merged['assessment_type'].isin(['CMA', 'TMA'])]
        .groupby(PRESENTATION_KEYS + ['assessment_type'])
        .size()
        .unstack('assessment_type', fill_value=0)
        .reindex(columns=['CMA', 'TMA'], fill_value=0)
        .rename(columns={'CMA': 'num_CMA', 'TMA': 'num_TMA'})
    )
    return counts.reset_index()


def _vle_activity(student_vle: pd.DataFrame, vle: pd.DataFrame, module: str) -> pd.DataFrame:
    clicks = student_vle[student_vle['code_module'] == module].merge(
        vle[['id_site', 'activity_type']], on='id_site', how='left'
    )
    grouped = clicks.groupby(PRESENTATION_KEYS)
    activity = pd.DataFrame(
        {
            'login_day': grouped['date'].nunique(),
            'num_logins': grouped['sum_click'].sum(),
        }
    )
    per_type = (
        clicks[clicks['activity_type'].isin(ACTIVITY_TYPES)]
        .groupby(PRESENTATION_KEYS + ['activity_type'])['sum_click']
        .sum()
        .unstack('activity_type', fill_value=0)
        .reindex(columns=list(ACTIVITY_TYPES), fill_value=0)
    )
    return activity.join(per_type, how='left').fillna(0).reset_index()


def load_oulad(files: Union[str, Mapping[str, str]], module_code: str) -> Dataset:
    """
    Build an OULAD course dataset: studentInfo columns plus assessment and VLE activity
    counts aggregated over the whole module presentation.

    Rows with missing values are dropped, then only the latest presentation of a student
    taking the module more than once is kept.

    :param files: Directory holding the public OULAD CSVs, or a table -> path mapping
    :param module_code: ``FFF`` (STEM) or ``BBB`` (social sciences)
    :return: ``oulad_stem`` or ``oulad_social``
    """
    if module_code not in MODULE_RECIPES:
        raise IngestionError(f"Unsupported OULAD module '{module_code}', expected one of {sorted(MODULE_RECIPES)}")
    recipe = MODULE_RECIPES[module_code]
    paths = resolve_oulad_files(files)
    tables = {key: _read(path) for key, path in paths.items()}

    info = tables['student_info']
    info = info[info['code_module'] == module_code]
    counts = _assessment_counts(tables['student_assessment'], tables['assessments'], module_code)
    activity = _vle_activity(tables['student_vle'], tables['vle'], module_code)

    frame = info.merge(counts, on=PRESENTATION_KEYS, how='left').merge(activity, on=PRESENTATION_KEYS, how='left')
    frame[list(OULAD_DERIVED_FEATURES)] = frame[list(OULAD_DERIVED_FEATURES)].fillna(0)

    complete = frame.dropna(subset=list(recipe.features) + [recipe.target])  # type: ignore
    if len(complete) < len(frame):
        logger.info("Dropped %d incomplete rows of module %s", len(frame) - len(complete), module_code)
    deduplicated = (
        complete.sort_values(['code_presentation', 'id_student'], kind='stable')
        .drop_duplicates(subset='id_student', keep='last')
        .sort_values('id_student', kind='stable')
        .reset_index(drop=True)
    )

    unknown = set(deduplicated[recipe.target]) - set(OULAD_SCORES)
    if unknown:
        raise IngestionError(f"Unknown final_result values {sorted(unknown)} in {paths['student_info']}")

    score = deduplicated[recipe.target].map(OULAD_SCORES).to_numpy(dtype=float)
    sensitive = np.where(deduplicated[recipe.sensitive] == recipe.unprivileged, UNPRIVILEGED, PRIVILEGED)
    manifest = tuple(recipe.features)  # type: ignore
    features = deduplicated[[c for c in manifest if c != recipe.sensitive]].copy()
    for column in OULAD_DERIVED_FEATURES:
        features[column] = features[column].astype(float)

    dataset = Dataset(
        name=recipe.name,
        instance_ids=deduplicated['id_student'].to_numpy(),
        features=features,
        sensitive=sensitive,
        score=score,
        label=(score >= recipe.threshold).astype(int),
        threshold=recipe.threshold,
        sensitive_name=recipe.sensitive,
        feature_manifest=manifest,
        noise_intensity=recipe.noise_intensity,
        metadata={'module_code': module_code, 'activity_window': 'whole_presentation'},
    )
    dataset.require_both_groups()
    logger.info("Loaded %s: %d rows", dataset.name, len(dataset))
    return dataset
