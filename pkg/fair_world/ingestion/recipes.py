from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple


class Variant(str, Enum):
    """Transform applied on top of a base dataset."""

    NONE = "none"
    BALANCED = "balanced"
    COMPLEX = "complex"


STUDENT_INFO_FEATURES: Tuple[str, ...] = (
    'code_presentation',
    'gender',
    'region',
    'highest_education',
    'imd_band',
    'age_band',
    'num_of_prev_attempts',
    'studied_credits',
    'disability',
)

OULAD_DERIVED_FEATURES: Tuple[str, ...] = (
    'num_CMA',
    'num_TMA',
    'login_day',
    'num_logins',
    'forumng',
    'glossary',
    'homepage',
    'resource',
)

OULAD_FILES: Dict[str, str] = {
    'student_info': 'studentInfo.csv',
    'student_vle': 'studentVle.csv',
    'vle': 'vle.csv',
    'student_assessment': 'studentAssessment.csv',
    'assessments': 'assessments.csv',
}

OULAD_SCORES: Dict[str, float] = {'Withdrawn': 0.0, 'Fail': 1.0, 'Pass': 2.0, 'Distinction': 3.0}


@dataclass(frozen=True)
class DatasetRecipe:
    """
    Everything needed to derive a dataset from its public source files.

    Attributes:
        name: Name of the produced dataset
        sources: Source file names
        target: Target column
        positive_rule: Human readable positive-label rule
        sensitive: Sensitive column
        unprivileged: Value of the sensitive column marking the unprivileged group
        score_rule: Human readable score derivation
        threshold: Score threshold of the positive label
        noise_intensity: Default label-bias noise intensity
        features: Feature list in source order; None means every column but the target
        variant: Variant transform
        module_code: OULAD course module, if any
    """

    name: str
    sources: Tuple[str, ...]
    target: str
    positive_rule: str
    sensitive: str
    unprivileged: str
    score_rule: str
    threshold: float
    noise_intensity: float
    features: Optional[Tuple[str, ...]] = None
    variant: Variant = Variant.NONE
    module_code: Optional[str] = None
    base: Optional[str] = field(default=None)

    def __post_init__(self):
        if self.features is not None and self.target in self.features:
            raise ValueError(f"Recipe '{self.name}' lists its target '{self.target}' as a feature")


STUDENT = DatasetRecipe(
    name='student',
    sources=('student-por.csv',),
    target='G3',
    positive_rule='G3 >= 10',
    sensitive='sex',
    unprivileged='M',
    score_rule='G3',
    threshold=10.0,
    noise_intensity=0.1,
)

STUDENT_BALANCED = DatasetRecipe(
    name='student_balanced',
    sources=STUDENT.sources,
    target=STUDENT.target,
    positive_rule=STUDENT.positive_rule,
    sensitive=STUDENT.sensitive,
    unprivileged=STUDENT.unprivileged,
    score_rule=STUDENT.score_rule,
    threshold=STUDENT.threshold,
    noise_intensity=STUDENT.noise_intensity,
    variant=Variant.BALANCED,
    base='student',
)


def _oulad_recipe(name: str, module_code: str, variant: Variant = Variant.NONE, base: Optional[str] = None):
    features = STUDENT_INFO_FEATURES if variant == Variant.COMPLEX else STUDENT_INFO_FEATURES + OULAD_DERIVED_FEATURES
    return DatasetRecipe(
        name=name,
        sources=tuple(OULAD_FILES.values()),
        target='final_result',
        positive_rule="final_result in {Pass, Distinction}",
        sensitive='gender',
        unprivileged='M',
        score_rule='Withdrawn=0, Fail=1, Pass=2, Distinction=3',
        threshold=1.5,
        noise_intensity=0.2,
        features=features,
        variant=variant,
        module_code=module_code,
        base=base,
    )


OULAD_STEM = _oulad_recipe('oulad_stem', 'FFF')
OULAD_SOCIAL = _oulad_recipe('oulad_social', 'BBB')
OULAD_STEM_COMPLEX = _oulad_recipe('oulad_stem_complex', 'FFF', Variant.COMPLEX, base='oulad_stem')
OULAD_SOCIAL_COMPLEX = _oulad_recipe('oulad_social_complex', 'BBB', Variant.COMPLEX, base='oulad_social')

RECIPES: Dict[str, DatasetRecipe] = {
    recipe.name: recipe
    for recipe in (STUDENT, STUDENT_BALANCED, OULAD_STEM, OULAD_SOCIAL, OULAD_STEM_COMPLEX, OULAD_SOCIAL_COMPLEX)
}
