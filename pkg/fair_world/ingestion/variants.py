from ..data.dataset import Dataset
from ..exceptions import IngestionError
from .recipes import STUDENT_INFO_FEATURES

COMPLEX_SUFFIX = '_complex'


def make_complex_variant(oulad: Dataset) -> Dataset:
    """
    Keep the rows of an OULAD dataset but only its studentInfo features.

    Idempotent: a complex dataset is returned with the same features and name.
    """
    if not set(STUDENT_INFO_FEATURES) <= set(oulad.feature_manifest):
        raise IngestionError(f"Dataset '{oulad.name}' does not carry the studentInfo features")
    kept = [c for c in STUDENT_INFO_FEATURES if c != oulad.sensitive_name]
    name = oulad.name if oulad.name.endswith(COMPLEX_SUFFIX) else oulad.name + COMPLEX_SUFFIX
    return oulad.replace(name=name, features=oulad.features[kept].copy(), feature_manifest=STUDENT_INFO_FEATURES)
