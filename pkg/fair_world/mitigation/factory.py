from typing import Optional

import numpy as np

from ..metrics.report import Prediction
from .ceo import fit_ceo
from .eop import fit_eop
from .postprocessing import IdentityPostProcessor, PostProcessor
from .preprocessing import FairnessThroughUnawareness, GroupExclusion, Massaging, PreProcessor, Reweighing
from .roc import fit_roc
from .spec import ROC_CRITERIA, MitigationMethod, MitigationSpec


class MitigationFactory:
    """Builds the pre- or post-processor a mitigation spec names."""

    @staticmethod
    def preprocessor(spec: MitigationSpec, seed: int = 0) -> Optional[PreProcessor]:
        method = spec.method
        if method == MitigationMethod.REWEIGHING:
            return Reweighing()
        elif method == MitigationMethod.MASSAGING:
            return Massaging(seed=seed)
        elif method == MitigationMethod.FTU:
            return FairnessThroughUnawareness()
        elif method == MitigationMethod.EXCLUSION:
            return GroupExclusion()
        return None

    @staticmethod
    def fit_postprocessor(
        spec: MitigationSpec, validation: Prediction, truth: np.ndarray, groups: np.ndarray, seed: int = 0
    ) -> PostProcessor:
        """
        Fit the post-processor of ``spec`` on the unmitigated validation prediction.
        """
        method = spec.method
        if method == MitigationMethod.EOP:
            return fit_eop(validation.labels, truth, groups, seed)
        elif method == MitigationMethod.CEO:
            return fit_ceo(validation.scores, truth, groups, spec.ceo_cost_constraint, seed)
        elif method in ROC_CRITERIA:
            return fit_roc(
                validation.scores,
                truth,
                groups,
                ROC_CRITERIA[method],
                spec.roc_bounds,
                spec.roc_threshold_grid,
                spec.roc_margin_grid,
                spec.roc_directional,
            )
        return IdentityPostProcessor()
