from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from ..exceptions import ConfigError


class MitigationMethod(str, Enum):
    UNMITIGATED = 'unmitigated'
    REWEIGHING = 'reweighing'
    MASSAGING = 'massaging'
    FTU = 'ftu'
    EXCLUSION = 'exclusion'
    EOP = 'eop'
    CEO = 'ceo'
    ROC_SPD = 'roc_spd'
    ROC_EQOP = 'roc_eqop'
    ROC_AVOD = 'roc_avod'

    @property
    def is_preprocessing(self) -> bool:
        return self in (
            MitigationMethod.REWEIGHING,
            MitigationMethod.MASSAGING,
            MitigationMethod.FTU,
            MitigationMethod.EXCLUSION,
        )

    @property
    def is_postprocessing(self) -> bool:
        return self in (
            MitigationMethod.EOP,
            MitigationMethod.CEO,
            MitigationMethod.ROC_SPD,
            MitigationMethod.ROC_EQOP,
            MitigationMethod.ROC_AVOD,
        )


DEFAULT_METHODS: Tuple[MitigationMethod, ...] = (
    MitigationMethod.REWEIGHING,
    MitigationMethod.MASSAGING,
    MitigationMethod.FTU,
    MitigationMethod.EOP,
    MitigationMethod.CEO,
    MitigationMethod.ROC_SPD,
    MitigationMethod.ROC_EQOP,
    MitigationMethod.ROC_AVOD,
)


class CostConstraint(str, Enum):
    FNR = 'fnr'
    FPR = 'fpr'
    WEIGHTED = 'weighted'


class RocCriterion(str, Enum):
    SPD = 'spd'
    EQOP = 'eqop'
    AVOD = 'avod'


ROC_CRITERIA = {
    MitigationMethod.ROC_SPD: RocCriterion.SPD,
    MitigationMethod.ROC_EQOP: RocCriterion.EQOP,
    MitigationMethod.ROC_AVOD: RocCriterion.AVOD,
}


@dataclass(frozen=True)
class MitigationSpec:
    """
    A mitigation method and its hyperparameters.

    Attributes:
        method: Mitigation method
        roc_bounds: Accepted interval of the ROC fairness criterion
        roc_threshold_grid: Number of classification thresholds searched by ROC
        roc_margin_grid: Number of critical-region margins searched per threshold
        roc_directional: Whether ROC only moves unprivileged labels up and privileged labels down
            relative to the unmitigated labels
        ceo_cost_constraint: Cost CEO equalizes across groups

    Randomized methods draw their seed from the cell they run in, not from the spec.
    """

    method: MitigationMethod
    roc_bounds: Tuple[float, float] = (-0.05, 0.05)
    roc_threshold_grid: int = 100
    roc_margin_grid: int = 50
    roc_directional: bool = True
    ceo_cost_constraint: CostConstraint = CostConstraint.WEIGHTED

    def __post_init__(self):
        object.__setattr__(self, 'method', MitigationMethod(self.method))
        object.__setattr__(self, 'ceo_cost_constraint', CostConstraint(self.ceo_cost_constraint))
        lower, upper = self.roc_bounds
        if not lower < upper:
            raise ConfigError(f"ROC bounds must satisfy lb < ub, got {self.roc_bounds}")
        if self.roc_threshold_grid < 2 or self.roc_margin_grid < 2:
            raise ConfigError("ROC grids need at least 2 points")
