from .ceo import CalibratedEqualizedOddsPostProcessor, fit_ceo, generalized_costs, group_cost
from .eop import EqualizedOddsPostProcessor, fit_eop
from .factory import MitigationFactory
from .postprocessing import IdentityPostProcessor, PostProcessor, apply, coin_flips
from .preprocessing import (
    FairnessThroughUnawareness,
    GroupExclusion,
    Massaging,
    PreProcessor,
    Reweighing,
    flip_count,
    ftu,
    massage,
    reweigh,
)
from .roc import (
    RejectOptionPostProcessor,
    base_labels,
    criterion_value,
    evaluate_cell,
    evaluate_threshold,
    fit_roc,
    keep_direction,
    roc_grid,
    roc_labels,
)
from .spec import DEFAULT_METHODS, ROC_CRITERIA, CostConstraint, MitigationMethod, MitigationSpec, RocCriterion
