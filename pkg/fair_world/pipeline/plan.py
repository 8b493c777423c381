from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from ..bias.spec import BiasKind
from ..data.dataset import Dataset
from ..exceptions import ConfigError
from ..learners.factory import LearnerParams
from ..learners.params import LearnerKind
from ..mitigation.spec import DEFAULT_METHODS, MitigationMethod, MitigationSpec
from .records import EVAL_MODES

DEFAULT_GRID: Tuple[float, ...] = tuple(round(0.1 * i, 1) for i in range(10))
LABEL_FOLDS = 10
SELECTION_FOLDS = 5


@dataclass(frozen=True, eq=False)
class ExperimentPlan:
    """
    One dataset's experiment matrix: bias kinds x levels x folds x methods.

    Attributes:
        dataset: Fair dataset
        bias_kinds: Bias kinds to inject
        grid: Ascending intensity levels in [0, 1]
        folds: Fold count per bias kind; defaults to 10 for label bias and 5 for selection
        learner: Learner kind
        learner_params: Learner hyperparameters, learner defaults when omitted
        methods: Mitigation methods; the unmitigated model is always evaluated too
        seed: Master seed
        eval_modes: Evaluation modes
        stratified_folds: Stratify folds by (A, Y)
        jobs: Parallel (kind, fold) tasks
        audit_ids: Collect the instance ids seen by every fitted object
    """

    dataset: Dataset
    bias_kinds: Tuple[BiasKind, ...] = (BiasKind.LABEL,)
    grid: Tuple[float, ...] = DEFAULT_GRID
    folds: Dict[BiasKind, int] = field(default_factory=dict)
    learner: LearnerKind = LearnerKind.FOREST
    learner_params: Optional[LearnerParams] = None
    methods: Tuple[MitigationSpec, ...] = tuple(MitigationSpec(m) for m in DEFAULT_METHODS)
    seed: int = 0
    eval_modes: Tuple[str, ...] = EVAL_MODES
    stratified_folds: bool = True
    jobs: int = 1
    audit_ids: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'bias_kinds', tuple(BiasKind(k) for k in self.bias_kinds))
        object.__setattr__(self, 'learner', LearnerKind(self.learner))
        object.__setattr__(self, 'folds', {BiasKind(k): int(v) for k, v in self.folds.items()})
        grid = np.asarray(self.grid, dtype=float)
        if len(grid) == 0:
            raise ConfigError("The intensity grid is empty")
        if np.any(grid < 0) or np.any(grid > 1) or np.any(np.diff(grid) <= 0):
            raise ConfigError(f"Grid levels must be ascending within [0, 1], got {list(self.grid)}")
        unknown = set(self.eval_modes) - set(EVAL_MODES)
        if unknown:
            raise ConfigError(f"Unknown evaluation modes {sorted(unknown)}")
        methods = [spec.method for spec in self.methods]
        if MitigationMethod.UNMITIGATED in methods:
            raise ConfigError("The unmitigated model is always evaluated and cannot be listed as a method")
        if len(set(methods)) != len(methods):
            raise ConfigError("Mitigation methods must be unique")
        for kind in self.bias_kinds:
            if self.folds_for(kind) < 3:
                raise ConfigError(f"{kind.value} needs at least 3 folds")

    def folds_for(self, kind: BiasKind) -> int:
        kind = BiasKind(kind)
        if kind in self.folds:
            return self.folds[kind]
        return LABEL_FOLDS if kind == BiasKind.LABEL else SELECTION_FOLDS

    @property
    def method_names(self) -> Tuple[str, ...]:
        return (MitigationMethod.UNMITIGATED.value,) + tuple(spec.method.value for spec in self.methods)

    def record_count(self) -> int:
        """
        Number of records a run of this plan yields.
        """
        per_fold = len(self.grid) * len(self.method_names) * len(self.eval_modes)
        return sum(per_fold * self.folds_for(kind) for kind in self.bias_kinds)
