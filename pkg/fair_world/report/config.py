from typing import Dict, List, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from ..bias.spec import BiasKind
from ..data.dataset import Dataset
from ..exceptions import ConfigError
from ..ingestion.recipes import RECIPES
from ..learners.factory import LearnerParams
from ..learners.params import ForestParams, LearnerKind, LogisticParams, TreeParams
from ..mitigation.spec import DEFAULT_METHODS, CostConstraint, MitigationMethod, MitigationSpec
from ..pipeline.plan import DEFAULT_GRID, ExperimentPlan
from ..pipeline.records import EVAL_MODES, EvalMode
from ..storage.store_factory import RecordStoreType

KNOWN_DATASETS = tuple(RECIPES) + ('synthetic',)


class StrictModel(BaseModel):
    """Configuration section rejecting unknown keys."""

    model_config = ConfigDict(extra='forbid')


class StorageConfig(StrictModel):
    type: RecordStoreType = RecordStoreType.FILE
    file_path: Optional[str] = None
    connection_string: Optional[str] = None

    @model_validator(mode='after')
    def check_location(self) -> 'StorageConfig':
        if self.type == RecordStoreType.SQL and not self.connection_string:
            raise ValueError("SQL storage needs a connection_string")
        return self


class TreeConfig(StrictModel):
    max_depth: int = 6
    min_samples_split: int = 2
    min_samples_leaf: int = 1


class ForestConfig(StrictModel):
    n_trees: int = 100
    max_depth: int = 6
    min_samples_split: int = 10
    min_samples_leaf: int = 10
    max_features: Optional[Union[str, int]] = 'sqrt'


class LogisticConfig(StrictModel):
    l2: float = 1.0
    max_iter: int = 200
    tol: float = 1e-6


class LearnerParamsConfig(StrictModel):
    tree: TreeConfig = TreeConfig()
    forest: ForestConfig = ForestConfig()
    logistic: LogisticConfig = LogisticConfig()


class MitigationConfig(StrictModel):
    roc_bounds: Tuple[float, float] = (-0.05, 0.05)
    roc_threshold_grid: int = 100
    roc_margin_grid: int = 50
    roc_directional: bool = True
    ceo_cost_constraint: CostConstraint = CostConstraint.WEIGHTED


class RunConfig(StrictModel):
    """
    Validated run configuration.

    Every section rejects unknown keys, so a typo fails loudly instead of silently
    falling back to a default.
    """

    datasets: List[str]
    cache_dir: str = 'cache'
    output_dir: str = 'runs'
    bias_kinds: List[BiasKind] = [BiasKind.LABEL]
    grid: List[float] = list(DEFAULT_GRID)
    folds: Dict[BiasKind, int] = {}
    methods: List[MitigationMethod] = list(DEFAULT_METHODS)
    learner: LearnerKind = LearnerKind.FOREST
    learner_params: LearnerParamsConfig = LearnerParamsConfig()
    mitigation: MitigationConfig = MitigationConfig()
    seed: int = 0
    jobs: int = 1
    eval_modes: List[EvalMode] = [EvalMode(m) for m in EVAL_MODES]
    stratified_folds: bool = True
    storage: StorageConfig = StorageConfig()

    @field_validator('datasets')
    @classmethod
    def check_datasets(cls, datasets: List[str]) -> List[str]:
        unknown = [d for d in datasets if d not in KNOWN_DATASETS]
        if unknown:
            raise ValueError(f"Unknown datasets {unknown}, expected names from {list(KNOWN_DATASETS)}")
        if not datasets:
            raise ValueError("At least one dataset is required")
        return datasets

    @field_validator('grid')
    @classmethod
    def check_grid(cls, grid: List[float]) -> List[float]:
        if not grid or any(g < 0 or g > 1 for g in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("grid levels must be ascending within [0, 1]")
        return grid

    @field_validator('methods')
    @classmethod
    def check_methods(cls, methods: List[MitigationMethod]) -> List[MitigationMethod]:
        if MitigationMethod.UNMITIGATED in methods:
            raise ValueError("the unmitigated model is always evaluated and is not a method")
        return methods

    def learner_parameters(self) -> LearnerParams:
        params = self.learner_params
        if self.learner == LearnerKind.TREE:
            return TreeParams(**params.tree.model_dump())
        elif self.learner == LearnerKind.FOREST:
            forest = params.forest.model_dump()
            n_trees = forest.pop('n_trees')
            return ForestParams(n_trees=n_trees, tree=TreeParams(**forest), n_jobs=1)
        return LogisticParams(**params.logistic.model_dump())

    def mitigation_specs(self) -> Tuple[MitigationSpec, ...]:
        settings = self.mitigation
        return tuple(
            MitigationSpec(
                method=method,
                roc_bounds=settings.roc_bounds,
                roc_threshold_grid=settings.roc_threshold_grid,
                roc_margin_grid=settings.roc_margin_grid,
                roc_directional=settings.roc_directional,
                ceo_cost_constraint=settings.ceo_cost_constraint,
            )
            for method in self.methods
        )

    def plan_for(self, dataset: Dataset) -> ExperimentPlan:
        return ExperimentPlan(
            dataset=dataset,
            bias_kinds=tuple(self.bias_kinds),
            grid=tuple(self.grid),
            folds=dict(self.folds),
            learner=self.learner,
            learner_params=self.learner_parameters(),
            methods=self.mitigation_specs(),
            seed=self.seed,
            eval_modes=tuple(m.value for m in self.eval_modes),
            stratified_folds=self.stratified_folds,
            jobs=self.jobs,
        )

    def store_config(self) -> dict:
        storage = self.storage.model_dump(mode='json')
        if storage['file_path'] is None:
            storage['file_path'] = self.output_dir
        return {'storage': storage}

    def with_overrides(
        self, seed: Optional[int] = None, output_dir: Optional[str] = None, jobs: Optional[int] = None
    ) -> 'RunConfig':
        changes = {k: v for k, v in (('seed', seed), ('output_dir', output_dir), ('jobs', jobs)) if v is not None}
        return self.model_copy(update=changes)


def parse_config(raw: Optional[dict]) -> RunConfig:
    try:
        return RunConfig.model_validate(raw or {})
    except ValidationError as e:
        raise ConfigError(f"Invalid run configuration:\n{e}")


def load_config(path: str) -> RunConfig:
    """
    Load and validate a YAML run configuration.
    """
    try:
        with open(path) as f:
            raw = yaml.safe_load(f)
    except FileNotFoundError:
        raise ConfigError(f"Configuration file not found: {path}")
    except yaml.YAMLError as e:
        raise ConfigError(f"Configuration file {path} is not valid YAML: {e}")
    if raw is not None and not isinstance(raw, dict):
        raise ConfigError(f"Configuration file {path} must hold a mapping")
    return parse_config(raw)
