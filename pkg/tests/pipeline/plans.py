from fair_world.bias import BiasKind
from fair_world.ingestion import make_synthetic
from fair_world.learners import LearnerKind, TreeParams
from fair_world.mitigation import MitigationMethod, MitigationSpec
from fair_world.pipeline import ExperimentPlan


def tiny_plan(**changes) -> ExperimentPlan:
    """
    Three-fold label-bias plan over a small synthetic dataset, fast enough for unit tests.
    """
    settings = dict(
        dataset=make_synthetic(n=150, seed=5),
        bias_kinds=(BiasKind.LABEL,),
        grid=(0.0, 0.5),
        folds={BiasKind.LABEL: 3},
        learner=LearnerKind.TREE,
        learner_params=TreeParams(max_depth=3),
        methods=(MitigationSpec(MitigationMethod.REWEIGHING), MitigationSpec(MitigationMethod.EOP)),
        seed=7,
    )
    settings.update(changes)
    return ExperimentPlan(**settings)
