from .factory import LearnerFactory, LearnerParams
from .logistic import fit_logistic, logistic_objective
from .model import DECISION_THRESHOLD, TrainedModel, dump_model, model_to_dict
from .params import ForestParams, LearnerKind, LogisticParams, TreeParams
from .trees import fit_forest, fit_tree, sensitive_usage
