from .dataset import PRIVILEGED, UNPRIVILEGED, Dataset, FoldPlan, make_fold_plan
from .encoding import EncodedMatrix, FeatureEncoder, encode
