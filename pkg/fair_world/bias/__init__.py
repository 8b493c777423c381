from .label import inject_label_bias, score_scale
from .selection import RemovalPriority, removal_priority, removal_set
from .spec import BiasKind, BiasSpec
from .views import biased_view, exclude_group
