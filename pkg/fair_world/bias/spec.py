from dataclasses import dataclass
from enum import Enum

from ..exceptions import BiasInjectionError


class BiasKind(str, Enum):
    """
    Kinds of bias that can be injected into a fair dataset.
    """

    LABEL = "label"
    SELECT_RANDOM = "select_random"
    SELECT_SELF = "select_self"
    SELECT_MALICIOUS = "select_malicious"
    SELECT_WHOLE_RANDOM = "select_whole_random"

    @property
    def is_selection(self) -> bool:
        return self != BiasKind.LABEL


@dataclass(frozen=True)
class BiasSpec:
    """
    Fully determines one bias injection.

    Attributes:
        kind: Bias kind
        intensity: Label-bias intensity for ``label``, removal proportion for selection kinds
        noise: Label noise intensity; ignored by selection kinds
        seed: Seed of the injection
    """

    kind: BiasKind
    intensity: float
    noise: float = 0.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'kind', BiasKind(self.kind))
        if not 0.0 <= self.intensity <= 1.0:
            raise BiasInjectionError(f"Bias intensity must lie in [0, 1], got {self.intensity}")
        if self.noise < 0:
            raise BiasInjectionError(f"Noise intensity must be non-negative, got {self.noise}")

    @property
    def is_identity(self) -> bool:
        return self.intensity == 0.0
