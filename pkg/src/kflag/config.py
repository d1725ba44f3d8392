"""Run configuration defaults."""

from dataclasses import dataclass

from .rootsys import MAX_WEYL_ORDER

DEFAULT_SEED = 20240611
# exhaustive weight box [-LAMBDA_BOX, LAMBDA_BOX]^r for rank <= 2
LAMBDA_BOX = 2
# randomized weights use coordinates in [-RANDOM_LAMBDA_RANGE, RANDOM_LAMBDA_RANGE]
RANDOM_LAMBDA_RANGE = 3
# number of seeded weights per rank when the exhaustive box is not used
RANDOM_LAMBDA_COUNT = 20


@dataclass(frozen=True)
class RunConfig:
    family: str
    rank: int
    format: str = "text"
    seed: int = DEFAULT_SEED
    max_weyl_order: int = MAX_WEYL_ORDER
