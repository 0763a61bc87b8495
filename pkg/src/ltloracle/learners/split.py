from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from ..errors import InvalidSpecError
from ..rng import SplitMix64


@dataclass(frozen=True)
class SplitSpec:
    """Each record joins the training part with probability ``fraction``."""

    fraction: float = 0.88
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.fraction < 1:
            raise InvalidSpecError(f"split fraction must lie in (0, 1), got {self.fraction}")


def split_indices(n: int, spec: SplitSpec) -> tuple[list[int], list[int]]:
    """Bernoulli train/test assignment of ``range(n)``.

    When one side comes out empty the draw is repeated with ``seed + 1``,
    then ``seed + 2`` and so on.
    """
    if n < 2:
        raise InvalidSpecError("splitting needs at least two records")
    seed = spec.seed
    while True:
        rng = SplitMix64(seed)
        train, test = [], []
        for i in range(n):
            (train if rng.random() < spec.fraction else test).append(i)
        if train and test:
            return train, test
        seed += 1


def split(dataset: Sequence, spec: SplitSpec) -> tuple[list, list]:
    train, test = split_indices(len(dataset), spec)
    return [dataset[i] for i in train], [dataset[i] for i in test]
