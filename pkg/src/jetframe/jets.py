"""Jet points: a base point (t, x) together with derivative coordinates.

A multi-index alpha = (a1, a2) selects the mixed partial derivative
u_alpha = d^(a1+a2) u / dt^a1 dx^a2, so (0, 0) is u itself, (1, 0) is u_t,
(0, 1) is u_x and so on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, Tuple

from .errors import UsageError

MultiIndex = Tuple[int, int]


def multi_indices(order: int) -> Iterator[MultiIndex]:
    """All multi-indices with total order <= `order`, graded, t-degree minor."""
    for d in range(order + 1):
        for a1 in range(d + 1):
            yield (a1, d - a1)


@dataclass(frozen=True)
class Jet:
    """A point of the order-N jet space.

    `u` maps every multi-index of total order <= `order` to the value of the
    corresponding derivative coordinate; `u[(0, 0)]` is the value of u itself.
    Instances are treated as immutable: operations return new jets.
    """

    order: int
    t: float
    x: float
    u: Dict[MultiIndex, float] = field(repr=False)

    def __post_init__(self):
        if self.order < 0:
            raise UsageError(f"jet order must be non-negative, got {self.order}")
        missing = [a for a in multi_indices(self.order) if a not in self.u]
        if missing:
            raise UsageError(f"incomplete jet: missing entries {missing[:4]}")
        object.__setattr__(self, "u", dict(self.u))  # detach from the caller's dict

    def value(self, alpha: MultiIndex) -> float:
        try:
            return self.u[alpha]
        except KeyError:
            raise UsageError(
                f"jet of order {self.order} has no entry for alpha={alpha}"
            ) from None

    def indices(self) -> Iterator[MultiIndex]:
        return multi_indices(self.order)
