"""Right moving frames for the two normalizations of the symmetry group.

Both frames pin the base point to the origin and u to zero; they differ in
which first-order coordinate is normalized to +-1:

* time-normalized   pivot = u_t + u*u_x,  eps4 = ln|pivot| / 5
* space-normalized  pivot = u_x,          eps4 = ln|pivot| / 3

The sign of the pivot selects the branch; it is preserved by the (connected)
group, so each branch carries its own well-defined equivariant frame.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from enum import Enum

from .errors import SingularFrameError, UsageError
from .group import GroupElement, compose, inverse, prolong_act

SINGULAR_THRESHOLD = 1e-30
_CANCEL_ULPS = 32.0 * sys.float_info.epsilon


class FrameKind(Enum):
    """Which first-order coordinate the cross-section pins to +-1."""

    T_NORMALIZED = "t"
    X_NORMALIZED = "x"

    @property
    def pivot_name(self):
        return "u_t + u*u_x" if self is FrameKind.T_NORMALIZED else "u_x"

    @property
    def weight_denominator(self):
        # fractional-power denominator of this normalization's invariants
        return 5 if self is FrameKind.T_NORMALIZED else 3


def pivot_value(jet, kind):
    """The normalized quantity whose sign and size control the frame."""
    if jet.order < 1:
        raise UsageError("frames need a jet of order >= 1")
    if kind is FrameKind.T_NORMALIZED:
        return jet.u[(1, 0)] + jet.u[(0, 0)] * jet.u[(0, 1)]
    return jet.u[(0, 1)]


def is_singular_pivot(p, cancellation_scale=0.0):
    """True when a pivot is a hard zero or a pure cancellation artifact.

    `cancellation_scale` is the magnitude of the terms that were summed to
    form the pivot.  A result within a few ulps of that scale means the sum
    cancelled to roundoff, i.e. the exact pivot is zero; u_x needs no such
    scale because it is a single coordinate, not a sum.
    """
    return abs(p) < SINGULAR_THRESHOLD or abs(p) <= _CANCEL_ULPS * cancellation_scale


def _cancellation_scale(kind, u, u_t, u_x):
    if kind is FrameKind.T_NORMALIZED:
        return abs(u_t) + abs(u * u_x)
    return 0.0


def require_regular_pivot(jet, kind):
    p = pivot_value(jet, kind)
    scale = _cancellation_scale(kind, jet.u[(0, 0)], jet.u[(1, 0)], jet.u[(0, 1)])
    if is_singular_pivot(p, scale):
        raise SingularFrameError(kind.pivot_name, p, f"at (t, x) = ({jet.t}, {jet.x})")
    return p


@dataclass(frozen=True)
class FrameResult:
    """Frame element at one jet, together with its branch and pivot value."""

    rho: GroupElement
    branch: int
    pivot: float


def moving_frame(jet, kind):
    """Solve the normalization equations at `jet` for the group parameters.

    Translations and the boost remove the base point and u (eps1 = -t,
    eps2 = -x, eps3 = -u); the scaling eps4 = ln|pivot| / weight pins the
    pivot coordinate to branch = sign(pivot).  Applying the returned element
    to `jet` therefore lands exactly on the cross-section.
    """
    p = require_regular_pivot(jet, kind)
    eps4 = math.log(abs(p)) / kind.weight_denominator
    rho = GroupElement(-jet.t, -jet.x, -jet.u[(0, 0)], eps4)
    return FrameResult(rho=rho, branch=1 if p > 0 else -1, pivot=p)


def equivariance_defect(jet, g, kind):
    """Max parameter-wise gap between frame(g . jet) and frame(jet) * g^-1.

    Zero (up to roundoff) is the defining property of a right moving frame.
    """
    lhs = moving_frame(prolong_act(g, jet), kind).rho
    rhs = compose(moving_frame(jet, kind).rho, inverse(g))
    return max(abs(a - b) for a, b in zip(lhs.params(), rhs.params()))
