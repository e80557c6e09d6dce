"""Closed-form normalized differential invariants and their calculus.

For a multi-index alpha = (a1, a2) with a1 + a2 >= 1, both frames share the
binomial core  S_alpha = sum_k C(a1, k) u^k u[a1-k, a2+k]  and differ only in
the fractional-power prefactor built from their pivot:

    time-normalized:   I_alpha = |u_t + u*u_x|^(-(3*a1+a2+2)/5) * S_alpha
    space-normalized:  I_alpha = |u_x|^(-(3*a1+a2+2)/3)        * S_alpha

The invariantized u itself is identically zero (the boost removes it), and
the pivot's own entry equals the branch sign.  On jets of solutions the
invariantized equation collapses to  branch + I[0,3] = 0  (time-normalized)
and  I[1,0] + I[0,3] = 0  (space-normalized).

Invariant differentiation is carried out along an exact solution in Taylor
arithmetic (a :class:`SolutionGerm`), so recurrence and commutator identities
can be checked without finite differences.  Throughout, the branch sign s
multiplies the correction terms; on the positive branch every formula reduces
to its classical form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict

from .errors import (
    DegeneratePointError,
    SingularFrameError,
    UnsupportedFrameError,
    UsageError,
)
from .frame import FrameKind, is_singular_pivot, require_regular_pivot
from .jets import MultiIndex, multi_indices
from .solutions import jet_of_solution
from .taylor import TruncatedSeries, series_pow


def _weight(alpha, kind):
    # exact integer pair (numerator, denominator) of the scaling weight
    a1, a2 = alpha
    return 3 * a1 + a2 + 2, kind.weight_denominator


def normalized_invariant(jet, alpha, kind):
    """Invariant I_alpha of the chosen frame, read off a single jet.

    Equals the alpha-entry of the jet after applying its own moving frame;
    the closed form above avoids actually constructing the frame.  (0, 0)
    returns 0 identically (the invariantized u), and on the negative branch
    the prefactor uses |pivot| with the sign carried separately.
    """
    a1, a2 = alpha
    if a1 < 0 or a2 < 0:
        raise UsageError(f"invalid multi-index {alpha}")
    if a1 + a2 > jet.order:
        raise UsageError(f"alpha={alpha} exceeds jet order {jet.order}")
    if a1 + a2 == 0:
        return 0.0
    p = require_regular_pivot(jet, kind)
    w_num, w_den = _weight(alpha, kind)
    u = jet.u[(0, 0)]
    acc = 0.0
    for k in range(a1 + 1):
        acc += math.comb(a1, k) * u**k * jet.u[(a1 - k, a2 + k)]
    return math.exp(-w_num * math.log(abs(p)) / w_den) * acc


@dataclass(frozen=True)
class InvariantTable:
    """All normalized invariants of one frame at one jet, up to `order`.

    `values` holds I_alpha for every multi-index of total order <= order;
    `phantoms` records the invariantized coordinates pinned by the
    cross-section, keyed by what they invariantize ("t", "x", "u" and the
    pivot derivative "u_t" or "u_x").
    """

    kind: FrameKind
    order: int
    branch: int
    values: Dict[MultiIndex, float]
    phantoms: Dict[str, float]

    def value(self, alpha):
        try:
            return self.values[alpha]
        except KeyError:
            raise UsageError(
                f"invariant table of order {self.order} has no entry {alpha}"
            ) from None


def invariant_table(jet, kind, order):
    """Tabulate every I_alpha with total order <= `order` at one jet."""
    if order > jet.order:
        raise UsageError(f"table order {order} exceeds jet order {jet.order}")
    p = require_regular_pivot(jet, kind)
    branch = 1 if p > 0 else -1
    values = {alpha: normalized_invariant(jet, alpha, kind) for alpha in multi_indices(order)}
    pivot_key = "u_t" if kind is FrameKind.T_NORMALIZED else "u_x"
    phantoms = {"t": 0.0, "x": 0.0, "u": 0.0, pivot_key: float(branch)}
    return InvariantTable(kind=kind, order=order, branch=branch, values=values, phantoms=phantoms)


class InvDirection(Enum):
    """Direction of invariant differentiation: invariantized D_t or D_x."""

    T = "t"
    X = "x"


class SolutionGerm:
    """Taylor expansions of jet data and invariants along one solution.

    Everything is expanded around a fixed base point (t0, x0) to a fixed
    total order, so invariant differentiation becomes exact series algebra:
    each application of an invariant derivative costs one series order.
    """

    def __init__(self, solution, t0, x0, order):
        self.solution = solution
        self.t0 = float(t0)
        self.x0 = float(x0)
        self.order = order
        self._master = solution.series(t0, x0, order)
        self._entries = {(0, 0): self._master}

    def jet_entry(self, alpha):
        """Series of u_alpha around the base point (order drops by |alpha|)."""
        if alpha not in self._entries:
            a1, a2 = alpha
            if a1 + a2 > self.order:
                raise UsageError(
                    f"germ of order {self.order} cannot expand u_{alpha}"
                )
            parent = self.jet_entry((a1 - 1, a2)) if a1 else self.jet_entry((a1, a2 - 1))
            self._entries[alpha] = parent.dt() if a1 else parent.dx()
        return self._entries[alpha]

    def pivot_series(self, kind, order):
        if kind is FrameKind.T_NORMALIZED:
            u = self.jet_entry((0, 0)).truncated(order)
            return self.jet_entry((1, 0)).truncated(order) + u * self.jet_entry((0, 1)).truncated(order)
        return self.jet_entry((0, 1)).truncated(order)

    def branch(self, kind):
        p = self.pivot_series(kind, 0).value
        u = self.jet_entry((0, 0)).value
        u_t = self.jet_entry((1, 0)).value if self.order >= 1 else 0.0
        u_x = self.jet_entry((0, 1)).value if self.order >= 1 else 0.0
        scale = abs(u_t) + abs(u * u_x) if kind is FrameKind.T_NORMALIZED else 0.0
        if is_singular_pivot(p, scale):
            raise SingularFrameError(
                kind.pivot_name, p, f"at (t, x) = ({self.t0}, {self.x0})"
            )
        return 1 if p > 0 else -1

    def invariant_series(self, alpha, kind, order):
        """Series of (t, x) -> I_alpha(jet at (t, x)) along the solution."""
        a1, a2 = alpha
        if a1 + a2 + order > self.order:
            raise UsageError(
                f"germ of order {self.order} too short for I_{alpha} at series order {order}"
            )
        if a1 + a2 == 0:
            return TruncatedSeries.constant(0.0, order)  # invariantized u vanishes
        s = self.branch(kind)
        w_num, w_den = _weight(alpha, kind)
        prefactor = series_pow(float(s) * self.pivot_series(kind, order), -w_num / w_den)
        u = self.jet_entry((0, 0)).truncated(order)
        acc = TruncatedSeries.constant(0.0, order)
        for k in range(a1 + 1):
            acc = acc + math.comb(a1, k) * (u**k) * self.jet_entry((a1 - k, a2 + k)).truncated(order)
        return prefactor * acc

    def differentiate(self, series, direction, kind):
        """Apply the frame's invariant derivative; series order drops by one.

        time-normalized:  D_t^i = |pivot|^(-3/5) (D_t + u D_x),  D_x^i = |pivot|^(-1/5) D_x
        space-normalized: D_t^i = |u_x|^(-1) (D_t + u D_x),      D_x^i = |u_x|^(-1/3) D_x
        """
        if series.order < 1:
            raise UsageError("series too short to differentiate")
        r = series.order - 1
        s = self.branch(kind)
        p = float(s) * self.pivot_series(kind, r)
        if direction is InvDirection.T:
            base = series.dt() + self.jet_entry((0, 0)).truncated(r) * series.dx()
            exponent = -3.0 / 5.0 if kind is FrameKind.T_NORMALIZED else -1.0
        else:
            base = series.dx()
            exponent = -1.0 / 5.0 if kind is FrameKind.T_NORMALIZED else -1.0 / 3.0
        return series_pow(p, exponent) * base


def invariant_derivative(solution, t0, x0, alpha, direction, kind):
    """(D^i I_alpha)(t0, x0) along `solution`, exact to machine precision."""
    germ = SolutionGerm(solution, t0, x0, alpha[0] + alpha[1] + 1)
    F = germ.invariant_series(alpha, kind, 1)
    return germ.differentiate(F, direction, kind).value


def invariant_commutator(solution, t0, x0, alpha, kind):
    """Value of the frame's commutator bracket applied to I_alpha.

    The bracket follows each frame's own orientation convention:
    [D_t^i, D_x^i] for the time-normalized frame and [D_x^i, D_t^i] for the
    space-normalized one.
    """
    germ = SolutionGerm(solution, t0, x0, alpha[0] + alpha[1] + 2)
    F = germ.invariant_series(alpha, kind, 2)
    dtF = germ.differentiate(F, InvDirection.T, kind)
    dxF = germ.differentiate(F, InvDirection.X, kind)
    dt_dx = germ.differentiate(dxF, InvDirection.T, kind).value
    dx_dt = germ.differentiate(dtF, InvDirection.X, kind).value
    if kind is FrameKind.T_NORMALIZED:
        return dt_dx - dx_dt
    return dx_dt - dt_dx


def recurrence_rhs(table, alpha, direction):
    """Right-hand side of the space-normalized split recurrence at `alpha`.

    With s the branch sign and w = (3*a1 + a2 + 2)/3,

        D_t^i I_alpha = I[a1+1, a2] - s*w*I[1,1]*I_alpha + a1*I[1,0]*I[a1-1, a2+1]
        D_x^i I_alpha = I[a1, a2+1] - s*w*I[0,2]*I_alpha + s*a1*I[a1-1, a2+1]

    On the positive branch these are the classical recurrences.  Only
    non-phantom indices (a1 > 0 or a2 > 1) are admitted.
    """
    if table.kind is not FrameKind.X_NORMALIZED:
        raise UnsupportedFrameError(
            "split recurrences are tabulated for the space-normalized frame only"
        )
    a1, a2 = alpha
    if not (a1 > 0 or a2 > 1):
        raise UsageError(f"recurrence undefined at phantom index {alpha}")
    s = float(table.branch)
    w_num, _ = _weight(alpha, table.kind)
    i_alpha = table.value(alpha)
    if direction is InvDirection.T:
        out = table.value((a1 + 1, a2)) - s * (w_num / 3.0) * table.value((1, 1)) * i_alpha
        if a1 > 0:
            out += a1 * table.value((1, 0)) * table.value((a1 - 1, a2 + 1))
        return out
    out = table.value((a1, a2 + 1)) - s * (w_num / 3.0) * table.value((0, 2)) * i_alpha
    if a1 > 0:
        out += s * a1 * table.value((a1 - 1, a2 + 1))
    return out


def commutator_coefficients(table):
    """Structure coefficients (aT, aX) of the frame's commutation relation.

    time-normalized:   [D_t^i, D_x^i] = aT*D_t^i + aX*D_x^i,
                       aT = (3/5)*s*(I[1,1] + I[0,1]^2),
                       aX = -(1/5)*(s*I[2,0] + 6*I[0,1])
    space-normalized:  [D_x^i, D_t^i] = aT*D_t^i + aX*D_x^i,
                       aT = -s*I[0,2],  aX = s*(1 + I[1,1]/3)

    with s the branch sign; s = +1 gives the classical coefficients.
    """
    if table.order < 2:
        raise UsageError("commutator coefficients need a table of order >= 2")
    s = float(table.branch)
    if table.kind is FrameKind.T_NORMALIZED:
        i01, i11, i20 = table.value((0, 1)), table.value((1, 1)), table.value((2, 0))
        return (3.0 / 5.0) * s * (i11 + i01**2), -(1.0 / 5.0) * (s * i20 + 6.0 * i01)
    i02, i11 = table.value((0, 2)), table.value((1, 1))
    return -s * i02, s * (1.0 + i11 / 3.0)


def _guard_denominator(den, scale_terms):
    scale = max(1.0, *(abs(v) for v in scale_terms))
    if abs(den) <= 1e-8 * scale:
        raise DegeneratePointError(
            f"reconstruction denominator {den!r} is degenerate at this base point"
        )


def reconstruct_generators(solution, t0, x0, kind):
    """Rebuild I[2,0] from the frame's single generating invariant.

    The generator is I[0,1] for the time-normalized frame and I[1,0] for the
    space-normalized one; combining the commutation relation with the
    low-order recurrences eliminates every other invariant.  Returns the pair
    (reconstructed, direct) so callers can compare against the closed form.
    """
    germ = SolutionGerm(solution, t0, x0, 4)
    s = float(germ.branch(kind))
    if kind is FrameKind.T_NORMALIZED:
        F = germ.invariant_series((0, 1), kind, 2)
        dtF = germ.differentiate(F, InvDirection.T, kind)
        dxF = germ.differentiate(F, InvDirection.X, kind)
        i01, dt, dx = F.value, dtF.value, dxF.value
        bracket = (
            germ.differentiate(dxF, InvDirection.T, kind).value
            - germ.differentiate(dtF, InvDirection.X, kind).value
        )
        num = bracket - (3.0 / 5.0) * s * (dt + (8.0 / 5.0) * i01**2) * dt + (6.0 / 5.0) * i01 * dx
        den = (9.0 / 25.0) * i01 * dt - (1.0 / 5.0) * s * dx
        _guard_denominator(den, (num, (9.0 / 25.0) * i01 * dt, (1.0 / 5.0) * dx))
        reconstructed = num / den
    else:
        F = germ.invariant_series((1, 0), kind, 2)
        dtF = germ.differentiate(F, InvDirection.T, kind)
        dxF = germ.differentiate(F, InvDirection.X, kind)
        i10, dt, dx = F.value, dtF.value, dxF.value
        bracket = (
            germ.differentiate(dtF, InvDirection.X, kind).value
            - germ.differentiate(dxF, InvDirection.T, kind).value
        )
        den = (5.0 / 9.0) * i10 * dx - s * dt
        num = bracket - (1.0 / 3.0) * s * (dx + 2.0) * dx
        _guard_denominator(den, (num, (5.0 / 9.0) * i10 * dx, dt))
        i02 = num / den
        i11 = dx + (5.0 / 3.0) * s * i10 * i02 - 1.0
        reconstructed = dt + (5.0 / 3.0) * s * i11 * i10 - s * i10
    direct = normalized_invariant(jet_of_solution(solution, t0, x0, 2), (2, 0), kind)
    return reconstructed, direct
