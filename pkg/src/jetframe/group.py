"""The four-parameter point-symmetry group of u_t + u*u_x + u_xxx = 0.

A group element is the composition (applied left to right) of a time
translation eps1, a space translation eps2, a Galilean boost eps3 and a
scaling eps4, acting on base variables as

    T = exp(3*eps4) * (t + eps1)
    X = exp(eps4)   * (x + eps2 + eps1*eps3 + eps3*t)
    U = exp(-2*eps4) * (u + eps3)

Derivative coordinates of any order transform in closed form: the boost mixes
t-derivatives into x-derivatives through a binomial sum and the scaling acts
with weight 3*a1 + a2 + 2 on the multi-index (a1, a2).  The module also hosts
the infinitesimal side: vector fields c1*d_t + c2*d_x + c3*(t d_x + d_u)
+ c4*(3t d_t + x d_x - 2u d_u), their prolongation coefficients, and a
finite-difference application of the prolonged field to jet functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, UsageError
from .jets import Jet

_MAX_PROLONG_ORDER = 30  # binomial weights stay exact integers well past this


@dataclass(frozen=True)
class GroupElement:
    """Parameters (eps1, eps2, eps3, eps4) of one symmetry transformation."""

    eps1: float = 0.0
    eps2: float = 0.0
    eps3: float = 0.0
    eps4: float = 0.0

    @classmethod
    def identity(cls):
        return cls(0.0, 0.0, 0.0, 0.0)

    def params(self):
        return (self.eps1, self.eps2, self.eps3, self.eps4)


def act_point(g, point):
    """Image (T, X, U) of a base-space point (t, x, u) under g."""
    t, x, u = point
    b = math.exp(g.eps4)
    return (
        b**3 * (t + g.eps1),
        b * (x + g.eps2 + g.eps1 * g.eps3 + g.eps3 * t),
        (u + g.eps3) / b**2,
    )


def compose(g2, g1):
    """Element acting as g1 first, then g2 (the group product g2 * g1).

    The parameter law below is the canonical re-extraction of
    (eps1, eps2, eps3, eps4) from the composition of the two affine maps;
    keeping it in closed form makes eps4 exactly additive and composition
    with the identity bit-exact.
    """
    e1, e2, e3, e4 = g1.params()
    f1, f2, f3, f4 = g2.params()
    return GroupElement(
        e1 + math.exp(-3.0 * e4) * f1,
        e2 + math.exp(-e4) * f2 - math.exp(-3.0 * e4) * f1 * e3,
        e3 + math.exp(2.0 * e4) * f3,
        e4 + f4,
    )


def inverse(g):
    e1, e2, e3, e4 = g.params()
    return GroupElement(
        -math.exp(3.0 * e4) * e1,
        -math.exp(e4) * (e2 + e1 * e3),
        -math.exp(-2.0 * e4) * e3,
        -e4,
    )


def prolong_act(g, jet):
    """Prolonged action of g on a jet; the output jet has the same order.

    The base point moves by :func:`act_point`.  Each derivative coordinate
    with multi-index (a1, a2), a1 + a2 >= 1, becomes

        U_alpha = exp(-(3*a1 + a2 + 2)*eps4)
                  * sum_k (-eps3)^k C(a1, k) u[a1 - k, a2 + k]

    which is closed at fixed total order because the boost trades one
    t-derivative for one x-derivative at a time.
    """
    if jet.order > _MAX_PROLONG_ORDER:
        raise UsageError(f"prolonged action supported up to order {_MAX_PROLONG_ORDER}")
    T, X, U0 = act_point(g, (jet.t, jet.x, jet.u[(0, 0)]))
    values = {(0, 0): U0}
    for alpha in jet.indices():
        a1, a2 = alpha
        if a1 + a2 == 0:
            continue
        acc = 0.0
        for k in range(a1 + 1):
            acc += (-g.eps3) ** k * math.comb(a1, k) * jet.u[(a1 - k, a2 + k)]
        values[alpha] = math.exp(-(3 * a1 + a2 + 2) * g.eps4) * acc
    return Jet(order=jet.order, t=T, x=X, u=values)


@dataclass(frozen=True)
class VectorField:
    """Infinitesimal generator with coefficients in the standard basis.

    The field is tau*d_t + xi*d_x + eta*d_u with
    tau = 3*c4*t + c1, xi = c4*x + c3*t + c2, eta = -2*c4*u + c3.
    """

    c1: float = 0.0
    c2: float = 0.0
    c3: float = 0.0
    c4: float = 0.0

    @classmethod
    def time_translation(cls):
        return cls(c1=1.0)

    @classmethod
    def space_translation(cls):
        return cls(c2=1.0)

    @classmethod
    def galilean_boost(cls):
        return cls(c3=1.0)

    @classmethod
    def scaling(cls):
        return cls(c4=1.0)

    @classmethod
    def basis(cls):
        return (
            cls.time_translation(),
            cls.space_translation(),
            cls.galilean_boost(),
            cls.scaling(),
        )

    def tau(self, t, x, u):
        return 3.0 * self.c4 * t + self.c1

    def xi(self, t, x, u):
        return self.c4 * x + self.c3 * t + self.c2

    def eta(self, t, x, u):
        return -2.0 * self.c4 * u + self.c3


def eta_alpha(v, alpha, jet):
    """Coefficient of d/du_alpha in the prolongation of v, evaluated on a jet.

    For a1 + a2 >= 1 this is -(3*a1 + a2 + 2)*c4*u_alpha - a1*c3*u[a1-1, a2+1];
    at (0, 0) it is the u-coefficient of the field itself, -2*c4*u + c3.
    """
    a1, a2 = alpha
    if a1 < 0 or a2 < 0:
        raise UsageError(f"invalid multi-index {alpha}")
    if a1 + a2 == 0:
        return v.eta(jet.t, jet.x, jet.u[(0, 0)])
    out = -(3 * a1 + a2 + 2) * v.c4 * jet.value(alpha)
    if a1 > 0:
        out -= a1 * v.c3 * jet.value((a1 - 1, a2 + 1))
    return out


def _perturbed(jet, which, delta):
    if which == "t":
        return Jet(jet.order, jet.t + delta, jet.x, dict(jet.u))
    if which == "x":
        return Jet(jet.order, jet.t, jet.x + delta, dict(jet.u))
    u = dict(jet.u)
    u[which] += delta
    return Jet(jet.order, jet.t, jet.x, u)


def pr_v_apply(v, F, jet, step=1e-6):
    """Apply the prolonged vector field to a jet function by finite differences.

    Returns tau*dF/dt + xi*dF/dx + sum_alpha eta^alpha * dF/du_alpha at `jet`,
    with every partial taken by a central difference of relative step `step`.
    Vanishes (up to the finite-difference error) exactly when F is a
    differential invariant of the one-parameter group generated by v.
    """

    def partial(which, base):
        h = step * max(1.0, abs(base))
        hi = F(_perturbed(jet, which, +h))
        lo = F(_perturbed(jet, which, -h))
        if not (math.isfinite(hi) and math.isfinite(lo)):
            raise DomainError(f"jet function not finite near the base jet ({which})")
        return (hi - lo) / (2.0 * h)

    t, x, u = jet.t, jet.x, jet.u[(0, 0)]
    total = v.tau(t, x, u) * partial("t", t) + v.xi(t, x, u) * partial("x", x)
    for alpha in jet.indices():
        coeff = eta_alpha(v, alpha, jet)
        if coeff != 0.0:
            total += coeff * partial(alpha, jet.u[alpha])
    return total


def determining_equation_residuals(v, t, x, u, step=0.5):
    """Residuals of the eight linear constraints the coefficients must satisfy.

    tau_x = tau_u = xi_u = eta_t = eta_x = 0,
    eta = xi_t - (2/3) u tau_t,  eta_u = -(2/3) tau_t,  eta_u = -2 xi_x.

    Partials are taken by central differences; the coefficient functions are
    affine, so any step gives the exact derivative up to roundoff.
    """

    def d(f, which):
        args = {"t": t, "x": x, "u": u}
        hi, lo = dict(args), dict(args)
        hi[which] += step
        lo[which] -= step
        return (f(**hi) - f(**lo)) / (2.0 * step)

    tau, xi, eta = v.tau, v.xi, v.eta
    tau_t = d(tau, "t")
    eta_u = d(eta, "u")
    return (
        d(tau, "x"),
        d(tau, "u"),
        d(xi, "u"),
        d(eta, "t"),
        d(eta, "x"),
        eta(t=t, x=x, u=u) - d(xi, "t") + (2.0 / 3.0) * u * tau_t,
        eta_u + (2.0 / 3.0) * tau_t,
        eta_u + 2.0 * d(xi, "x"),
    )
