"""Dense truncated bivariate Taylor arithmetic.

A :class:`TruncatedSeries` is a polynomial in two offsets (dt, dx) kept to a
fixed total degree M.  Sums, Cauchy products and analytic composition are
exact up to truncation, which is what lets jets of analytic solutions be
produced to machine precision: the derivative d^(i+j)u/dt^i dx^j is just
i! j! times the (i, j) coefficient of the expansion of u.

Coefficients are stored densely in graded-lexicographic order (total degree
major, t-degree minor), so a series of order M owns (M+1)(M+2)/2 scalars and
truncation to a lower order is a prefix slice.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, UsageError


def triangle_size(order: int) -> int:
    return (order + 1) * (order + 2) // 2


def _pos(i, j):
    d = i + j
    return d * (d + 1) // 2 + i


class TruncatedSeries:
    """Bivariate polynomial sum c_ij dt^i dx^j over i + j <= order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=None):
        if order < 0:
            raise UsageError(f"series order must be non-negative, got {order}")
        self.order = order
        if coeffs is None:
            self.coeffs = np.zeros(triangle_size(order))
        else:
            coeffs = np.array(coeffs, dtype=float)  # own copy; values stay immutable
            if coeffs.shape != (triangle_size(order),):
                raise UsageError(
                    f"need {triangle_size(order)} coefficients for order {order}, "
                    f"got shape {coeffs.shape}"
                )
            self.coeffs = coeffs

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value, order):
        s = cls(order)
        s.coeffs[0] = value
        return s

    @classmethod
    def affine(cls, c0, ct, cx, order):
        """c0 + ct*dt + cx*dx, truncated at `order`."""
        s = cls(order)
        s.coeffs[0] = c0
        if order >= 1:
            s.coeffs[_pos(1, 0)] = ct
            s.coeffs[_pos(0, 1)] = cx
        return s

    # -- inspection --------------------------------------------------------

    @property
    def value(self):
        """Constant term (the value at the expansion point)."""
        return float(self.coeffs[0])

    def coeff(self, i, j):
        if i < 0 or j < 0 or i + j > self.order:
            raise UsageError(f"coefficient ({i},{j}) outside order {self.order}")
        return float(self.coeffs[_pos(i, j)])

    def derivative_value(self, i, j):
        """Value of d^(i+j)/dt^i dx^j at the expansion point: i! j! c_ij."""
        return math.factorial(i) * math.factorial(j) * self.coeff(i, j)

    def truncated(self, order):
        """Copy of this series cut down to a lower (or equal) order."""
        if order > self.order:
            raise UsageError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(order, self.coeffs[: triangle_size(order)].copy())

    def evaluate(self, dt, dx):
        total = 0.0
        for d in range(self.order, -1, -1):
            base = d * (d + 1) // 2
            for i in range(d + 1):
                total += self.coeffs[base + i] * dt**i * dx ** (d - i)
        return total

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:6])
        return f"TruncatedSeries(order={self.order}, coeffs=[{head}...])"

    # -- arithmetic --------------------------------------------------------

    def _check_order(self, other):
        if other.order != self.order:
            raise UsageError(
                f"series order mismatch: {self.order} vs {other.order}"
            )

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check_order(other)
            return TruncatedSeries(self.order, self.coeffs + other.coeffs)
        out = self.coeffs.copy()
        out[0] += other
        return TruncatedSeries(self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.order, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.order, self.coeffs * float(other))
        self._check_order(other)
        M = self.order
        out = np.zeros(triangle_size(M))
        a, b = self.coeffs, other.coeffs
        for d1 in range(M + 1):
            base1 = d1 * (d1 + 1) // 2
            for i1 in range(d1 + 1):
                c1 = a[base1 + i1]
                if c1 == 0.0:
                    continue
                for d2 in range(M - d1 + 1):
                    base2 = d2 * (d2 + 1) // 2
                    based = (d1 + d2) * (d1 + d2 + 1) // 2 + i1
                    for i2 in range(d2 + 1):
                        c2 = b[base2 + i2]
                        if c2 != 0.0:
                            out[based + i2] += c1 * c2
        return TruncatedSeries(M, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise UsageError("series ** only supports non-negative integer powers")
        result = TruncatedSeries.constant(1.0, self.order)
        for _ in range(n):
            result = result * self
        return result

    # -- differentiation ---------------------------------------------------

    def dt(self):
        """Formal derivative with respect to the t-offset (order drops by 1)."""
        if self.order == 0:
            raise UsageError("cannot differentiate an order-0 series")
        out = TruncatedSeries(self.order - 1)
        for d in range(self.order):
            for i in range(d + 1):
                out.coeffs[_pos(i, d - i)] = (i + 1) * self.coeffs[_pos(i + 1, d - i)]
        return out

    def dx(self):
        """Formal derivative with respect to the x-offset."""
        if self.order == 0:
            raise UsageError("cannot differentiate an order-0 series")
        out = TruncatedSeries(self.order - 1)
        for d in range(self.order):
            for i in range(d + 1):
                out.coeffs[_pos(i, d - i)] = (d - i + 1) * self.coeffs[_pos(i, d - i + 1)]
        return out


# -- analytic composition ----------------------------------------------------

ANALYTIC_KINDS = ("exp", "ln", "pow", "sech", "tanh")


def _univariate_coeffs(kind, a0, n, exponent=None):
    """Taylor coefficients f^(k)(a0)/k! of the univariate map `kind` at a0."""
    if kind == "exp":
        e = math.exp(a0)
        return [e / math.factorial(k) for k in range(n + 1)]
    if kind == "ln":
        if a0 <= 0.0:
            raise DomainError(f"ln requires a positive constant term, got {a0!r}")
        out = [math.log(a0)]
        for k in range(1, n + 1):
            out.append((-1.0) ** (k + 1) / (k * a0**k))
        return out
    if kind == "pow":
        if exponent is None:
            raise UsageError("pow requires an exponent")
        r = exponent
        if r == int(r):
            r = int(r)
            if r < 0 and a0 == 0.0:
                raise DomainError("negative power of a series with zero constant term")
        elif a0 <= 0.0:
            raise DomainError(
                f"non-integer power requires a positive constant term, got {a0!r}"
            )
        out = []
        binom = 1.0  # falling-factorial binomial C(r, k)
        for k in range(n + 1):
            if isinstance(r, int) and k > r >= 0:
                out.append(0.0)
                continue
            out.append(binom * a0 ** (r - k))
            binom *= (r - k) / (k + 1)
        return out
    if kind in ("sech", "tanh"):
        # coupled recurrences from s' = -s*t and t' = s^2
        s = [1.0 / math.cosh(a0)]
        t = [math.tanh(a0)]
        for k in range(n):
            s.append(-sum(s[m] * t[k - m] for m in range(k + 1)) / (k + 1))
            t.append(sum(s[m] * s[k - m] for m in range(k + 1)) / (k + 1))
        return s if kind == "sech" else t
    raise UsageError(f"unknown analytic function {kind!r}; pick one of {ANALYTIC_KINDS}")


def analytic(kind, a, exponent=None):
    """Compose an analytic map with a series: exact Taylor re-expansion.

    Parameters
    ----------
    kind : str
        One of ``exp``, ``ln``, ``pow``, ``sech``, ``tanh``.
    a : TruncatedSeries
        Inner series; its constant term must lie in the domain of `kind`
        (positive for ``ln`` and for ``pow`` with a non-integer exponent).
    exponent : float, optional
        Exponent for ``pow``; ignored otherwise.
    """
    coeffs = _univariate_coeffs(kind, a.value, a.order, exponent)
    b = a - a.value  # zero constant term, so b**k has minimum degree k
    result = TruncatedSeries.constant(coeffs[-1], a.order)
    for k in range(a.order - 1, -1, -1):
        result = result * b + coeffs[k]
    return result


def series_exp(a):
    return analytic("exp", a)


def series_ln(a):
    return analytic("ln", a)


def series_pow(a, exponent):
    return analytic("pow", a, exponent)


def series_sech(a):
    return analytic("sech", a)


def series_tanh(a):
    return analytic("tanh", a)


def series_recip(a):
    return analytic("pow", a, -1)
