"""Forward-mode automatic differentiation with truncated Taylor series.

A :class:`Jet` generalizes dual numbers to arbitrary derivative order: it
stores the Taylor coefficients ``c_k = f^(k)(x0) / k!`` of a function value
along a single coordinate. Arithmetic on jets propagates derivatives exactly
(to roundoff), which is what lets differential operators be composed on
analytic wavefunctions without any finite-difference noise. Coefficients may
be Python floats or numpy arrays, so a jet can carry a whole grid at once.
"""

from __future__ import annotations

import numpy as np

__all__ = ["Jet", "exp", "value_of", "nth_derivative"]


class Jet:
    """Truncated Taylor series f(x0 + t) = sum_k coeffs[k] * t**k."""

    __slots__ = ("coeffs",)

    # keep numpy from absorbing jets into object arrays; binary ops with
    # ndarrays then dispatch to the reflected methods below
    __array_ufunc__ = None

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("a jet needs at least the order-zero coefficient")

    # -- construction -----------------------------------------------------

    @classmethod
    def variable(cls, x0, order: int) -> "Jet":
        """Seed jet for the expansion variable itself: [x0, 1, 0, ...]."""
        if order < 1:
            raise ValueError("variable jets need order >= 1")
        return cls((x0, 1.0) + (0.0,) * (order - 1))

    @classmethod
    def constant(cls, c, order: int) -> "Jet":
        return cls((c,) + (0.0,) * order)

    # -- inspection -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self):
        return self.coeffs[0]

    def derivative(self, k: int = 1):
        """k-th derivative at the expansion point (k! times the coefficient)."""
        if k > self.order:
            raise ValueError(f"jet of order {self.order} has no derivative {k}")
        fact = 1.0
        for i in range(2, k + 1):
            fact *= i
        return fact * self.coeffs[k]

    def is_seed(self) -> bool:
        """True for jets produced by :meth:`variable` (untouched seeds)."""
        if self.order < 1:
            return False
        tail = self.coeffs[1:]
        return all(np.isscalar(c) and c == (1.0 if i == 0 else 0.0)
                   for i, c in enumerate(tail))

    # -- structural helpers -----------------------------------------------

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError("cannot truncate upward")
        return Jet(self.coeffs[: order + 1])

    def differentiate(self) -> "Jet":
        """Jet of f', one order lower."""
        if self.order < 1:
            raise ValueError("order-0 jet cannot be differentiated")
        return Jet(tuple((k + 1) * c for k, c in enumerate(self.coeffs[1:])))

    def _coerce(self, other) -> "Jet | None":
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ValueError("jet orders do not match")
            return other
        if isinstance(other, (int, float, np.floating, np.integer, np.ndarray)):
            return Jet.constant(other, self.order)
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(tuple(b - a for a, b in zip(self.coeffs, o.coeffs)))

    def __neg__(self):
        return Jet(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Jet(tuple(c * other for c in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.order
        a, b = self.coeffs, o.coeffs
        out = []
        for k in range(n + 1):
            acc = a[0] * b[k]
            for i in range(1, k + 1):
                acc = acc + a[i] * b[k - i]
            out.append(acc)
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _jet_div(self, o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _jet_div(o, self)

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)) or (isinstance(p, float) and p.is_integer()):
            return _jet_int_pow(self, int(p))
        return _jet_real_pow(self, float(p))

    def exp(self) -> "Jet":
        a = self.coeffs
        out = [np.exp(a[0])]
        for k in range(1, self.order + 1):
            acc = 1.0 * a[1] * out[k - 1]
            for j in range(2, k + 1):
                acc = acc + j * a[j] * out[k - j]
            out.append(acc / k)
        return Jet(out)

    def sqrt(self) -> "Jet":
        return _jet_real_pow(self, 0.5)

    def __repr__(self):
        return f"Jet({list(self.coeffs)!r})"


def _jet_div(num: Jet, den: Jet) -> Jet:
    a, b = num.coeffs, den.coeffs
    out = [a[0] / b[0]]
    for k in range(1, num.order + 1):
        acc = a[k]
        for j in range(1, k + 1):
            acc = acc - b[j] * out[k - j]
        out.append(acc / b[0])
    return Jet(out)


def _jet_int_pow(f: Jet, p: int) -> Jet:
    if p == 0:
        return Jet.constant(1.0, f.order)
    if p < 0:
        return 1.0 / _jet_int_pow(f, -p)
    acc = f
    for _ in range(p - 1):
        acc = acc * f
    return acc


def _jet_real_pow(f: Jet, p: float) -> Jet:
    # standard Taylor recurrence for f**p; needs f.value > 0
    a = f.coeffs
    out = [a[0] ** p]
    for k in range(1, f.order + 1):
        acc = ((p + 1) * 1 - k) * a[1] * out[k - 1]
        for j in range(2, k + 1):
            acc = acc + ((p + 1) * j - k) * a[j] * out[k - j]
        out.append(acc / (k * a[0]))
    return Jet(out)


def exp(x):
    """exp() that works on floats, numpy arrays, and jets alike."""
    if isinstance(x, Jet):
        return x.exp()
    return np.exp(x)


def value_of(x):
    """Order-zero part of a jet; identity for plain numbers/arrays."""
    return x.value if isinstance(x, Jet) else x


def nth_derivative(fn, x, k: int):
    """k-th derivative of a jet-capable callable at x (scalar or array)."""
    if k == 0:
        return fn(x)
    return fn(Jet.variable(x, k)).derivative(k)
