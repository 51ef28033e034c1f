"""Forward-mode automatic differentiation with a fixed number of partials.

A Dual carries a float value and a tuple of partial derivatives.  Arithmetic
is generic enough that the closed-form flow, the retraction, and the flat
test forms can be evaluated on Duals unchanged, which yields exact (to
rounding) first derivatives for Jacobians and pullbacks.
"""

from __future__ import annotations

import math


class Dual:
    __slots__ = ("val", "grad")

    def __init__(self, val, grad):
        self.val = float(val)
        self.grad = tuple(float(g) for g in grad)

    @staticmethod
    def seed(values):
        """One Dual per value, with unit partial seeds."""
        n = len(values)
        return tuple(
            Dual(v, tuple(1.0 if i == j else 0.0 for j in range(n)))
            for i, v in enumerate(values)
        )

    def _zip(self, other, fn):
        return tuple(fn(a, b) for a, b in zip(self.grad, other.grad))

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val + other.val, self._zip(other, lambda a, b: a + b))
        return Dual(self.val + other, self.grad)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.val, tuple(-g for g in self.grad))

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val - other.val, self._zip(other, lambda a, b: a - b))
        return Dual(self.val - other, self.grad)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(
                self.val * other.val,
                tuple(
                    a * other.val + self.val * b for a, b in zip(self.grad, other.grad)
                ),
            )
        return Dual(self.val * other, tuple(g * other for g in self.grad))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            inv = 1.0 / other.val
            return Dual(
                self.val * inv,
                tuple(
                    (a - self.val * inv * b) * inv
                    for a, b in zip(self.grad, other.grad)
                ),
            )
        inv = 1.0 / other
        return Dual(self.val * inv, tuple(g * inv for g in self.grad))

    def __rtruediv__(self, other):
        inv = 1.0 / self.val
        v = other * inv
        return Dual(v, tuple(-v * inv * g for g in self.grad))

    def __pow__(self, k):
        if isinstance(k, int):
            if k == 0:
                return Dual(1.0, tuple(0.0 for _ in self.grad))
            d = k * self.val ** (k - 1)
            return Dual(self.val**k, tuple(d * g for g in self.grad))
        v = self.val**k
        d = k * self.val ** (k - 1)
        return Dual(v, tuple(d * g for g in self.grad))

    def __lt__(self, other):
        return self.val < value(other)

    def __le__(self, other):
        return self.val <= value(other)

    def __gt__(self, other):
        return self.val > value(other)

    def __ge__(self, other):
        return self.val >= value(other)

    def __repr__(self):
        return f"Dual({self.val}, {self.grad})"


def value(u):
    return u.val if isinstance(u, Dual) else float(u)


def sqrt(u):
    if isinstance(u, Dual):
        v = math.sqrt(u.val)
        d = 0.5 / v
        return Dual(v, tuple(d * g for g in u.grad))
    return math.sqrt(u)


def exp(u):
    if isinstance(u, Dual):
        v = math.exp(u.val)
        return Dual(v, tuple(v * g for g in u.grad))
    return math.exp(u)


def expm1(u):
    if isinstance(u, Dual):
        d = math.exp(u.val)
        return Dual(math.expm1(u.val), tuple(d * g for g in u.grad))
    return math.expm1(u)


def constant_like(c, template):
    """A constant with zero partials matching a Dual template, else a float."""
    if isinstance(template, Dual):
        return Dual(c, tuple(0.0 for _ in template.grad))
    return float(c)
