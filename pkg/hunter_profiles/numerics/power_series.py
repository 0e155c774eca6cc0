"""Truncated power series arithmetic used by the singular-point launcher."""

from __future__ import annotations

from typing import Iterable, Union

import numpy as np

Number = Union[int, float]


class TruncatedSeries:
    """Real power series c[0] + c[1] t + ... + c[N] t^N truncated at order N.

    Binary operations between series truncate at the smaller order. The
    derivative keeps the order and pads the top coefficient with zero, so a
    series built from an ansatz whose higher coefficients are unknown can be
    differentiated without shrinking.
    """

    __slots__ = ("c",)
    __array_priority__ = 100.0

    def __init__(self, coefficients: Iterable[float], order: int | None = None) -> None:
        c = np.array(list(coefficients), dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        if order is not None:
            if order < 0:
                raise ValueError(f"order cannot be negative: {order}")
            padded = np.zeros(order + 1)
            n = min(order + 1, c.size)
            padded[:n] = c[:n]
            c = padded
        self.c = c

    @classmethod
    def constant(cls, value: float, order: int) -> "TruncatedSeries":
        return cls([value], order=order)

    @classmethod
    def variable(cls, center: float, order: int) -> "TruncatedSeries":
        """The series of y = center + t."""
        return cls([center, 1.0], order=order)

    @property
    def order(self) -> int:
        return self.c.size - 1

    def __getitem__(self, index: int) -> float:
        return float(self.c[index])

    def __len__(self) -> int:
        return self.c.size

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.c.tolist()})"

    def _coerce(self, other: "TruncatedSeries | Number") -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(float(other), self.order)

    def __add__(self, other: "TruncatedSeries | Number") -> "TruncatedSeries":
        other = self._coerce(other)
        n = min(self.order, other.order) + 1
        return TruncatedSeries(self.c[:n] + other.c[:n])

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-self.c)

    def __sub__(self, other: "TruncatedSeries | Number") -> "TruncatedSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Number) -> "TruncatedSeries":
        return self._coerce(other) - self

    def __mul__(self, other: "TruncatedSeries | Number") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(float(other) * self.c)
        n = min(self.order, other.order) + 1
        return TruncatedSeries(np.convolve(self.c[:n], other.c[:n])[:n])

    __rmul__ = __mul__

    def __truediv__(self, other: "TruncatedSeries | Number") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.c / float(other))
        return self * other.reciprocal()

    def __rtruediv__(self, other: Number) -> "TruncatedSeries":
        return float(other) * self.reciprocal()

    def reciprocal(self) -> "TruncatedSeries":
        if self.c[0] == 0.0:
            raise ZeroDivisionError("leading coefficient of the denominator is zero")
        out = np.zeros_like(self.c)
        out[0] = 1.0 / self.c[0]
        for n in range(1, self.c.size):
            out[n] = -np.dot(self.c[1 : n + 1], out[n - 1 :: -1][:n]) / self.c[0]
        return TruncatedSeries(out)

    def __pow__(self, alpha: float) -> "TruncatedSeries":
        """Real power via q·p′ = α·p′·q; requires a positive leading coefficient."""

        p = self.c
        if p[0] <= 0.0:
            raise ValueError("real power needs a positive leading coefficient")
        q = np.zeros_like(p)
        q[0] = p[0] ** alpha
        for n in range(1, p.size):
            k = np.arange(1, n + 1)
            q[n] = np.sum((alpha * k - (n - k)) * p[k] * q[n - k]) / (n * p[0])
        return TruncatedSeries(q)

    def deriv(self) -> "TruncatedSeries":
        out = np.zeros_like(self.c)
        out[:-1] = self.c[1:] * np.arange(1, self.c.size)
        return TruncatedSeries(out)

    def __call__(self, t: float) -> float:
        return float(np.polyval(self.c[::-1], t))
