"""Truncated formal power series over an exact coefficient field.

A series carries exactly the coefficients c_0 .. c_N of its truncation
order N; coefficients beyond N are unknown, never assumed zero, so any
operation that would need them either drops the order (derivative) or
refuses mismatched operands.  The coefficient field is pluggable: any
of Fraction, QSqrt5, ExactComplex works, and binary operations join the
two fields upward.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import ExactComplex, QSqrt5

__all__ = ["TruncatedSeries", "NormalizedSeries", "join_field"]

_TOWER = (Fraction, QSqrt5, ExactComplex)


def join_field(first, second):
    """Smallest field in the Fraction < QSqrt5 < ExactComplex tower holding both."""
    if first is second:
        return first
    try:
        return _TOWER[max(_TOWER.index(first), _TOWER.index(second))]
    except ValueError:
        raise TypeError(
            f"cannot join coefficient fields {first.__name__} and {second.__name__}"
        ) from None


class TruncatedSeries:
    """Coefficients c_0 .. c_N of a power series truncated at order N."""

    def __init__(self, coeffs, field=Fraction):
        coeffs = tuple(field(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs at least its constant term")
        self.coeffs = coeffs
        self.field = field

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int):
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} is beyond truncation order {self.order}")
        return self.coeffs[k]

    def truncated(self, order: int) -> "TruncatedSeries":
        if not 0 <= order <= self.order:
            raise ValueError(f"cannot truncate order-{self.order} series to order {order}")
        return TruncatedSeries(self.coeffs[: order + 1], self.field)

    @property
    def is_normalized(self) -> bool:
        return (
            self.order >= 1
            and not self.coeffs[0]
            and self.coeffs[1] == self.field(1)
        )

    def _zip_with(self, other, op):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries operand")
        if other.order != self.order:
            raise ValueError(
                f"truncation orders differ: {self.order} vs {other.order}"
            )
        field = join_field(self.field, other.field)
        return TruncatedSeries(
            [op(a, b) for a, b in zip(self.coeffs, other.coeffs)], field
        )

    def __add__(self, other):
        return self._zip_with(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip_with(other, lambda a, b: a - b)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QSqrt5, ExactComplex)):
            return self.scaled(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if other.order != self.order:
            raise ValueError(
                f"truncation orders differ: {self.order} vs {other.order}"
            )
        field = join_field(self.field, other.field)
        n = self.order
        zero = field(0)
        out = [zero] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(0, n - i + 1):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out, field)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QSqrt5, ExactComplex)):
            return self.scaled(other)
        return NotImplemented

    def scaled(self, scalar) -> "TruncatedSeries":
        field = self.field
        if isinstance(scalar, QSqrt5):
            field = join_field(field, QSqrt5)
        elif isinstance(scalar, ExactComplex):
            field = join_field(field, ExactComplex)
        return TruncatedSeries([scalar * c for c in self.coeffs], field)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Coefficients of self(inner(w)) through the shared truncation order."""
        if not isinstance(inner, TruncatedSeries):
            raise TypeError("inner operand must be a TruncatedSeries")
        if inner.order != self.order:
            raise ValueError(
                f"truncation orders differ: {self.order} vs {inner.order}"
            )
        if inner.coeffs[0]:
            raise ValueError("inner series must have zero constant term")
        field = join_field(self.field, inner.field)
        n = self.order
        inner = TruncatedSeries(inner.coeffs, field)
        out = [field(self.coeffs[0])] + [field(0)] * n
        power = inner
        for k in range(1, n + 1):
            ck = self.coeffs[k]
            if ck:
                for j, p in enumerate(power.coeffs):
                    if p:
                        out[j] = out[j] + ck * p
            if k < n:
                power = power * inner
        return TruncatedSeries(out, field)

    def derivative(self) -> "TruncatedSeries":
        """Termwise derivative; the truncation order drops by one."""
        if self.order < 1:
            raise ValueError("cannot differentiate a constant truncation")
        return TruncatedSeries(
            [k * c for k, c in enumerate(self.coeffs) if k >= 1], self.field
        )

    def reciprocal(self) -> "TruncatedSeries":
        """Multiplicative inverse as a truncated series; needs c_0 != 0."""
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        one = self.field(1)
        out = [one / c0]
        for n in range(1, self.order + 1):
            acc = self.field(0)
            for i in range(1, n + 1):
                ci = self.coeffs[i]
                if ci:
                    acc = acc + ci * out[n - i]
            out.append(-acc / c0)
        return TruncatedSeries(out, self.field)

    def revert(self) -> "NormalizedSeries":
        """Compositional inverse g with self(g(w)) = w, solved order by order.

        Requires a normalized series (c_0 = 0, c_1 = 1).  Each new
        coefficient b_n is pinned by the order-n coefficient of the
        composition, which is triangular in the unknowns.
        """
        if not self.is_normalized:
            raise ValueError("compositional inverse requires c_0 = 0 and c_1 = 1")
        field = self.field
        n = self.order
        g = [field(0), field(1)] + [field(0)] * (n - 1)
        for k in range(2, n + 1):
            candidate = TruncatedSeries(g, field)
            residue = self.compose(candidate).coeffs[k]
            g[k] = -residue
        return NormalizedSeries(g, field)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        inner = ", ".join(str(c) for c in self.coeffs)
        return f"{type(self).__name__}([{inner}])"


class NormalizedSeries(TruncatedSeries):
    """A truncated series pinned to c_0 = 0, c_1 = 1 (a formal map z + ...)."""

    def __init__(self, coeffs, field=Fraction):
        super().__init__(coeffs, field)
        if not self.is_normalized:
            raise ValueError("normalized series requires c_0 = 0 and c_1 = 1")

    @classmethod
    def from_upper(cls, upper, field=Fraction) -> "NormalizedSeries":
        """Build z + a_2 z^2 + ... from the list [a_2, a_3, ...]."""
        return cls([0, 1, *upper], field)
