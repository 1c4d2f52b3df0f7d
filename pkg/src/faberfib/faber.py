"""Partition-sum combinatorics for power and inverse coefficients.

`partial_bell(n, m, u)` is the coefficient of z^n in (u_1 z + ... +
u_n z^n)^m, written as the classical sum over partitions of n into m
parts.  `faber_polynomial(n, p, a)` assembles from these the coefficient
of z^n in (a_1 + a_2 z + a_3 z^2 + ...)^p for any integer exponent p,
positive or negative, using generalized binomial weights; with p = -n-1
shifted appropriately this yields the coefficients of a compositional
inverse without ever running a series reversion, which is the second,
independent route the tests play against `TruncatedSeries.revert`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .series import NormalizedSeries, TruncatedSeries

__all__ = [
    "partial_bell",
    "faber_polynomial",
    "faber_inverse_coefficients",
    "gap_inverse_coefficient",
]


@lru_cache(maxsize=None)
def _partition_multiplicities(n: int, m: int):
    """Multiplicity profiles ((part, count), ...) of partitions of n into m parts."""

    def descend(remaining, parts_left, max_part):
        if parts_left == 0:
            if remaining == 0:
                yield ()
            return
        # each remaining part is >= 1, so a part can take at most remaining - (parts_left - 1)
        top = min(max_part, remaining - (parts_left - 1))
        for part in range(top, 0, -1):
            count_cap = min(parts_left, remaining // part)
            for count in range(count_cap, 0, -1):
                rest_sum = remaining - part * count
                rest_parts = parts_left - count
                for tail in descend(rest_sum, rest_parts, part - 1):
                    yield ((part, count),) + tail

    return tuple(descend(n, m, n))


def partial_bell(n: int, m: int, u):
    """Sum over partitions of n into m parts of m!/(prod d_i!) * prod u_i^d_i.

    Equivalently the coefficient of z^n in (u_1 z + ... + u_n z^n)^m.
    `u` supplies u_1 .. u_n (longer is fine, extra entries are ignored);
    requires 1 <= m <= n.
    """
    if not 1 <= m <= n:
        raise ValueError(f"partition sum needs 1 <= m <= n, got n={n}, m={m}")
    u = list(u)
    if len(u) < n:
        raise ValueError(f"need {n} inputs u_1..u_{n}, got {len(u)}")
    total = 0
    m_fact = factorial(m)
    for profile in _partition_multiplicities(n, m):
        weight = m_fact
        for _, count in profile:
            weight //= factorial(count)
        term = weight
        for part, count in profile:
            term = term * u[part - 1] ** count
        total = total + term
    return total


def _falling_binomial(p: int, m: int) -> int:
    """p*(p-1)*...*(p-m+1) / m! as an exact integer, any integer p."""
    num = 1
    for j in range(m):
        num *= p - j
    return num // factorial(m)


def faber_polynomial(n: int, p: int, a):
    """Coefficient of z^n in (a_1 + a_2 z + a_3 z^2 + ...)^p with a_1 = 1.

    `a` supplies a_1 .. a_{n+1} (at least); p is any integer, with
    negative exponents handled through generalized binomial weights.
    Requires n >= 1 and a_1 == 1.
    """
    if n < 1:
        raise ValueError(f"coefficient index must be at least 1, got {n}")
    a = list(a)
    if len(a) < n + 1:
        raise ValueError(f"need {n + 1} inputs a_1..a_{n + 1}, got {len(a)}")
    if a[0] != 1:
        raise ValueError("leading input a_1 must be exactly 1")
    total = 0
    shifted = a[1 : n + 1]  # u_i = a_{i+1}; the z-expansion starts above the constant 1
    for m in range(1, n + 1):
        weight = _falling_binomial(p, m)
        if weight:
            total = total + weight * partial_bell(n, m, shifted)
    return total


def faber_inverse_coefficients(f: TruncatedSeries) -> NormalizedSeries:
    """Compositional inverse coefficients b_n = (1/n) * [z^{n-1}] (f(z)/z)^{-n}.

    An order-by-order closed form: no triangular solve is involved, so
    the result can be checked against `TruncatedSeries.revert`.
    """
    if not f.is_normalized:
        raise ValueError("inverse coefficients require a normalized series")
    upper = list(f.coeffs[1:])  # a_1 = 1, a_2, ..., a_N
    out = [f.field(0), f.field(1)]
    for n in range(2, f.order + 1):
        out.append(Fraction(1, n) * faber_polynomial(n - 1, -n, upper))
    return NormalizedSeries(out, f.field)


def gap_inverse_coefficient(n: int, a_n):
    """For f = z + a_n z^n (all middle coefficients zero), the inverse has b_n = -a_n."""
    if n < 2:
        raise ValueError(f"gap relation applies from the quadratic coefficient on, got {n}")
    return -a_n
