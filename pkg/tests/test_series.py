"""Truncated power series: ring ops, composition, reversion, calculus helpers."""

import random
from fractions import Fraction

import pytest

from faberfib import ExactComplex, NormalizedSeries, QSqrt5, TruncatedSeries, join_field


def rand_fraction(rng, span=30):
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def rand_series(rng, order, field=Fraction):
    return TruncatedSeries([field(rand_fraction(rng)) for _ in range(order + 1)], field=field)


def rand_normalized(rng, order):
    return NormalizedSeries.from_upper([rand_fraction(rng) for _ in range(order - 1)])


def identity(order, field=Fraction):
    return TruncatedSeries([field(0), field(1)] + [field(0)] * (order - 1), field=field)


class TestConstruction:
    def test_order_and_coefficients(self):
        f = TruncatedSeries([1, 2, 3])
        assert f.order == 2
        assert f.coefficient(0) == 1
        assert f.coefficient(2) == 3
        with pytest.raises(IndexError):
            f.coefficient(3)
        with pytest.raises(IndexError):
            f.coefficient(-1)

    def test_field_coercion(self):
        f = TruncatedSeries([1, Fraction(1, 2)], field=QSqrt5)
        assert isinstance(f.coefficient(0), QSqrt5)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            TruncatedSeries([])

    def test_truncated(self):
        f = TruncatedSeries([1, 2, 3, 4])
        assert f.truncated(1) == TruncatedSeries([1, 2])
        assert f.truncated(3) == f
        with pytest.raises(ValueError):
            f.truncated(4)

    def test_normalized_validation(self):
        g = NormalizedSeries.from_upper([Fraction(1, 2), Fraction(1, 3)])
        assert g.order == 3
        assert g.coefficient(0) == 0 and g.coefficient(1) == 1
        assert g.is_normalized
        with pytest.raises(ValueError):
            NormalizedSeries([1, 1, 0])
        with pytest.raises(ValueError):
            NormalizedSeries([0, 2, 0])
        assert NormalizedSeries.from_upper([]) == TruncatedSeries([0, 1])


class TestRingOps:
    def test_mul_examples(self):
        one_plus = TruncatedSeries([1, 1, 0])
        one_minus = TruncatedSeries([1, -1, 0])
        assert one_plus * one_minus == TruncatedSeries([1, 0, -1])
        z = TruncatedSeries([0, 1, 0, 0])
        assert z * z == TruncatedSeries([0, 0, 1, 0])

    def test_strict_order_mismatch(self):
        with pytest.raises(ValueError):
            TruncatedSeries([1, 1]) + TruncatedSeries([1, 1, 1])
        with pytest.raises(ValueError):
            TruncatedSeries([1, 1]) * TruncatedSeries([1, 1, 1])

    def test_ring_axioms_randomized(self):
        rng = random.Random(201)
        for _ in range(60):
            f, g, h = (rand_series(rng, 6) for _ in range(3))
            assert (f + g) + h == f + (g + h)
            assert f * g == g * f
            assert (f * g) * h == f * (g * h)
            assert f * (g + h) == f * g + f * h
            assert f - f == TruncatedSeries([0] * 7)

    def test_scalar_ops(self):
        f = TruncatedSeries([1, 2, 3])
        assert f.scaled(Fraction(1, 2)) == TruncatedSeries([Fraction(1, 2), 1, Fraction(3, 2)])
        assert f * Fraction(2) == TruncatedSeries([2, 4, 6])
        assert Fraction(2) * f == f * Fraction(2)

    def test_join_field(self):
        assert join_field(Fraction, QSqrt5) is QSqrt5
        assert join_field(QSqrt5, ExactComplex) is ExactComplex
        assert join_field(Fraction, Fraction) is Fraction
        f = TruncatedSeries([1, 1], field=Fraction)
        g = TruncatedSeries([QSqrt5(0, 1), 0], field=QSqrt5)
        assert (f * g).field is QSqrt5


class TestReciprocal:
    def test_geometric(self):
        f = TruncatedSeries([1, -1, 0, 0])
        assert f.reciprocal() == TruncatedSeries([1, 1, 1, 1])

    def test_round_trip_random(self):
        rng = random.Random(202)
        for _ in range(60):
            f = rand_series(rng, 7)
            if f.coefficient(0) == 0:
                continue
            one = TruncatedSeries([1] + [0] * 7)
            assert f * f.reciprocal() == one

    def test_zero_constant_rejected(self):
        with pytest.raises(ZeroDivisionError):
            TruncatedSeries([0, 1]).reciprocal()


class TestCompose:
    def test_identity_inner(self):
        rng = random.Random(203)
        f = rand_series(rng, 6)
        assert f.compose(identity(6)) == f

    def test_small_example(self):
        f = TruncatedSeries([0, 1, 1, 0])
        # (z + z^2) o (z + z^2) = z + 2z^2 + 2z^3 + z^4, truncated at order 3
        assert f.compose(f) == TruncatedSeries([0, 1, 2, 2])

    def test_inner_constant_must_vanish(self):
        with pytest.raises(ValueError):
            TruncatedSeries([1, 1]).compose(TruncatedSeries([1, 1]))

    def test_associativity_randomized(self):
        rng = random.Random(204)
        for _ in range(20):
            f = rand_series(rng, 5)
            g = rand_series(rng, 5)
            h = rand_series(rng, 5)
            g = g - TruncatedSeries([g.coefficient(0)] + [0] * 5)
            h = h - TruncatedSeries([h.coefficient(0)] + [0] * 5)
            assert f.compose(g).compose(h) == f.compose(g.compose(h))

    def test_mul_compat(self):
        rng = random.Random(205)
        for _ in range(20):
            f, g = rand_series(rng, 5), rand_series(rng, 5)
            w = rand_series(rng, 5)
            w = w - TruncatedSeries([w.coefficient(0)] + [0] * 5)
            assert (f * g).compose(w) == f.compose(w) * g.compose(w)


class TestRevert:
    def test_geometric_example(self):
        f = NormalizedSeries.from_upper([Fraction(1), Fraction(1), Fraction(1)])
        g = f.revert()
        assert [g.coefficient(k) for k in range(5)] == [0, 1, -1, 1, -1]

    def test_identity_fixed_point(self):
        f = NormalizedSeries.from_upper([Fraction(0)] * 7)
        assert f.revert() == f

    def test_two_sided_inverse_randomized(self):
        rng = random.Random(206)
        ident = identity(9)
        for _ in range(25):
            f = rand_normalized(rng, 9)
            g = f.revert()
            assert f.compose(g) == ident
            assert g.compose(f) == ident
            assert g.revert() == TruncatedSeries(f.coeffs)

    def test_requires_normalization(self):
        with pytest.raises(ValueError):
            TruncatedSeries([0, 2, 1]).revert()
        with pytest.raises(ValueError):
            TruncatedSeries([1, 1, 1]).revert()


class TestDerivative:
    def test_example(self):
        f = TruncatedSeries([5, 1, Fraction(3, 2), 0])
        assert f.derivative() == TruncatedSeries([1, 3, 0])

    def test_order_drop_and_linearity(self):
        rng = random.Random(207)
        for _ in range(40):
            f, g = rand_series(rng, 6), rand_series(rng, 6)
            assert f.derivative().order == 5
            assert (f + g).derivative() == f.derivative() + g.derivative()

    def test_product_rule(self):
        rng = random.Random(208)
        for _ in range(40):
            f, g = rand_series(rng, 6), rand_series(rng, 6)
            lhs = (f * g).derivative()
            rhs = f.derivative() * g.truncated(5) + f.truncated(5) * g.derivative()
            assert lhs == rhs

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            TruncatedSeries([3]).derivative()
