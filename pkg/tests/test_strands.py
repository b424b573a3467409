"""Tests for pong data: folding, weights, crossings, resolution and composition."""

from fractions import Fraction

import pytest

from pongalg.strands import (
    CrossingClass,
    GroupElement,
    PongData,
    WeightVector,
    compose,
    cross,
    crossings,
    fold,
    format_pong,
    lift_apply,
    local_multiplicities,
    parse_pong,
    resolve,
    weight_drop,
)


class TestFold:
    def test_reflected_class(self):
        cls, gamma = fold(4, -2)
        assert cls == 3
        assert gamma.reflect
        assert gamma(3) == -2

    def test_fundamental_domain_is_fixed(self):
        for n in range(1, 4):
            cls, gamma = fold(4, n)
            assert cls == n
            assert gamma == GroupElement.identity(4)

    def test_translate(self):
        cls, gamma = fold(4, 7)
        assert cls == 1
        assert not gamma.reflect
        assert gamma(1) == 7

    def test_wall_positions_fold_to_ends(self):
        # 0 reflects onto 1 and m reflects onto m - 1
        assert fold(4, 0)[0] == 1
        assert fold(4, 4)[0] == 3

    def test_rejects_small_m(self):
        with pytest.raises(ValueError, match="at least 2"):
            fold(1, 0)

    def test_group_product_and_inverse(self):
        _, g = fold(5, -6)
        _, h = fold(5, 11)
        for x in range(-10, 10):
            assert (g * h)(x) == g(h(x))
            assert g.inverse()(g(x)) == x


class TestWeightVector:
    def test_of_half_integers(self):
        w = WeightVector.of(1, 1, "1/2", 0)
        assert w.doubled == (2, 2, 1, 0)
        assert w[3] == Fraction(1, 2)
        assert str(w) == "(1,1,1/2,0)"
        assert w.to_json() == ["1", "1", "1/2", "0"]

    def test_rejects_non_half_integer(self):
        with pytest.raises(ValueError, match="half-integer"):
            WeightVector.of(0.3)

    def test_arithmetic(self):
        w = WeightVector.ones(3) + WeightVector.unit(3, 2)
        assert w.doubled == (2, 4, 2)
        assert (w - WeightVector.ones(3)).doubled == (0, 2, 0)
        assert w.total == 4
        assert w.is_integral()
        assert WeightVector.zero(3).within(w)
        assert not w.within(WeightVector.ones(3))

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            WeightVector.zero(3) + WeightVector.zero(4)

    def test_negative(self):
        assert not (WeightVector.zero(2) - WeightVector.ones(2)).is_nonnegative()


class TestPongData:
    def test_parse_and_format(self, two_strand):
        assert two_strand.m == 4
        assert two_strand.k == 2
        assert two_strand.pairs() == ((1, -2), (2, 1))
        assert format_pong(two_strand) == "m=4 k=2 ((1,-2),(2,1))"
        assert parse_pong(format_pong(two_strand)) == two_strand

    def test_idempotents(self, two_strand):
        assert two_strand.left == (1, 2)
        assert two_strand.right == (1, 3)

    def test_parse_rejects_wrong_count(self):
        with pytest.raises(ValueError, match="strand"):
            parse_pong("m=4 k=2 ((1,-2))")

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError, match="expected"):
            parse_pong("((1,2))")

    def test_targets_must_fold_apart(self):
        # in m = 4 both 3 and -3 fold onto 3
        with pytest.raises(ValueError, match="same position"):
            PongData.from_pairs(4, [(1, 3), (2, -3)])

    def test_sources_in_range(self):
        with pytest.raises(ValueError, match="sources"):
            PongData(4, (0,), (1,))

    def test_target_of_missing_source(self, two_strand):
        with pytest.raises(ValueError, match="source not in domain"):
            two_strand.target(3)

    def test_lift_apply(self, two_strand):
        assert lift_apply(two_strand, 1) == -2
        assert lift_apply(two_strand, 7) == 4
        # 0 = 1 - 1 is the reflected copy of source 1
        assert lift_apply(two_strand, 0) == 3


class TestWeight:
    def test_two_strand(self, two_strand):
        assert local_multiplicities(two_strand) == WeightVector.of(1, 1, "1/2", 0)

    def test_idempotent_has_no_weight(self):
        assert local_multiplicities(PongData.idempotent(5, (1, 3))) == WeightVector.zero(5)

    def test_bounce_counts_wall_region_fully(self, bounce):
        assert local_multiplicities(bounce) == WeightVector.of(1, 0, 0)

    def test_short_move(self):
        assert local_multiplicities(PongData(3, (1,), (2,))) == WeightVector.of(0, "1/2", 0)


class TestCrossings:
    def test_two_strand(self, two_strand):
        assert cross(two_strand) == 2

    def test_three_crossings(self):
        g = PongData.from_pairs(5, [(1, 3), (2, -3)])
        assert crossings(g) == {CrossingClass(1, 2), CrossingClass(1, -1), CrossingClass(2, -1)}

    def test_bounce_crosses_itself(self, bounce):
        assert cross(bounce) == 1

    def test_idempotent(self):
        assert cross(PongData.idempotent(4, (1, 2, 3))) == 0

    def test_resolve(self):
        g = PongData.from_pairs(5, [(1, 3), (2, -3)])
        assert resolve(g, CrossingClass(1, -1)) == PongData.from_pairs(5, [(1, 4), (2, -2)])

    def test_resolve_rejects_non_crossing(self, two_strand):
        with pytest.raises(ValueError, match="not a crossing"):
            resolve(two_strand, CrossingClass(1, 5))


class TestCompose:
    def test_idempotents_are_units(self, two_strand):
        left = PongData.idempotent(4, two_strand.left)
        right = PongData.idempotent(4, two_strand.right)
        assert compose(left, two_strand) == two_strand
        assert compose(two_strand, right) == two_strand

    def test_not_composable(self, two_strand):
        with pytest.raises(ValueError, match="not composable"):
            compose(two_strand, two_strand)

    def test_weight_drop(self, two_strand):
        after = PongData.from_pairs(4, [(1, 3), (2, 1)])
        assert weight_drop(two_strand, after) == WeightVector.unit(4, 1)
