"""Tests for the type DD bimodule pairing C(m,k) with Q(m,k)."""

import pytest

from pongalg.bordered import ClgPure, IdempotentState
from pongalg.dd import (
    PRODUCT_CLASSES,
    DDStructure,
    classify_products,
    dd_residual,
    delta1,
    f_map,
    partner,
    verify_dd_relation,
    verify_product_trichotomy,
)
from pongalg.pong import AtomicDescriptor, Monomial, pure_product
from pongalg.strands import PongData, WeightVector


@pytest.fixture
def right_move():
    """R_{1,2} at {1} in P(3,1)."""
    return PongData(3, (1,), (2,))


class TestFMap:
    def test_right_move(self, right_move):
        x, y = IdempotentState.of(3, (1,)), IdempotentState.of(3, (2,))
        assert list(f_map(right_move)) == [ClgPure(x, y, WeightVector.of(0, "1/2", 0))]

    def test_bounce_maps_to_u(self):
        x = IdempotentState.of(3, (1,))
        assert list(f_map(PongData(3, (1,), (0,)))) == [ClgPure(x, x, WeightVector.of(1, 0, 0))]

    def test_long_left_move_maps_to_chain_of_ls(self):
        g = PongData(4, (2, 3), (2, 1))
        x, y = IdempotentState.of(4, (2, 3)), IdempotentState.of(4, (1, 2))
        assert list(f_map(g)) == [ClgPure(x, y, WeightVector.of(0, "1/2", "1/2", 0))]

    def test_rejects_non_atomic(self, two_strand):
        with pytest.raises(ValueError, match="not an atomic"):
            f_map(two_strand)

    def test_partner(self, right_move, bounce):
        assert partner(right_move) == PongData(3, (2,), (1,))
        assert partner(partner(right_move)) == right_move
        assert partner(bounce) == bounce


class TestDelta:
    def test_contains_reverse_move(self, right_move):
        terms = delta1(3, 1, (2,))
        assert any(t.target == (1,) and t.q == partner(right_move) for t in terms)
        assert all(t.source == (2,) for t in terms)

    def test_rejects_bad_state(self):
        with pytest.raises(ValueError, match="idempotent state"):
            delta1(3, 1, (3,))

    def test_structure(self):
        dd = DDStructure.build(3, 1)
        assert set(dd.terms) == {(1,), (2,)}
        assert len(dd) == sum(len(delta1(3, 1, x)) for x in dd.terms)


class TestStructureRelation:
    @pytest.mark.parametrize("m,k", [(2, 1), (3, 1), (3, 2), (4, 2), (5, 2)])
    def test_relation_holds(self, m, k):
        assert verify_dd_relation(m, k) == []

    def test_range(self):
        with pytest.raises(ValueError, match="0 < k < m"):
            dd_residual(3, 0)

    def test_products_classified(self):
        kinds = set(classify_products(3, 1).values())
        assert kinds <= set(PRODUCT_CLASSES)
        assert verify_product_trichotomy(3, 1) == []

    @pytest.mark.parametrize("m,k", [(4, 1), (4, 2), (5, 2)])
    def test_trichotomy_beyond_small_cases(self, m, k):
        assert verify_product_trichotomy(m, k) == []

    @pytest.mark.parametrize(
        "m,k,first,second",
        [
            (4, 2, AtomicDescriptor(4, "L", 1, 2, left=(2, 3)), AtomicDescriptor(4, "X", 0, 1, left=(1, 3))),
            (4, 1, AtomicDescriptor(4, "R", 2, 3, left=(2,)), AtomicDescriptor(4, "X", 3, 4, left=(3,))),
        ],
    )
    def test_calligraphic_rewrites(self, m, k, first, second):
        assert classify_products(m, k)[(first, second)] == "rewrite"


class TestAtomicRelations:
    def test_nested_xs_commute(self):
        full = (1, 2, 3, 4)
        outer = AtomicDescriptor(5, "X", 1, 4).data(full)
        inner = AtomicDescriptor(5, "X", 2, 3).data(full)
        assert pure_product(outer, inner) == pure_product(inner, outer)

    def test_crossed_right_moves_vanish(self):
        first = AtomicDescriptor(5, "R", 1, 3).data((1, 2))
        second = AtomicDescriptor(5, "R", 2, 4).data(first.right)
        assert pure_product(first, second) is None

    def test_short_round_trip_is_u(self, right_move):
        back = AtomicDescriptor(3, "L", 1, 2).data(right_move.right)
        assert pure_product(right_move, back) == (Monomial.v(3, 2), PongData.idempotent(3, (1,)))
