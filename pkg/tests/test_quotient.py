"""Tests for Q(m,k) and the Omega cones Q' and P'."""

import pytest

from pongalg.homology import compatible_weights
from pongalg.pong import Monomial, PongElement, states
from pongalg.quotient import (
    QuotElement,
    cone_piece,
    lift_to_p,
    project_to_q,
    q_differential,
    q_multiply,
    q_omega,
)
from pongalg.strands import PongData, WeightVector


class TestQuotient:
    def test_projection_drops_monomials(self, two_strand):
        d = PongElement.generator(two_strand).d()
        assert d
        assert not project_to_q(d)

    def test_differential_of_two_strand_vanishes(self, two_strand):
        assert not q_differential(QuotElement.generator(two_strand))

    def test_lift_round_trip(self, two_strand):
        a = QuotElement.generator(two_strand)
        assert project_to_q(lift_to_p(a)) == a

    def test_rejects_monomials(self, two_strand):
        with pytest.raises(ValueError, match="monomial"):
            QuotElement(4, 2, frozenset({(Monomial.v(4, 1), two_strand)}))

    def test_move_and_return_vanishes(self):
        # R_{1,2} L_{2,1} = v2 in P, hence zero in Q
        r = QuotElement.generator(PongData(3, (1,), (2,)))
        l = QuotElement.generator(PongData(3, (2,), (1,)))
        assert not q_multiply(r, l)

    @pytest.mark.parametrize("m,k", [(3, 1), (4, 2)])
    def test_omega_is_a_cycle(self, m, k):
        om = q_omega(m, k)
        assert om
        assert not q_differential(om)


class TestCones:
    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown cone kind"):
            cone_piece("R'", 3, 1, (1,), (1,), WeightVector.zero(3))

    def test_bad_side(self):
        with pytest.raises(ValueError, match="side"):
            cone_piece("Q'", 3, 1, (1,), (1,), WeightVector.zero(3), side="top")

    def test_negative_weight_is_empty(self):
        w = WeightVector.zero(3) - WeightVector.ones(3)
        assert cone_piece("Q'", 3, 1, (1,), (1,), w).homology().total == 0

    def test_idempotent_survives(self):
        cone = cone_piece("Q'", 3, 1, (1,), (1,), WeightVector.zero(3))
        assert cone.homology().nonzero() == {0: 1}

    def test_cone_squares_to_zero(self):
        cone = cone_piece("P'", 3, 1, (1,), (1,), WeightVector.ones(3))
        assert cone.complex.check_square_zero()

    @pytest.mark.parametrize("kind", ["Q'", "P'"])
    def test_left_and_right_agree(self, kind):
        for x in states(3, 1):
            for y in states(3, 1):
                for w in compatible_weights(3, x, y, 1):
                    left = cone_piece(kind, 3, 1, x, y, w, "left").homology().dimensions
                    right = cone_piece(kind, 3, 1, x, y, w, "right").homology().dimensions
                    assert left == right, (x, y, w)
