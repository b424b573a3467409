"""Tests for P(m,k): elements, products, differentials, atomics and Omega."""

import pytest

from pongalg.axioms import check_atomic_lengths
from pongalg.pong import (
    AtomicDescriptor,
    Monomial,
    PongElement,
    atomic,
    atomic_length,
    describe_atomic,
    enumerate_generators,
    factor_atomic,
    factor_descriptors,
    generators_by_length,
    gradings,
    identity_element,
    is_atomic,
    omega,
    omega_components,
    product_of,
    pure_product,
    states,
)
from pongalg.strands import PongData, WeightVector, local_multiplicities


class TestMonomial:
    def test_v(self):
        assert Monomial.v(3, 1, 1).exponents == (2, 0, 0)
        assert str(Monomial.v(3, 1, 1, 3)) == "v1^2*v3"
        assert str(Monomial.one(3)) == "1"

    def test_from_weight_rejects_halves(self):
        with pytest.raises(ValueError, match="monomial weight"):
            Monomial.from_weight(WeightVector.of("1/2", 0))

    def test_weight_round_trip(self):
        w = WeightVector.of(2, 0, 1)
        assert Monomial.from_weight(w).weight() == w


class TestElements:
    def test_addition_cancels(self, two_strand):
        a = PongElement.generator(two_strand)
        assert not (a + a)
        assert len(a) == 1

    def test_ambient_mismatch(self, two_strand):
        with pytest.raises(ValueError, match="ambient"):
            PongElement.generator(two_strand) + PongElement.zero(4, 1)

    def test_identity_is_unit(self, two_strand):
        a = PongElement.generator(two_strand)
        one = identity_element(4, 2)
        assert one * a == a
        assert a * one == a

    def test_restrict(self, two_strand):
        a = PongElement.generator(two_strand)
        assert a.restrict(left=(1, 2)) == a
        assert not a.restrict(right=(1, 2))

    def test_gradings(self, two_strand):
        c, w, n = gradings(PongElement.generator(two_strand))
        assert c == 2
        assert w == WeightVector.of(1, 1, "1/2", 0)
        assert n == -3

    def test_gradings_reject_mixed(self, two_strand):
        mixed = PongElement.generator(two_strand) + identity_element(4, 2)
        with pytest.raises(ValueError, match="not homogeneous"):
            gradings(mixed)


class TestDifferential:
    def test_two_strand(self, two_strand):
        expected = PongElement.from_terms(
            4,
            2,
            [
                (Monomial.v(4, 1), PongData.from_pairs(4, [(1, 3), (2, 1)])),
                (Monomial.v(4, 2), PongData.from_pairs(4, [(1, 0), (2, 3)])),
            ],
        )
        assert PongElement.generator(two_strand).d() == expected

    def test_squares_to_zero(self, two_strand):
        assert not PongElement.generator(two_strand).d().d()

    def test_resolution_without_weight_loss(self):
        g = PongData.from_pairs(5, [(1, 3), (2, -3)])
        terms = PongElement.generator(g).d().terms
        assert (Monomial.one(5), PongData.from_pairs(5, [(1, 4), (2, -2)])) in terms

    def test_idempotent_is_closed(self):
        assert not identity_element(4, 2).d()


class TestAtomics:
    def test_move_right_then_left(self):
        r = atomic(AtomicDescriptor(3, "R", 1, 2), 1)
        l = atomic(AtomicDescriptor(3, "L", 1, 2), 1)
        assert r.generators() == [PongData(3, (1,), (2,))]
        assert l.generators() == [PongData(3, (2,), (1,))]
        assert r * l == PongElement.generator(PongData.idempotent(3, (1,)), Monomial.v(3, 2))

    def test_blocked_move(self):
        assert AtomicDescriptor(4, "R", 1, 2).data((1, 2)) is None

    def test_descriptor_ranges(self):
        with pytest.raises(ValueError):
            AtomicDescriptor(4, "X", 0, 4)
        with pytest.raises(ValueError):
            AtomicDescriptor(4, "R", 1, 4)
        with pytest.raises(ValueError, match="unknown"):
            AtomicDescriptor(4, "Y", 1, 2)

    def test_bounce_is_atomic(self, bounce):
        assert is_atomic(bounce)
        assert atomic_length(bounce) == 1
        desc = describe_atomic(bounce)
        assert (desc.kind, desc.lo, desc.hi) == ("X", 0, 1)

    def test_two_strand_factors_into_three(self, two_strand):
        assert atomic_length(two_strand) == 3
        factors = factor_atomic(two_strand)
        assert len(factors) == 3
        assert all(is_atomic(f) for f in factors)
        assert product_of(factors) == PongElement.generator(two_strand)

    def test_atomic_factors_to_itself(self, bounce):
        assert factor_atomic(bounce) == (bounce,)

    def test_factor_descriptors(self, bounce, two_strand):
        assert factor_descriptors(bounce) == (AtomicDescriptor(3, "X", 0, 1, left=(1,)),)
        named = factor_descriptors(two_strand)
        assert [d.data(d.left) for d in named] == list(factor_atomic(two_strand))

    def test_generators_by_length(self):
        ones = generators_by_length(3, 1, 1)
        assert all(is_atomic(g) and atomic_length(g) == 1 for g in ones)
        assert all(atomic_length(g) == 2 for g in generators_by_length(3, 1, 2))

    @pytest.mark.parametrize("m,k", [(3, 1), (4, 1), (4, 2)])
    def test_length_bound(self, m, k):
        assert check_atomic_lengths(m, k, WeightVector.ones(m)) == []


class TestOmega:
    def test_k_zero(self):
        om = omega(3, 0)
        assert om == PongElement.generator(PongData.idempotent(3, ()), Monomial((1, 1, 1)))

    @pytest.mark.parametrize("m,k", [(3, 1), (4, 1), (4, 2)])
    def test_gradings_and_cycle(self, m, k):
        om = omega(m, k)
        assert not om.d()
        c, w, n = gradings(om)
        assert c == 2 * k
        assert w == WeightVector.ones(m)
        assert n == 2 * k - 2 * m

    def test_every_state_appears(self):
        om = omega(4, 2)
        assert {g.left for g in om.generators()} == set(states(4, 2))

    def test_range(self):
        with pytest.raises(ValueError):
            omega(3, 3)

    def test_components_k1(self):
        parts = omega_components(3, 1, (1,))
        assert parts["minus"] or parts["plus"]
        for g in parts["minus"] + parts["plus"]:
            assert g.left == (1,)


class TestEnumeration:
    def test_contains_known_generator(self, two_strand):
        found = enumerate_generators(4, (1, 2), (1, 3), WeightVector.of(1, 1, "1/2", 0))
        assert two_strand in found

    def test_respects_cap(self):
        cap = WeightVector.ones(3)
        for g in enumerate_generators(3, (1,), None, cap):
            assert local_multiplicities(g).within(cap)

    def test_pure_product_vanishes_off_idempotents(self, two_strand):
        assert pure_product(two_strand, two_strand) is None
