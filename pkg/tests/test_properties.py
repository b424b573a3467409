"""Property tests: the group action, weights and the DGA structure on small P(m,k)."""

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pongalg.pong import PongElement, enumerate_generators, gradings, states
from pongalg.strands import PongData, WeightVector, fold, lift_apply

ms = st.integers(min_value=2, max_value=7)
positions = st.integers(min_value=-60, max_value=60)

TWO_STRAND = PongData.from_pairs(4, [(1, -2), (2, 1)])


def _generators(m, k):
    cap = WeightVector.ones(m)
    return [g for x in states(m, k) for g in enumerate_generators(m, x, None, cap)]


GENERATORS = _generators(4, 2) + _generators(3, 1)
generators = st.sampled_from(GENERATORS)


class TestGroupAction:
    @given(ms, positions)
    def test_fold_lands_in_fundamental_domain(self, m, n):
        cls, gamma = fold(m, n)
        assert 1 <= cls <= m - 1
        assert gamma(cls) == n

    @given(ms, positions, positions)
    def test_composition_and_inverse(self, m, a, b):
        _, g = fold(m, a)
        _, h = fold(m, b)
        for x in (-3, 0, 1, m, 2 * m + 5):
            assert (g * h)(x) == g(h(x))
            assert g.inverse()(g(x)) == x

    @given(positions)
    def test_lift_is_translation_equivariant(self, n):
        assume(fold(4, n)[0] in TWO_STRAND.sources)
        assert lift_apply(TWO_STRAND, n + 6) == lift_apply(TWO_STRAND, n) + 6

    @given(positions)
    def test_lift_is_reflection_equivariant(self, n):
        assume(fold(4, n)[0] in TWO_STRAND.sources)
        assert lift_apply(TWO_STRAND, 1 - n) == 1 - lift_apply(TWO_STRAND, n)


class TestWeights:
    @given(st.lists(st.integers(min_value=-8, max_value=8), min_size=3, max_size=3),
           st.lists(st.integers(min_value=-8, max_value=8), min_size=3, max_size=3))
    def test_add_then_subtract(self, a, b):
        u, v = WeightVector(tuple(a)), WeightVector(tuple(b))
        assert (u + v) - v == u
        assert (u + v).doubled_total == u.doubled_total + v.doubled_total


class TestDGA:
    @settings(max_examples=60, deadline=None)
    @given(generators)
    def test_d_squared(self, g):
        assert not PongElement.generator(g).d().d()

    @settings(max_examples=60, deadline=None)
    @given(generators)
    def test_d_lowers_cross_and_keeps_weight(self, g):
        a = PongElement.generator(g)
        da = a.d()
        assume(bool(da))
        c, w, _ = gradings(a)
        dc, dw, _ = gradings(da)
        assert dc == c - 1
        assert dw == w

    @settings(max_examples=80, deadline=None)
    @given(generators, st.data())
    def test_leibniz(self, g, data):
        following = [h for h in GENERATORS if h.m == g.m and h.sources == g.right]
        h = data.draw(st.sampled_from(following))
        a, b = PongElement.generator(g), PongElement.generator(h)
        assert (a * b).d() == a.d() * b + a * b.d()

    @settings(max_examples=80, deadline=None)
    @given(generators, st.data())
    def test_product_gradings_add(self, g, data):
        following = [h for h in GENERATORS if h.m == g.m and h.sources == g.right]
        h = data.draw(st.sampled_from(following))
        ab = PongElement.generator(g) * PongElement.generator(h)
        assume(bool(ab))
        c, w, _ = gradings(ab)
        ca, wa, _ = gradings(PongElement.generator(g))
        cb, wb, _ = gradings(PongElement.generator(h))
        assert c == ca + cb
        assert w == wa + wb
