"""Tests for labelled GF(2) chain complexes."""

import pytest

from pongalg.complexes import ChainComplex, empty_complex, parity


def boundary(label):
    return list(label) if len(label) == 2 else []


@pytest.fixture
def circle():
    """Three vertices and three edges."""
    return ChainComplex.build({0: ["a", "b", "c"], 1: ["ab", "bc", "ac"]}, boundary, name="circle")


@pytest.fixture
def disk():
    def d(label):
        return ["ab", "bc", "ac"] if label == "T" else boundary(label)

    return ChainComplex.build({0: ["a", "b", "c"], 1: ["ab", "bc", "ac"], 2: ["T"]}, d, name="disk")


class TestBuild:
    def test_parity(self):
        assert parity(["a", "a", "b", "c", "c", "c"]) == {"b", "c"}

    def test_leaving_the_complex(self):
        with pytest.raises(ValueError, match="leaves the complex"):
            ChainComplex.build({1: ["ab"]}, boundary)

    def test_duplicate_labels(self):
        with pytest.raises(ValueError, match="duplicate"):
            ChainComplex(bases={0: ["a"], 1: ["a"]}, images={"a": frozenset()})

    def test_empty_degrees_dropped(self):
        cplx = ChainComplex.build({0: ["a"], 1: []}, lambda label: [])
        assert cplx.degrees() == [0]

    def test_matrix(self, circle):
        assert circle.matrix(1).shape == (3, 3)
        assert circle.matrix(1).sum() == 6


class TestHomology:
    def test_circle(self, circle):
        summary = circle.homology()
        assert summary.nonzero() == {0: 1, 1: 1}
        assert summary.euler_characteristic == 0
        assert str(summary) == "F^1[0] + F^1[1]"
        assert circle.check_square_zero()

    def test_disk(self, disk):
        summary = disk.homology()
        assert summary.nonzero() == {0: 1}
        assert summary.total == 1

    def test_empty(self):
        summary = empty_complex().homology()
        assert summary.total == 0
        assert str(summary) == "0"

    def test_rejects_a_non_complex(self):
        def d(label):
            return {"T": ["e"], "e": ["a"]}.get(label, [])

        broken = ChainComplex.build({0: ["a"], 1: ["e"], 2: ["T"]}, d, name="broken")
        assert not broken.check_square_zero()
        with pytest.raises(ValueError, match="does not square to zero"):
            broken.homology()

    def test_representatives(self, circle):
        reps = circle.homology(representatives=True).representatives
        (loop,) = reps[1]
        assert loop == {"ab", "bc", "ac"}


class TestBoundaries:
    def test_loop_bounds_in_disk(self, disk):
        assert disk.is_boundary(["ab", "bc", "ac"], 1)
        assert disk.solve_boundary(["ab", "bc", "ac"], 1) == {"T"}

    def test_loop_does_not_bound_in_circle(self, circle):
        assert not circle.is_boundary(["ab", "bc", "ac"], 1)
        assert circle.solve_boundary(["ab", "bc", "ac"], 1) is None
        assert circle.homology_class(["ab", "bc", "ac"], 1).any()

    def test_zero_is_a_boundary(self, circle):
        assert circle.is_boundary([], 1)
        assert circle.solve_boundary([], 1) == frozenset()

    def test_vertex_difference(self, circle):
        chain = circle.solve_boundary(["a", "c"], 0)
        assert circle.differential(chain) == {"a", "c"}

    def test_not_a_cycle(self, circle):
        with pytest.raises(ValueError, match="not a cycle"):
            circle.homology_class(["ab"], 1)

    def test_unknown_label(self, circle):
        with pytest.raises(KeyError):
            circle.vector(["zz"], 1)
