"""Tests for contractions and transferred operations on homology."""

import numpy as np
import pytest

from pongalg.complexes import ChainComplex
from pongalg.pong import PongElement, omega
from pongalg.strands import PongData, WeightVector
from pongalg.transfer import (
    AlgebraContext,
    HClass,
    build_contraction,
    check_ainfty_relations,
    check_omega_linearity,
    omega_times,
    parse_inputs,
    star_chain_solve,
    top_operation_setup,
    top_operation_text,
    transfer_mu,
    verify_perm_sum,
    verify_top_operation,
    x_classes,
)


def circle():
    return ChainComplex.build(
        {0: ["a", "b", "c"], 1: ["ab", "bc", "ac"]},
        lambda label: list(label) if len(label) == 2 else [],
        name="circle",
    )


class TestContraction:
    def test_circle(self):
        c = build_contraction(circle())
        assert c.rank(0) == 1
        assert c.rank(1) == 1
        loop = c.include(1, np.array([1], dtype=np.uint8))
        assert loop == {"ab", "bc", "ac"}
        assert c.project(1, loop).tolist() == [1]
        assert c.violations() == []

    def test_homotopy_inverts_boundary(self):
        c = build_contraction(circle())
        chain = c.homotopy(0, ["a", "b"])
        assert c.complex.differential(chain) == {"a", "b"}

    def test_rejects_non_complex(self):
        bad = ChainComplex.build({0: ["v"], 1: ["e"], 2: ["T"]}, lambda label: {"T": ["e"], "e": ["v"]}.get(label, []))
        with pytest.raises(ValueError, match="square to zero"):
            build_contraction(bad)


class TestInputs:
    def test_standard_inputs(self):
        inputs = parse_inputs(4, 2, (2, 3), "v1, L2, L3, v4, R3, R2")
        assert len(inputs) == 6
        assert inputs[0].generators() == [PongData.idempotent(4, (2, 3))]
        assert inputs[-1].generators()[0].right == (2, 3)

    def test_text(self):
        assert top_operation_text(4, 1) == "v1, L2, L3, v4, R3, R2"
        assert top_operation_text(4, 2) == "v1*v2, L3, v4, R3"
        assert top_operation_setup(4, 1) == (2, (2, 3), "v1, L2, L3, v4, R3, R2")

    def test_setup_range(self):
        with pytest.raises(ValueError):
            top_operation_setup(3, 2)

    @pytest.mark.parametrize(
        "text,match",
        [("Z5", "cannot parse"), ("v9", "out of range"), ("L2", "not defined"), ("", "cannot parse")],
    )
    def test_bad_inputs(self, text, match):
        with pytest.raises(ValueError, match=match):
            parse_inputs(4, 2, (1, 2), text)

    def test_wrong_start_state(self):
        with pytest.raises(ValueError, match="elements"):
            parse_inputs(4, 2, (1,), "v1")


class TestContext:
    def test_default_arity_cap(self):
        assert AlgebraContext("P", 4, 2).arity_cap == 6
        assert AlgebraContext("Q", 4, 1, arity_cap=3).arity_cap == 3

    def test_unknown_tag(self):
        with pytest.raises(ValueError, match="tag"):
            AlgebraContext("C", 3, 1)

    def test_zero_has_no_class(self):
        with pytest.raises(ValueError, match="zero element"):
            AlgebraContext("P", 3, 1).class_of(PongElement.zero(3, 1))

    def test_mu2_is_the_product(self):
        ctx = AlgebraContext("P", 3, 1)
        a, b = parse_inputs(3, 1, (2,), "v1, L2")
        op = transfer_mu(ctx, [ctx.class_of(a), ctx.class_of(b)])
        assert op.arity == 2
        assert op.output == ctx.class_of(a * b)

    def test_arity_limits(self):
        ctx = AlgebraContext("P", 3, 1, arity_cap=2)
        a, b, c = (ctx.class_of(e) for e in parse_inputs(3, 1, (2,), "v1, L2, v3"))
        with pytest.raises(ValueError, match="at least two"):
            ctx.mu([a])
        with pytest.raises(ValueError, match="arity cap"):
            ctx.mu([a, b, c])

    def test_unchained_inputs(self):
        ctx = AlgebraContext("P", 3, 1)
        a, b = (ctx.class_of(e) for e in parse_inputs(3, 1, (2,), "v1, L2"))
        with pytest.raises(ValueError, match="chained"):
            ctx.mu([b, b])

    def test_class_sum_needs_same_piece(self):
        ctx = AlgebraContext("P", 3, 1)
        a, b = (ctx.class_of(e) for e in parse_inputs(3, 1, (2,), "v1, L2"))
        assert (a + a).is_zero()
        with pytest.raises(ValueError, match="different pieces"):
            a + b

    def test_hclass_json(self):
        ctx = AlgebraContext("P", 3, 1)
        (a,) = (ctx.class_of(e) for e in parse_inputs(3, 1, (2,), "v1"))
        data = a.to_json()
        assert data["x"] == [2]
        assert data["weight"] == ["1", "0", "0"]
        assert isinstance(a, HClass)


class TestStarChains:
    def test_requires_cycles(self, two_strand):
        ctx = AlgebraContext("P", 4, 2)
        inputs = [PongElement.generator(two_strand), PongElement.generator(PongData.idempotent(4, (1, 3)))]
        with pytest.raises(ValueError, match="not a cycle"):
            star_chain_solve(ctx, inputs)

    def test_star_chain_identities(self):
        k_p, x, text = top_operation_setup(3, 1)
        ctx = AlgebraContext("P", 3, k_p, arity_cap=4)
        inputs = parse_inputs(3, k_p, x, text)
        result = star_chain_solve(ctx, inputs)
        spans = [key for key in result.table if key[0] != key[1]]
        assert len(spans) == 5
        for i, j in spans:
            expected = frozenset()
            for l in range(i, j):
                expected = expected ^ ctx.product(result.table[(i, l)], result.table[(l + 1, j)])
            assert ctx.element(result.table[(i, j)]).d().terms == expected
        assert result.top == ctx.class_of(omega(3, k_p).restrict(left=x))


class TestOmegaLinearity:
    def test_binary_product(self):
        ctx = AlgebraContext("P", 3, 1)
        a, b = (ctx.class_of(e) for e in parse_inputs(3, 1, (2,), "v1, L2"))
        assert check_omega_linearity(ctx, [a, b], slot=0) == []
        assert check_omega_linearity(ctx, [a, b], slot=1) == []

    def test_omega_is_free_on_x_classes(self):
        ctx = AlgebraContext("Q", 3, 2)
        shifted = omega_times(ctx, x_classes(ctx)[0])
        assert not shifted.is_zero()
        assert shifted.w == WeightVector.of(2, 1, 1)

    def test_relations_include_omega(self):
        ctx = AlgebraContext("Q", 3, 2)
        assert check_ainfty_relations(ctx, x_classes(ctx)) == []

    def test_slot_range(self):
        ctx = AlgebraContext("P", 3, 1)
        a, b = (ctx.class_of(e) for e in parse_inputs(3, 1, (2,), "v1, L2"))
        with pytest.raises(ValueError, match="slot"):
            check_omega_linearity(ctx, [a, b], slot=2)


class TestTopOperation:
    @pytest.mark.parametrize("m,k", [(3, 1), (4, 2)])
    def test_omega(self, m, k):
        assert verify_top_operation(m, k) == []

    def test_perm_sum(self):
        assert verify_perm_sum(3) == []

    def test_perm_sum_across_workers(self):
        assert verify_perm_sum(3, workers=2) == []
