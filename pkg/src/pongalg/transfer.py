"""Transferred A-infinity operations on the homology of weight pieces.

Each weight piece gets a contraction ``(i, p, h)`` built from the degree
splittings of its complex.  Operations on homology come from the tree
formula::

    Lambda(i..i) = i p (a_i)
    lambda(i..j) = sum_l Lambda(i..l) * Lambda(l+1..j)
    Lambda(i..j) = h lambda(i..j)          (i < j)
    mu_n(a_1..a_n) = p lambda(1..n)

Usage::

    from pongalg.transfer import AlgebraContext, parse_inputs, transfer_mu

    ctx = AlgebraContext("P", 4, 2)
    inputs = parse_inputs(4, 2, (2, 3), "v1, L2, L3, v4, R3, R2")
    transfer_mu(ctx, [ctx.class_of(a) for a in inputs]).output
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .checks import Violation, expect
from .complexes import ChainComplex
from .gf2 import gf2_matmul, identity
from .homology import map_pieces
from .pieces import enumerate_basis, piece_complex
from .pong import AtomicDescriptor, Monomial, PongElement, Term, multiply, omega
from .quotient import QuotElement, q_omega
from .strands import PongData, WeightVector, cross, local_multiplicities

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Contractions
# ---------------------------------------------------------------------------


@dataclass
class Contraction:
    """Deformation retraction of a complex onto its homology.

    ``i`` sends homology coordinates to cycles, ``p`` reads homology
    coordinates off any chain and ``h`` raises degree by one.
    """

    complex: ChainComplex

    def i_matrix(self, q: int) -> np.ndarray:
        return self.complex.splitting(q).homology_basis

    def p_matrix(self, q: int) -> np.ndarray:
        split = self.complex.splitting(q)
        nb, nh = split.image_basis.shape[1], split.homology_basis.shape[1]
        return split.inverse[nb : nb + nh, :]

    def h_matrix(self, q: int) -> np.ndarray:
        """``C_q -> C_{q+1}``: boundary coordinates placed on the chosen preimages."""
        split = self.complex.splitting(q)
        nb = split.image_basis.shape[1]
        units = np.zeros((self.complex.size(q + 1), nb), dtype=np.uint8)
        for n, pivot in enumerate(split.image_pivots):
            units[pivot, n] = 1
        return gf2_matmul(units, split.inverse[:nb, :])

    def rank(self, q: int) -> int:
        return self.complex.splitting(q).homology_basis.shape[1]

    def include(self, q: int, coords: np.ndarray) -> frozenset:
        if not self.complex.size(q):
            return frozenset()
        return self.complex.labels(gf2_matmul(self.i_matrix(q), coords), q)

    def project(self, q: int, labels) -> np.ndarray:
        if not self.complex.size(q):
            return np.zeros(0, dtype=np.uint8)
        return gf2_matmul(self.p_matrix(q), self.complex.vector(labels, q))

    def homotopy(self, q: int, labels) -> frozenset:
        if not self.complex.size(q) or not self.complex.size(q + 1):
            return frozenset()
        return self.complex.labels(gf2_matmul(self.h_matrix(q), self.complex.vector(labels, q)), q + 1)

    def violations(self) -> list[Violation]:
        """The five contraction identities, degree by degree."""
        c = self.complex
        name = c.name or "complex"
        found: list[Violation] = []
        for q in c.degrees():
            n = c.size(q)
            d_in = c.matrix(q + 1) if c.size(q + 1) else np.zeros((n, 0), dtype=np.uint8)
            d_out = c.matrix(q) if c.size(q - 1) else np.zeros((0, n), dtype=np.uint8)
            h_q = self.h_matrix(q) if c.size(q + 1) else np.zeros((0, n), dtype=np.uint8)
            h_prev = self.h_matrix(q - 1) if c.size(q - 1) else np.zeros((n, 0), dtype=np.uint8)
            i_q, p_q = self.i_matrix(q), self.p_matrix(q)
            homotopy = (gf2_matmul(d_in, h_q) + gf2_matmul(h_prev, d_out)) % 2
            found += expect(
                np.array_equal(homotopy, (identity(n) + gf2_matmul(i_q, p_q)) % 2),
                name, "dh+hd", f"fails in degree {q}",
            )
            found += expect(np.array_equal(gf2_matmul(p_q, i_q), identity(i_q.shape[1])), name, "pi", f"degree {q}")
            if c.size(q + 1):
                found += expect(not gf2_matmul(h_q, i_q).any(), name, "hi", f"degree {q}")
                found += expect(not gf2_matmul(self.p_matrix(q + 1), h_q).any(), name, "ph", f"degree {q}")
                if c.size(q + 2):
                    found += expect(not gf2_matmul(self.h_matrix(q + 1), h_q).any(), name, "hh", f"degree {q}")
        return found


def build_contraction(complex: ChainComplex) -> Contraction:
    if not complex.check_square_zero():
        raise ValueError(f"differential of {complex.name or 'complex'} does not square to zero")
    contraction = Contraction(complex)
    problems = contraction.violations()
    if problems:
        raise ValueError(f"contraction identities fail: {problems[0]}")
    return contraction


# ---------------------------------------------------------------------------
# Homology classes in an algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HClass:
    x: tuple[int, ...]
    y: tuple[int, ...]
    w: WeightVector
    degree: int
    coords: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: HClass) -> HClass:
        if (self.x, self.y, self.w, self.degree) != (other.x, other.y, other.w, other.degree):
            raise ValueError("classes live in different pieces")
        return HClass(self.x, self.y, self.w, self.degree, tuple((a + b) % 2 for a, b in zip(self.coords, other.coords)))

    def to_json(self) -> dict:
        return {
            "x": list(self.x),
            "y": list(self.y),
            "weight": self.w.to_json(),
            "degree": self.degree,
            "coords": list(self.coords),
        }


@dataclass(frozen=True)
class TransferredOp:
    arity: int
    inputs: tuple[HClass, ...]
    output: HClass

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "inputs": [c.to_json() for c in self.inputs],
            "output": self.output.to_json(),
        }


def _term_key(term: Term) -> tuple[tuple[int, ...], tuple[int, ...], WeightVector, int]:
    mono, g = term
    return g.left, g.right, mono.weight() + local_multiplicities(g), cross(g)


@dataclass
class AlgebraContext:
    """P(m,k) or Q(m,k) with contractions cached per weight piece.

    The default arity cap ``2k + 2`` is ``2m - 2k_C`` for the bordered index
    ``k_C = m - k - 1``.
    """

    tag: str
    m: int
    k: int
    arity_cap: int | None = None
    window_multiplier: int = 1
    _contractions: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.tag not in ("P", "Q"):
            raise ValueError(f"unknown algebra tag {self.tag!r}")
        if self.arity_cap is None:
            self.arity_cap = 2 * self.k + 2

    @property
    def element_type(self) -> type[PongElement]:
        return QuotElement if self.tag == "Q" else PongElement

    def contraction(self, x, y, w: WeightVector) -> Contraction:
        key = (tuple(x), tuple(y), w)
        if key not in self._contractions:
            basis = enumerate_basis(self.tag, self.m, self.k, key[0], key[1], w, self.window_multiplier)
            self._contractions[key] = build_contraction(piece_complex(basis))
            logger.debug("contraction for %s%s: %s", self.tag, key, len(basis))
        return self._contractions[key]

    def element(self, labels) -> PongElement:
        return self.element_type.from_terms(self.m, self.k, labels)

    def product(self, left: frozenset, right: frozenset) -> frozenset:
        if not left or not right:
            return frozenset()
        return multiply(self.element(left), self.element(right)).terms

    def class_of(self, a: PongElement) -> HClass:
        """Homology class of a homogeneous cycle."""
        if not a.terms:
            raise ValueError("the zero element has no weight piece")
        keys = {_term_key(t) for t in a.terms}
        if len(keys) != 1:
            raise ValueError(f"not homogeneous: {a}")
        x, y, w, q = keys.pop()
        return self.class_in(x, y, w, q, a.terms)

    def class_in(self, x, y, w: WeightVector, q: int, labels) -> HClass:
        coords = self.contraction(x, y, w).project(q, labels)
        return HClass(tuple(x), tuple(y), w, q, tuple(int(c) for c in coords))

    def representative(self, c: HClass) -> frozenset:
        return self.contraction(c.x, c.y, c.w).include(c.degree, np.array(c.coords, dtype=np.uint8))

    def describe(self, c: HClass) -> str:
        return str(self.element(self.representative(c)))

    def _check_inputs(self, inputs: Sequence[HClass]) -> None:
        if len(inputs) > self.arity_cap:
            raise ValueError(f"arity cap exceeded: {len(inputs)} > {self.arity_cap}")
        for a, b in zip(inputs, inputs[1:]):
            if a.y != b.x:
                raise ValueError(f"inputs are not idempotent-chained at {a.y} / {b.x}")

    def mu(self, inputs: Sequence[HClass]) -> HClass:
        n = len(inputs)
        if n < 2:
            raise ValueError("operations need at least two inputs")
        self._check_inputs(inputs)

        def span_key(i: int, j: int) -> tuple:
            w = inputs[i].w
            for c in inputs[i + 1 : j + 1]:
                w = w + c.w
            q = sum(c.degree for c in inputs[i : j + 1]) + (j - i + 1) - 2
            return inputs[i].x, inputs[j].y, w, q

        big: dict[tuple[int, int], frozenset] = {(i, i): self.representative(c) for i, c in enumerate(inputs)}
        for span in range(2, n + 1):
            for i in range(0, n - span + 1):
                j = i + span - 1
                lam = frozenset()
                for l in range(i, j):
                    lam = lam ^ self.product(big[(i, l)], big[(l + 1, j)])
                x, y, w, q = span_key(i, j)
                if span == n:
                    return self.class_in(x, y, w, q, lam)
                big[(i, j)] = self.contraction(x, y, w).homotopy(q, lam) if lam else frozenset()
        raise AssertionError("unreachable")


def transfer_mu(ctx: AlgebraContext, inputs: Sequence[HClass]) -> TransferredOp:
    out = ctx.mu(inputs)
    logger.info("mu_%s in %s(%s,%s): %s", len(inputs), ctx.tag, ctx.m, ctx.k, "0" if out.is_zero() else out.coords)
    return TransferredOp(len(inputs), tuple(inputs), out)


# ---------------------------------------------------------------------------
# Star chains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StarChainResult:
    table: dict[tuple[int, int], frozenset]
    top: HClass


def star_chain_solve(ctx: AlgebraContext, cycles: Sequence[PongElement]) -> StarChainResult:
    """Solve ``d A(i..j) = sum_l A(i..l) A(l+1..j)`` span by span, innermost first.

    Spans are 1-based in error messages.
    """
    n = len(cycles)
    if n < 2:
        raise ValueError("star chains need at least two inputs")
    classes = [ctx.class_of(a) for a in cycles]
    ctx._check_inputs(classes)
    for pos, a in enumerate(cycles, 1):
        if a.d():
            raise ValueError(f"input {pos} is not a cycle")
    table: dict[tuple[int, int], frozenset] = {(i, i): a.terms for i, a in enumerate(cycles)}

    def rhs(i: int, j: int) -> frozenset:
        total = frozenset()
        for l in range(i, j):
            total = total ^ ctx.product(table[(i, l)], table[(l + 1, j)])
        return total

    def key(i: int, j: int) -> tuple:
        w = classes[i].w
        for c in classes[i + 1 : j + 1]:
            w = w + c.w
        return classes[i].x, classes[j].y, w, sum(c.degree for c in classes[i : j + 1]) + (j - i + 1) - 2

    for span in range(2, n):
        for i in range(0, n - span + 1):
            j = i + span - 1
            x, y, w, q = key(i, j)
            target = rhs(i, j)
            solution = ctx.contraction(x, y, w).complex.solve_boundary(target, q) if target else frozenset()
            if solution is None:
                raise ValueError(f"obstruction at span ({i + 1}, {j + 1})")
            table[(i, j)] = solution
    x, y, w, q = key(0, n - 1)
    top_chain = rhs(0, n - 1)
    cplx = ctx.contraction(x, y, w).complex
    coords = cplx.homology_class(top_chain, q) if cplx.size(q) else np.zeros(0, dtype=np.uint8)
    return StarChainResult(table, HClass(x, y, w, q, tuple(int(c) for c in coords)))


# ---------------------------------------------------------------------------
# Inputs
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"^(?:(?P<mono>v\d+(?:\*?v\d+)*)|(?P<kind>[LRX])(?P<index>\d+)|(?P<idem>I))$")


def parse_inputs(m: int, k: int, x, text: str, tag: str = "P") -> list[PongElement]:
    """Parse ``"v1, L2, L3, v4, R3, R2"`` starting at idempotent ``x``.

    ``L_j = L_{j,j-1}``, ``R_j = R_{j-1,j}`` and ``X_j = X_{j-1,j}``; a run of
    ``v``'s is one input.
    """
    cls = QuotElement if tag == "Q" else PongElement
    state = tuple(sorted(x))
    if len(state) != k:
        raise ValueError(f"start state {state} does not have {k} elements")
    out: list[PongElement] = []
    for raw in (tok.strip() for tok in text.split(",")):
        match = _TOKEN_RE.match(raw)
        if not match:
            raise ValueError(f"cannot parse input {raw!r}")
        if match.group("mono"):
            indices = [int(i) for i in re.findall(r"v(\d+)", match.group("mono"))]
            if any(not 1 <= i <= m for i in indices):
                raise ValueError(f"variable index out of range in {raw!r}")
            out.append(cls.generator(PongData.idempotent(m, state), Monomial.v(m, *indices)))
            continue
        if match.group("idem"):
            out.append(cls.generator(PongData.idempotent(m, state)))
            continue
        kind, j = match.group("kind"), int(match.group("index"))
        desc = AtomicDescriptor(m, kind, j - 1, j)
        g = desc.data(state)
        if g is None:
            raise ValueError(f"{raw} is not defined at state {state}")
        out.append(cls.generator(g))
        state = g.right
    if not out:
        raise ValueError("no inputs given")
    return out


def top_operation_text(m: int, k_c: int) -> str:
    """``v1*..*vk, L_{k+1}, .., L_{m-1}, v_m, R_{m-1}, .., R_{k+1}``."""
    parts = ["*".join(f"v{i}" for i in range(1, k_c + 1))]
    parts += [f"L{j}" for j in range(k_c + 1, m)]
    parts.append(f"v{m}")
    parts += [f"R{j}" for j in range(m - 1, k_c, -1)]
    return ", ".join(parts)


def top_operation_setup(m: int, k_c: int) -> tuple[int, tuple[int, ...], str]:
    if not 0 < k_c < m - 1:
        raise ValueError(f"need 0 < k < m - 1, got k={k_c}, m={m}")
    return m - k_c - 1, tuple(range(k_c + 1, m)), top_operation_text(m, k_c)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def verify_top_operation(m: int, k_c: int, star_chain: bool = True, window_multiplier: int = 1) -> list[Violation]:
    """``mu_{2m-2k}`` on the standard inputs equals ``Omega I_x`` in H(P(m, m-k-1))."""
    k_p, x, text = top_operation_setup(m, k_c)
    arity = 2 * m - 2 * k_c
    subject = f"mu_{arity} in H(P({m},{k_p}))"
    ctx = AlgebraContext("P", m, k_p, arity_cap=arity, window_multiplier=window_multiplier)
    inputs = parse_inputs(m, k_p, x, text)
    classes = [ctx.class_of(a) for a in inputs]
    found: list[Violation] = []
    for pos, c in enumerate(classes, 1):
        found += expect(not c.is_zero(), subject, "inputs", f"input {pos} has zero class")
    op = transfer_mu(ctx, classes)
    target = ctx.class_of(omega(m, k_p).restrict(left=x))
    found += expect(not target.is_zero(), subject, "omega", "Omega I_x is zero in homology")
    found += expect(op.output == target, subject, "top-operation", f"got {ctx.describe(op.output) if not op.output.is_zero() else 0}")
    expected_degree = sum(c.degree for c in classes) + arity - 2
    found += expect(op.output.degree == expected_degree, subject, "grading", f"degree {op.output.degree}")
    if star_chain:
        try:
            top = star_chain_solve(ctx, inputs).top
            found += expect(top == target, subject, "star-chain", "star-chain class differs from Omega")
        except ValueError as exc:
            found.append(Violation(subject, "star-chain", str(exc)))
    return found


def x_classes(ctx: AlgebraContext) -> list[HClass]:
    full = tuple(range(1, ctx.m))
    out = []
    for i in range(1, ctx.m + 1):
        g = AtomicDescriptor(ctx.m, "X", i - 1, i).data(full)
        out.append(ctx.class_of(ctx.element_type.generator(g)))
    return out


@lru_cache(maxsize=None)
def _special_context(m: int) -> AlgebraContext:
    return AlgebraContext("Q", m, m - 1, arity_cap=m)


def _mu_on_x_classes(key: tuple[int, tuple[int, ...]]) -> HClass:
    m, order = key
    ctx = _special_context(m)
    xs = x_classes(ctx)
    return ctx.mu([xs[i] for i in order])


def verify_perm_sum(m: int, workers: int = 1) -> list[Violation]:
    """Sum of ``mu_m(X_s(1), .., X_s(m))`` over permutations equals ``[Omega]`` in H(Q(m, m-1)).

    Each ordering is evaluated independently, so ``workers > 1`` spreads
    them over processes.
    """
    ctx = _special_context(m)
    subject = f"H(Q({m},{m - 1}))"
    perms = map_pieces(_mu_on_x_classes, [(m, p) for p in itertools.permutations(range(m))], workers)
    total: HClass | None = None
    for out in perms.values():
        total = out if total is None else total + out
    full = tuple(range(1, m))
    target = ctx.class_of(q_omega(m, m - 1).restrict(left=full))
    found = expect(total == target, subject, "perm-sum", "permutation sum differs from Omega")
    chosen = [c for length in range(3, m) for c in itertools.combinations(range(m), length)]
    for (_, picked), out in map_pieces(_mu_on_x_classes, [(m, c) for c in chosen], workers).items():
        found += expect(
            out.is_zero(),
            subject,
            "low-arity",
            f"mu_{len(picked)} on X{[i + 1 for i in picked]} is nonzero",
        )
    return found


def omega_times(ctx: AlgebraContext, c: HClass) -> HClass:
    """``[Omega] * c``, read off in the piece one unit higher in every weight."""
    om = ctx.element(omega(ctx.m, ctx.k).restrict(left=c.x).terms)
    lift = multiply(om, ctx.element(ctx.representative(c)))
    return ctx.class_in(c.x, c.y, c.w + WeightVector.ones(ctx.m), c.degree + 2 * ctx.k, lift.terms)


def check_omega_linearity(ctx: AlgebraContext, inputs: Sequence[HClass], slot: int = 0) -> list[Violation]:
    """``mu_n(.., Omega a, ..) = Omega mu_n(.., a, ..)`` with Omega on input ``slot``."""
    if not 0 <= slot < len(inputs):
        raise ValueError(f"slot {slot} outside 0..{len(inputs) - 1}")
    shifted = list(inputs)
    shifted[slot] = omega_times(ctx, inputs[slot])
    lhs = ctx.mu(shifted)
    rhs = omega_times(ctx, ctx.mu(inputs))
    return expect(
        lhs == rhs,
        f"{ctx.tag}({ctx.m},{ctx.k}) arity {len(inputs)} slot {slot}",
        "omega-linear",
        "Omega does not pass through the operation",
    )


def check_ainfty_relations(ctx: AlgebraContext, inputs: Sequence[HClass]) -> list[Violation]:
    """``sum mu(.., mu_s(..), ..) = 0`` for inner arities ``2 <= s < n``.

    Omega-linearity is checked on every adjacent pair through ``mu_2``;
    higher operations depend on the contraction chosen in each piece and
    are only Omega-linear up to homotopy.
    """
    n = len(inputs)
    total: HClass | None = None
    for s in range(2, n):
        for r in range(0, n - s + 1):
            inner = ctx.mu(inputs[r : r + s])
            if inner.is_zero():
                continue
            outer = ctx.mu(list(inputs[:r]) + [inner] + list(inputs[r + s :]))
            total = outer if total is None else total + outer
    ok = total is None or total.is_zero()
    found = expect(ok, f"{ctx.tag}({ctx.m},{ctx.k}) arity {n}", "ainfty", "A-infinity relation fails")
    for r in range(n - 1):
        for slot in (0, 1):
            found += check_omega_linearity(ctx, inputs[r : r + 2], slot)
    return found
