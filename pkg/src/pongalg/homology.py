"""Homology of weight pieces and the checks built on it.

Usage::

    from pongalg.homology import homology
    from pongalg.pieces import enumerate_basis
    from pongalg.strands import WeightVector

    basis = enumerate_basis("Q", 4, 3, (1, 2, 3), (1, 2, 3), WeightVector.of(1, 1, 1, 1))
    homology(basis).dimensions
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, TypeVar

from .bordered import IdempotentState, clg_t_dimension, minimal_weight
from .checks import Violation, expect
from .complexes import ChainComplex, HomologySummary
from .pieces import WeightPieceBasis, compatible_triple, enumerate_basis, interleaved, piece_complex
from .pong import AtomicDescriptor, Monomial, states
from .quotient import QuotElement, cone_piece, q_differential, q_multiply
from .strands import PongData, WeightVector, cross, fold_class, local_multiplicities

logger = logging.getLogger(__name__)

K = TypeVar("K", bound=Hashable)
R = TypeVar("R")


def homology(basis: WeightPieceBasis, representatives: bool = False) -> HomologySummary:
    return piece_complex(basis).homology(representatives)


def map_pieces(fn: Callable[[K], R], keys: Iterable[K], workers: int = 1) -> dict[K, R]:
    """Apply ``fn`` to every key; results are merged by key, so order never matters.

    ``fn`` must be a module-level callable when ``workers > 1``.
    """
    ordered = sorted(set(keys))
    if workers <= 1 or len(ordered) < 2:
        return {key: fn(key) for key in ordered}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return dict(zip(ordered, pool.map(fn, ordered)))


def weight_grid(m: int, cap: int) -> list[WeightVector]:
    """Every weight vector with half-integer entries in ``[0, cap]``."""
    return [WeightVector(d) for d in itertools.product(range(0, 2 * cap + 1), repeat=m)]


def compatible_weights(m: int, x, y, cap: int) -> list[WeightVector]:
    return [w for w in weight_grid(m, cap) if compatible_triple(m, tuple(x), tuple(y), w)]


# ---------------------------------------------------------------------------
# Canonical cycles
# ---------------------------------------------------------------------------


def _right_moves_chain(g: PongData) -> bool:
    """True when some right-moving strand ends where another one starts."""
    movers = {s: n for s, n in g.pairs() if n > s}
    return any(fold_class(g.m, n) in movers and fold_class(g.m, n) != s for s, n in movers.items())


def _cycle_level(w: WeightVector) -> int | None:
    """The integer ``c`` with ``c <= w_i <= c + 1``, preferring the larger gap to ``w``."""
    halves = w.halves()
    c = max(0, math.ceil(max(halves)) - 1)
    if min(halves) < c:
        return None
    return c


def _block_product(m: int, k: int, x: tuple[int, ...], target: WeightVector) -> QuotElement | None:
    """Ordered product of ``𝒳_{x_i, x_{i+1}}`` over the blocks where ``target`` is one."""
    walls = (0,) + x + (m,)
    z = QuotElement.generator(PongData.idempotent(m, x))
    for lo, hi in zip(walls, walls[1:]):
        block = set(target.halves()[lo:hi])
        if len(block) != 1:
            return None
        if block == {0}:
            continue
        if (lo, hi) == (0, m):
            return None
        g = AtomicDescriptor(m, "X", lo, hi, calligraphic=True).data(x)
        if g is None:
            return None
        z = q_multiply(z, QuotElement.generator(g))
    return z if z.terms else None


def canonical_cycle(m: int, k: int, x, y, w: WeightVector) -> QuotElement | None:
    """The canonical cycle of ``(x, y; w)``, or None when the hypotheses fail.

    For integral ``w`` (so ``x == y``) it is the product of the calligraphic
    ``𝒳`` over the blocks of ``x`` carrying weight ``c + 1``, taken left to
    right. Otherwise it is the first generator, in ``(cross, targets)`` order,
    of weight ``w - c`` with no chained right-moving strands and zero Q
    differential; homologous choices exist and this order picks one.
    """
    x, y = tuple(x), tuple(y)
    if not w.is_nonnegative() or not compatible_triple(m, x, y, w) or not interleaved(x, y):
        return None
    c = _cycle_level(w)
    if c is None:
        return None
    target = w - WeightVector.ones(m, c)
    if target.is_integral() and x == y:
        z = _block_product(m, k, x, target)
    else:
        basis = enumerate_basis("Q", m, k, x, y, target)
        candidates = sorted(
            (g for _, g in basis.elements if not _right_moves_chain(g)),
            key=lambda g: (cross(g), g.targets),
        )
        z = next(
            (
                QuotElement.generator(g)
                for g in candidates
                if not q_differential(QuotElement.generator(g)).terms
            ),
            None,
        )
    if z is None or any(local_multiplicities(g) != target for _, g in z.terms):
        return None
    return z


def cycle_is_essential(m: int, k: int, x, y, w: WeightVector, z: QuotElement) -> bool:
    """True when ``z`` is a cycle of the Q' piece at ``w`` and not a boundary there."""
    if q_differential(z).terms:
        return False
    cone = cone_piece("Q'", m, k, x, y, w).complex
    degrees = {cross(g) for _, g in z.terms}
    if len(degrees) != 1 or any(local_multiplicities(g) != w for _, g in z.terms):
        return False
    q = degrees.pop()
    labels = [("base", mono, g) for mono, g in z.terms]
    if cone.differential(labels):
        return False
    return not cone.is_boundary(labels, q)


# ---------------------------------------------------------------------------
# Excessive generators
# ---------------------------------------------------------------------------


def _copy_meets(a: int, b: int, p: int, period: int) -> bool:
    """Some translate ``[a + P t, b + P t]`` contains ``p``."""
    return math.ceil((p - b) / period) <= math.floor((p - a) / period)


def excessive_strands(g: PongData, p: int) -> list[int]:
    """Sources whose strand has a non-left-moving lift meeting ``p``."""
    period = 2 * g.m - 2
    out = []
    for s, n in g.pairs():
        if n == s:
            hit = s == p
        elif n > s:
            hit = _copy_meets(s, n, p, period)
        else:
            hit = _copy_meets(1 - s, 1 - n, p, period)
        if hit:
            out.append(s)
    return out


def is_excessive(g: PongData, p: int) -> bool:
    if not 1 <= p <= g.m - 1:
        raise ValueError(f"position {p} outside 1..{g.m - 1}")
    return len(excessive_strands(g, p)) >= 2


# ---------------------------------------------------------------------------
# The model complex
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModelComplex:
    """Koszul-type model on ``{0,1}^{k+1}`` with ``d xi = sum V_i (xi - e_i)``."""

    m: int
    x: tuple[int, ...]
    y: tuple[int, ...]
    v: tuple[Monomial, ...]
    base_weight: WeightVector

    def weight_of(self, xi: tuple[int, ...]) -> WeightVector:
        w = self.base_weight
        for bit, vs in zip(xi, self.v):
            if bit:
                w = w + vs.weight()
        return w

    def complex_at(self, w: WeightVector) -> ChainComplex:
        basis: dict[int, list] = {}
        for xi in itertools.product((0, 1), repeat=len(self.v)):
            rest = w - self.weight_of(xi)
            if rest.is_nonnegative() and rest.is_integral():
                basis.setdefault(sum(xi), []).append((Monomial.from_weight(rest), xi))

        def d(label):
            mono, xi = label
            out = []
            for i, bit in enumerate(xi):
                if bit:
                    out.append((mono * self.v[i], xi[:i] + (0,) + xi[i + 1 :]))
            return out

        return ChainComplex.build(basis, d, name=f"model{self.x}{self.y}{w}")

    def quotient_count(self, w: WeightVector) -> int:
        """Dimension of ``F[v]/(V_1, ..., V_{k+1})`` in weight ``w``."""
        rest = w - self.base_weight
        if not rest.is_nonnegative() or not rest.is_integral():
            return 0
        mono = Monomial.from_weight(rest)
        divisible = any(all(a >= b for a, b in zip(mono.exponents, vs.exponents)) for vs in self.v)
        return 0 if divisible else 1


def model_complex(m: int, x, y) -> ModelComplex:
    x, y = tuple(x), tuple(y)
    if len(x) != len(y) or not interleaved(x, y):
        raise ValueError(f"idempotents {x} and {y} are not interleaved")
    xs, ys = (0,) + x + (m,), (0,) + y + (m,)
    vs = []
    for s in range(1, len(x) + 2):
        lo, hi = max(xs[s - 1], ys[s - 1]) + 1, min(xs[s], ys[s])
        vs.append(Monomial.v(m, *range(lo, hi + 1)))
    base = minimal_weight(IdempotentState(m, x, "B0"), IdempotentState(m, y, "B0"))
    return ModelComplex(m, x, y, tuple(vs), base)


# ---------------------------------------------------------------------------
# Theorem checks
# ---------------------------------------------------------------------------


def _subject(kind: str, m: int, k: int, x, y, w: WeightVector) -> str:
    return f"{kind}({m},{k}) x={tuple(x)} y={tuple(y)} w={w}"


def _q_cone_dimension(key: tuple) -> tuple[int, bool, bool | None]:
    m, k, x, y, doubled = key
    w = WeightVector(doubled)
    cone = cone_piece("Q'", m, k, x, y, w)
    if not cone.complex.check_square_zero():
        return 0, False, None
    z = canonical_cycle(m, k, x, y, w)
    essential = None if z is None else cycle_is_essential(m, k, x, y, w, z)
    return cone.homology().total, True, essential


def check_q_trichotomy(m: int, k: int, cap: int = 2, workers: int = 1) -> list[Violation]:
    """Homology of Q' pieces is at most one-dimensional, and exactly where predicted.

    Inside the predicted range the canonical cycle, when the piece has one,
    must be a cycle that is not a boundary.
    """
    keys = [
        (m, k, x, y, w.doubled)
        for x in states(m, k)
        for y in states(m, k)
        for w in compatible_weights(m, x, y, cap)
    ]
    results = map_pieces(_q_cone_dimension, keys, workers)
    found: list[Violation] = []
    for key, (dim, square_zero, essential) in results.items():
        _, _, x, y, doubled = key
        w = WeightVector(doubled)
        subject = _subject("Q'", m, k, x, y, w)
        bounded = all(0 <= c <= 2 for c in doubled)
        predicted = interleaved(x, y) and bounded
        found += expect(square_zero, subject, "cone-d2", "cone differential does not square to zero")
        found += expect(dim <= 1, subject, "dimension", f"homology has dimension {dim}")
        if dim == 1:
            found += expect(predicted, subject, "support", "nonzero homology outside the predicted range")
        if predicted and essential is not None:
            found += expect(essential, subject, "canonical", "canonical cycle is not an essential cycle")
            found += expect(dim == 1, subject, "support", "predicted class is missing")
    return found


def q_special_hilbert(m: int, w: WeightVector) -> dict[int, int]:
    """Graded dimension of ``F[X_1..X_m, Omega]/(X_i^2)`` in weight ``w``."""
    out: dict[int, int] = {}
    if not w.is_integral():
        return out
    comps = [c // 2 for c in w.doubled]
    for c in range(0, min(comps) + 1):
        rest = [a - c for a in comps]
        if all(r in (0, 1) for r in rest):
            degree = sum(rest) + 2 * (m - 1) * c
            out[degree] = out.get(degree, 0) + 1
    return out


def x_class(m: int, i: int) -> QuotElement:
    """``X_i = X_{i-1,i}`` in Q(m, m-1)."""
    full = tuple(range(1, m))
    g = AtomicDescriptor(m, "X", i - 1, i, left=full).data(full)
    return QuotElement.generator(g)


def check_q_special(m: int, cap: int = 2) -> list[Violation]:
    """H(Q(m, m-1)) against ``F[X_1..X_m, Omega]/(X_i^2)``, plus the defining relations."""
    k = m - 1
    full = tuple(range(1, m))
    found: list[Violation] = []
    for w in compatible_weights(m, full, full, cap):
        subject = _subject("Q", m, k, full, full, w)
        dims = homology(enumerate_basis("Q", m, k, full, full, w)).nonzero()
        expected = q_special_hilbert(m, w)
        found += expect(dims == expected, subject, "hilbert", f"got {dims}, expected {expected}")
    for i in range(1, m + 1):
        xi = x_class(m, i)
        found += expect(not q_multiply(xi, xi), f"X{i}", "square", "X_i^2 is nonzero")
        for j in range(i + 1, m + 1):
            xj = x_class(m, j)
            comm = q_multiply(xi, xj) + q_multiply(xj, xi)
            if not comm:
                continue
            w = WeightVector.unit(m, i) + WeightVector.unit(m, j)
            cplx = piece_complex(enumerate_basis("Q", m, k, full, full, w))
            labels = [t for t in comm.terms]
            found += expect(
                cplx.is_boundary(labels, 2), f"X{i}X{j}", "commute", "commutator is not a boundary"
            )
    return found


def complement(m: int, x) -> tuple[int, ...]:
    return tuple(sorted(set(range(1, m)) - set(x)))


def check_hp_dimensions(m: int, k: int, cap: int = 2) -> list[Violation]:
    """dim H(P(x,y;w)) equals dim C(m, m-k-1)[t](x', y'; w) for complementary idempotents."""
    found: list[Violation] = []
    ck = m - k - 1
    for x in states(m, k):
        for y in states(m, k):
            xc = IdempotentState.of(m, complement(m, x))
            yc = IdempotentState.of(m, complement(m, y))
            for w in compatible_weights(m, x, y, cap):
                got = homology(enumerate_basis("P", m, k, x, y, w)).total
                expected = clg_t_dimension(m, ck, xc, yc, w)
                found += expect(
                    got == expected,
                    _subject("P", m, k, x, y, w),
                    "clg-t",
                    f"homology {got}, C[t] piece {expected}",
                )
    return found


def check_model_comparison(m: int, k: int, cap: int = 2) -> list[Violation]:
    """P' cone homology agrees with the model complex and with ``F[v]/(V)``."""
    found: list[Violation] = []
    for x in states(m, k):
        for y in states(m, k):
            model = model_complex(m, x, y) if interleaved(x, y) else None
            for w in compatible_weights(m, x, y, cap):
                subject = _subject("P'", m, k, x, y, w)
                got = cone_piece("P'", m, k, x, y, w).homology().total
                if model is None:
                    found += expect(got == 0, subject, "interleaving", f"homology {got} without interleaving")
                    continue
                model_dim = model.complex_at(w).homology().total
                count = model.quotient_count(w)
                found += expect(
                    got == model_dim == count,
                    subject,
                    "model",
                    f"cone {got}, model {model_dim}, quotient count {count}",
                )
    return found


def check_degenerate(m: int, cap: int = 2) -> list[Violation]:
    """H(P(m,0)) is F[v] with zero differential and H(P(m,m-1)) is F[Omega]."""
    found: list[Violation] = []
    for w in weight_grid(m, cap):
        if not w.is_integral():
            continue
        basis = enumerate_basis("P", m, 0, (), (), w)
        summary = homology(basis)
        cplx = piece_complex(basis)
        zero_d = all(not cplx.images[label] for q in cplx.degrees() for label in cplx.basis(q))
        found += expect(zero_d and summary.nonzero() == {0: 1}, _subject("P", m, 0, (), (), w), "polynomial", str(summary))
    full = tuple(range(1, m))
    for w in compatible_weights(m, full, full, cap):
        dims = homology(enumerate_basis("P", m, m - 1, full, full, w)).nonzero()
        comps = set(w.doubled)
        expected = {}
        if len(comps) == 1 and w.is_integral():
            c = w.doubled[0] // 2
            expected = {2 * (m - 1) * c: 1}
        found += expect(dims == expected, _subject("P", m, m - 1, full, full, w), "omega-powers", f"got {dims}")
    return found


def check_excessive_vanishing(m: int, k: int, cap: int = 1) -> list[Violation]:
    """Degrees where every generator in ``d`` and ``d - 1`` is excessive at some ``p`` carry no homology."""
    found: list[Violation] = []
    for x in states(m, k):
        for y in states(m, k):
            for w in compatible_weights(m, x, y, cap):
                basis = enumerate_basis("Q", m, k, x, y, w)
                if not basis.elements:
                    continue
                by_degree = basis.by_degree()
                dims = homology(basis).dimensions
                for d in by_degree:
                    for p in range(1, m):
                        gens = [g for _, g in by_degree.get(d, []) + by_degree.get(d - 1, [])]
                        if all(is_excessive(g, p) for g in gens):
                            found += expect(
                                dims.get(d, 0) == 0,
                                _subject("Q", m, k, x, y, w),
                                "excessive",
                                f"degree {d} survives although excessive at {p}",
                            )
    return found

