"""Exhaustive checks of the DGA axioms and of atomic factorization in P(m,k)."""

from __future__ import annotations

import logging
import random

from .checks import Violation, expect
from .pong import PongElement, atomic_length, enumerate_generators, factor_atomic, is_atomic, product_of, states
from .strands import PongData, WeightVector, local_multiplicities

logger = logging.getLogger(__name__)


def pure_generators(m: int, k: int, cap: WeightVector) -> list[PongData]:
    """Every pure generator of P(m,k) with weight componentwise below ``cap``."""
    out: list[PongData] = []
    for x in states(m, k):
        out.extend(enumerate_generators(m, x, None, cap))
    logger.info("P(%s,%s) generators below %s: %s", m, k, cap, len(out))
    return sorted(out)


def _subject(m: int, k: int, *gens: PongData) -> str:
    return f"P({m},{k}) " + " * ".join(str(g) for g in gens)


def check_square_zero(m: int, k: int, cap: WeightVector) -> list[Violation]:
    found: list[Violation] = []
    for g in pure_generators(m, k, cap):
        dd = PongElement.generator(g).d().d()
        found += expect(not dd, _subject(m, k, g), "d2", f"d(d g) = {dd}")
    return found


def composable_pairs(gens: list[PongData], cap: WeightVector) -> list[tuple[PongData, PongData]]:
    by_left: dict[tuple[int, ...], list[PongData]] = {}
    for g in gens:
        by_left.setdefault(g.left, []).append(g)
    return [
        (a, b)
        for a in gens
        for b in by_left.get(a.right, [])
        if (local_multiplicities(a) + local_multiplicities(b)).within(cap)
    ]


def check_leibniz(m: int, k: int, cap: WeightVector) -> list[Violation]:
    """``d(ab) = d(a) b + a d(b)`` on composable pairs of total weight below ``cap``."""
    found: list[Violation] = []
    for a, b in composable_pairs(pure_generators(m, k, cap), cap):
        ea, eb = PongElement.generator(a), PongElement.generator(b)
        residual = (ea * eb).d() + ea.d() * eb + ea * eb.d()
        found += expect(not residual, _subject(m, k, a, b), "leibniz", f"residual {residual}")
    return found


def check_associativity(m: int, k: int, cap: WeightVector, samples: int = 1000, seed: int = 0) -> list[Violation]:
    """``(ab)c = a(bc)`` on random composable triples."""
    gens = pure_generators(m, k, cap)
    by_left: dict[tuple[int, ...], list[PongData]] = {}
    for g in gens:
        by_left.setdefault(g.left, []).append(g)
    rng = random.Random(seed)
    found: list[Violation] = []
    for _ in range(samples if gens else 0):
        a = rng.choice(gens)
        b = rng.choice(by_left[a.right])
        c = rng.choice(by_left[b.right])
        ea, eb, ec = (PongElement.generator(g) for g in (a, b, c))
        left, right = (ea * eb) * ec, ea * (eb * ec)
        found += expect(left == right, _subject(m, k, a, b, c), "associativity", f"{left} != {right}")
    return found


def check_dga_axioms(m: int, k: int, cap: WeightVector, samples: int = 1000, seed: int = 0) -> list[Violation]:
    return (
        check_square_zero(m, k, cap)
        + check_leibniz(m, k, cap)
        + check_associativity(m, k, cap, samples, seed)
    )


def check_atomic_lengths(m: int, k: int, cap: WeightVector) -> list[Violation]:
    """``2 Totweight - cross >= 1`` off idempotents, with equality exactly on atomics, and factorizations multiply back."""
    found: list[Violation] = []
    for g in pure_generators(m, k, cap):
        if g.is_idempotent():
            continue
        subject = _subject(m, k, g)
        n = atomic_length(g)
        found += expect(n >= 1, subject, "length", f"atomic length {n}")
        found += expect((n == 1) == is_atomic(g), subject, "atomic", f"atomic length {n}, atomic={is_atomic(g)}")
        try:
            factors = factor_atomic(g)
        except ValueError as exc:
            found.append(Violation(subject, "factor", str(exc)))
            continue
        found += expect(len(factors) == n, subject, "factor", f"{len(factors)} factors for length {n}")
        found += expect(
            product_of(factors) == PongElement.generator(g), subject, "factor", "factors do not multiply back"
        )
    return found
