"""The type-DD bimodule between C(m,k) and Q(m,k).

Generators are one ``gamma_x`` per idempotent state.  ``delta1`` pairs every
atomic generator ``b`` of Q with the C-element of the same weight, ``f(b)``,
and places the reverse atomic of ``b`` on the Q side.

Usage::

    from pongalg.dd import delta1, verify_dd_relation

    delta1(3, 1, (1,))                # [DDTerm(...), ...]
    verify_dd_relation(4, 2)          # [] when the structure relation holds
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass

from .bordered import ClgElement, ClgPure, IdempotentState, b0_multiply, ideal_member, is_valid_pure
from .checks import Violation, expect
from .complexes import parity
from .pong import (
    AtomicDescriptor,
    all_descriptors,
    describe_atomic,
    ngr,
    plain_atomics,
    pure_differential,
    pure_product,
    states,
)
from .strands import PongData, local_multiplicities

logger = logging.getLogger(__name__)

_REVERSE_KIND = {"X": "X", "R": "L", "L": "R"}


def f_pure(g: PongData) -> ClgPure | None:
    """C pure element with the idempotents and weight of ``g``; ``None`` if it lies in J."""
    x = IdempotentState.of(g.m, g.left)
    y = IdempotentState.of(g.m, g.right)
    w = local_multiplicities(g)
    if not is_valid_pure(x, y, w):
        return None
    p = ClgPure(x, y, w)
    return None if ideal_member(p) else p


def f_map(g: PongData) -> ClgElement:
    if describe_atomic(g) is None:
        raise ValueError(f"{g} is not an atomic generator")
    p = f_pure(g)
    return ClgElement.pure(p) if p is not None else ClgElement.zero(g.m, g.k)


def partner(g: PongData) -> PongData:
    """The reverse atomic: ``R_{i,j} <-> L_{j,i}`` and ``X_{i,j} <-> X_{i,j}``."""
    desc = describe_atomic(g)
    if desc is None:
        raise ValueError(f"{g} is not an atomic generator")
    rev = AtomicDescriptor(g.m, _REVERSE_KIND[desc.kind], desc.lo, desc.hi)
    out = rev.data(g.right)
    if out is None:
        raise ValueError(f"{desc} has no reverse at {g.right}")
    return out


@dataclass(frozen=True, order=True)
class DDTerm:
    """``c (x) gamma_target (x) q`` in ``delta1(gamma_source)``."""

    c: ClgPure
    source: tuple[int, ...]
    target: tuple[int, ...]
    q: PongData

    def __str__(self) -> str:
        return f"{self.c} ⊗ γ{set(self.target) or '{}'} ⊗ {self.q}"


def all_atomics(m: int, k: int) -> list[tuple[AtomicDescriptor, PongData]]:
    return [pair for x in states(m, k) for pair in plain_atomics(m, x)]


def delta1(m: int, k: int, x) -> list[DDTerm]:
    x = tuple(sorted(x))
    if len(x) != k or any(not 1 <= e <= m - 1 for e in x):
        raise ValueError(f"{x} is not an idempotent state of ({m},{k})")
    out = []
    for _, b in all_atomics(m, k):
        if b.right != x:
            continue
        c = f_pure(b)
        if c is not None:
            out.append(DDTerm(c, x, b.left, partner(b)))
    return sorted(out)


@dataclass(frozen=True)
class DDStructure:
    m: int
    k: int
    terms: dict[tuple[int, ...], list[DDTerm]]

    @classmethod
    def build(cls, m: int, k: int) -> DDStructure:
        return cls(m, k, {x: delta1(m, k, x) for x in states(m, k)})

    def __len__(self) -> int:
        return sum(len(v) for v in self.terms.values())


# ---------------------------------------------------------------------------
# Structure relation
# ---------------------------------------------------------------------------


def dd_residual(m: int, k: int) -> dict[tuple[ClgPure, PongData], list[str]]:
    """Surviving terms of the structure relation, with the pairs that produced them."""
    if not 0 < k < m:
        raise ValueError(f"need 0 < k < m, got k={k}, m={m}")
    sources: dict[tuple[ClgPure, PongData], list[str]] = defaultdict(list)
    produced: list[tuple[ClgPure, PongData]] = []
    atoms = all_atomics(m, k)

    for desc, b in atoms:
        c = f_pure(b)
        if c is None:
            continue
        for drop, r in pure_differential(partner(b)):
            if drop.is_one():
                produced.append((c, r))
                sources[(c, r)].append(f"d {desc}")

    by_left: dict[tuple[int, ...], list[tuple[AtomicDescriptor, PongData]]] = defaultdict(list)
    for desc, b in atoms:
        by_left[b.left].append((desc, b))
    for desc, b in atoms:
        fb = f_pure(b)
        if fb is None:
            continue
        for desc2, b2 in by_left[b.right]:
            fb2 = f_pure(b2)
            if fb2 is None:
                continue
            c = b0_multiply(fb, fb2)
            if c is None or ideal_member(c):
                continue
            r = pure_product(partner(b2), partner(b))
            if r is None or not r[0].is_one():
                continue
            produced.append((c, r[1]))
            sources[(c, r[1])].append(f"{desc} * {desc2}")

    residual = parity(produced)
    logger.info("DD relation (%s,%s): %s terms, %s residual", m, k, len(produced), len(residual))
    return {t: sources[t] for t in sorted(residual)}


def verify_dd_relation(m: int, k: int) -> list[Violation]:
    found = [
        Violation(f"DD({m},{k})", "relation", f"residual {c} ⊗ {q} from {', '.join(src)}")
        for (c, q), src in dd_residual(m, k).items()
    ]
    for x in states(m, k):
        for term in delta1(m, k, x):
            subject = f"DD({m},{k}) {term}"
            found += expect(
                term.c.weight == local_multiplicities(term.q), subject, "bidegree", "weights differ"
            )
            found += expect(ngr(term.q) == -1, subject, "bidegree", f"Ngr is {ngr(term.q)}")
    return found


# ---------------------------------------------------------------------------
# Products of atomics
# ---------------------------------------------------------------------------

PRODUCT_CLASSES = ("zero", "rewrite", "chain", "boundary")


def _shape(a: AtomicDescriptor, b: AtomicDescriptor) -> str | None:
    """``chain`` for R_ab R_bc and L_cb L_ba; ``boundary`` for the dR, dL, dX shapes."""
    if a.kind == b.kind == "R":
        if a.hi == b.lo:
            return "chain"
        if b.hi == a.lo:
            return "boundary"
    if a.kind == b.kind == "L":
        if a.lo == b.hi:
            return "chain"
        if b.lo == a.hi:
            return "boundary"
    if a.kind == b.kind == "X" and (a.hi == b.lo or b.hi == a.lo):
        return "boundary"
    return None


def _factor_pool(m: int, k: int) -> dict[tuple[int, ...], set[PongData]]:
    """Plain atomics plus the calligraphic ``𝒳``, grouped by left idempotent."""
    pool: dict[tuple[int, ...], set[PongData]] = defaultdict(set)
    for x in states(m, k):
        for _, g in plain_atomics(m, x):
            pool[x].add(g)
        for desc in all_descriptors(m, calligraphic=True):
            if desc.kind == "X":
                g = desc.data(x)
                if g is not None:
                    pool[x].add(g)
    return pool


def classify_products(m: int, k: int) -> dict[tuple[AtomicDescriptor, AtomicDescriptor], str]:
    """Sort every chained pair of atomics by how its Q-product behaves.

    A product is a rewrite when some other pair of atomic generators,
    calligraphic ``𝒳`` included, multiplies to the same pong datum.
    """
    atoms = all_atomics(m, k)
    by_left: dict[tuple[int, ...], list[tuple[AtomicDescriptor, PongData]]] = defaultdict(list)
    for desc, g in atoms:
        by_left[g.left].append((desc, g))

    products: dict[tuple[AtomicDescriptor, AtomicDescriptor], PongData | None] = {}
    for da, a in atoms:
        for db, b in by_left[a.right]:
            r = pure_product(a, b)
            products[(da, db)] = r[1] if r is not None and r[0].is_one() else None

    makers: dict[PongData, set[tuple[PongData, PongData]]] = defaultdict(set)
    pool = _factor_pool(m, k)
    for firsts in pool.values():
        for a in firsts:
            for b in pool.get(a.right, ()):
                r = pure_product(a, b)
                if r is not None and r[0].is_one():
                    makers[r[1]].add((a, b))

    out = {}
    for pair, value in products.items():
        if value is None:
            out[pair] = "zero"
        elif _shape(*pair) is not None:
            out[pair] = _shape(*pair)
        elif len(makers[value]) > 1:
            out[pair] = "rewrite"
        else:
            out[pair] = "unclassified"
    return out


def verify_product_trichotomy(m: int, k: int) -> list[Violation]:
    return [
        Violation(f"Q({m},{k}) {a} * {b}", "trichotomy", "product is not zero, a rewrite or a boundary shape")
        for (a, b), kind in sorted(classify_products(m, k).items())
        if kind == "unclassified"
    ]
