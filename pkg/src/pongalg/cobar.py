"""Finite weight pieces of the cobar algebra of C(m,k) and the comparison map to Q(m,k).

A cobar word is a chain ``a_1* (x) ... (x) a_n*`` of duals of non-idempotent
basis elements of C; its weight is the sum of the letter weights.  The
differential splits one letter into two factors.  ``phi`` sends ``a*`` to the
sum of reverse atomics ``q`` whose C-image is ``a`` and multiplies them in
reversed order.

Usage::

    from pongalg.cobar import cobar_piece, verify_quasi_iso

    cobar_piece(3, 1, (1,), (2,), WeightVector.of("1/2", "1/2", 0)).homology()
    verify_quasi_iso(3, 1, cap=1)        # [] when phi is a quasi-isomorphism
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bordered import ClgPure, IdempotentState, all_states, clg_pure_elements, ideal_member, is_valid_pure
from .checks import Violation, expect
from .complexes import ChainComplex, parity
from .config import PHI_ORDERS
from .dd import all_atomics, f_pure, partner
from .gf2 import gf2_rank
from .homology import compatible_weights
from .pieces import enumerate_basis, piece_complex
from .quotient import QuotElement, q_multiply
from .strands import PongData, WeightVector

logger = logging.getLogger(__name__)


def is_letter(a: ClgPure) -> bool:
    return not a.is_idempotent() and not ideal_member(a)


@dataclass(frozen=True, order=True)
class CobarWord:
    start: IdempotentState
    letters: tuple[ClgPure, ...] = ()

    def __post_init__(self) -> None:
        current = self.start
        for a in self.letters:
            if a.x != current:
                raise ValueError(f"letter {a} does not start at {current}")
            if not is_letter(a):
                raise ValueError(f"{a} is not a cobar letter")
            current = a.y

    @classmethod
    def of(cls, *letters: ClgPure) -> CobarWord:
        if not letters:
            raise ValueError("empty word needs an explicit start state")
        return cls(letters[0].x, tuple(letters))

    @property
    def m(self) -> int:
        return self.start.m

    @property
    def end(self) -> IdempotentState:
        return self.letters[-1].y if self.letters else self.start

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def weight(self) -> WeightVector:
        total = WeightVector.zero(self.m)
        for a in self.letters:
            total = total + a.weight
        return total

    def concat(self, other: CobarWord) -> CobarWord:
        if self.end != other.start:
            raise ValueError("not composable")
        return CobarWord(self.start, self.letters + other.letters)

    def __str__(self) -> str:
        if not self.letters:
            return f"1 | x={self.start}"
        return " ⊗ ".join(f"({a})*" for a in self.letters)


# ---------------------------------------------------------------------------
# Differential
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def factorizations(a: ClgPure) -> tuple[tuple[ClgPure, ClgPure], ...]:
    """Pairs of letters ``(b, c)`` with ``b * c = a`` in C."""
    out = []
    for z in all_states(a.m, a.k):
        for b in clg_pure_elements(a.m, a.k, a.x, z, a.weight):
            if not is_letter(b):
                continue
            rest = a.weight - b.weight
            if not is_valid_pure(z, a.y, rest):
                continue
            c = ClgPure(z, a.y, rest)
            if is_letter(c):
                out.append((b, c))
    return tuple(sorted(out))


def cobar_differential(word: CobarWord) -> frozenset[CobarWord]:
    out = []
    for pos, a in enumerate(word.letters):
        for b, c in factorizations(a):
            letters = word.letters[:pos] + (b, c) + word.letters[pos + 1 :]
            out.append(CobarWord(word.start, letters))
    return parity(out)


def cobar_words(m: int, k: int, x: IdempotentState, y: IdempotentState, w: WeightVector) -> list[CobarWord]:
    """Every cobar word from ``x`` to ``y`` of total weight ``w``."""
    found: list[CobarWord] = []

    def extend(current: IdempotentState, letters: tuple[ClgPure, ...], remaining: WeightVector) -> None:
        if remaining.doubled_total == 0:
            if current == y:
                found.append(CobarWord(x, letters))
            return
        for z in all_states(m, k):
            for a in clg_pure_elements(m, k, current, z, remaining):
                if is_letter(a):
                    extend(z, letters + (a,), remaining - a.weight)

    if w.is_nonnegative():
        extend(x, (), w)
    return sorted(found)


def cobar_piece(m: int, k: int, x, y, w: WeightVector) -> ChainComplex:
    """The ``(x, y, w)`` piece; degree ``-length`` so ``d`` lowers degree."""
    x, y = IdempotentState.of(m, x), IdempotentState.of(m, y)
    basis: dict[int, list[CobarWord]] = defaultdict(list)
    for word in cobar_words(m, k, x, y, w):
        basis[-word.length].append(word)
    return ChainComplex.build(basis, cobar_differential, name=f"cobar{x}{y}{w}")


# ---------------------------------------------------------------------------
# The comparison map
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def letter_image(m: int, k: int) -> dict[ClgPure, tuple[PongData, ...]]:
    """``a -> (reverse atomics q with f(partner(q)) = a)``."""
    out: dict[ClgPure, list[PongData]] = defaultdict(list)
    for _, b in all_atomics(m, k):
        c = f_pure(b)
        if c is not None:
            out[c].append(partner(b))
    return {a: tuple(sorted(qs)) for a, qs in out.items()}


def phi(word: CobarWord, k: int, order: str = "reversed") -> QuotElement:
    if order not in PHI_ORDERS:
        raise ValueError(f"phi order must be one of {PHI_ORDERS}, got {order!r}")
    m = word.m
    images = letter_image(m, k)
    factors = list(reversed(word.letters)) if order == "reversed" else list(word.letters)
    if not factors:
        return QuotElement.generator(PongData.idempotent(m, word.start.elements))
    result = QuotElement.from_generators(m, k, images.get(factors[0], ()))
    for a in factors[1:]:
        result = q_multiply(result, QuotElement.from_generators(m, k, images.get(a, ())))
        if not result:
            break
    return result


def phi_chain(words, k: int, order: str = "reversed") -> QuotElement | None:
    total = None
    for word in words:
        value = phi(word, k, order)
        total = value if total is None else total + value
    return total


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def _subject(m: int, k: int, x, y, w: WeightVector) -> str:
    return f"cobar({m},{k}) x={tuple(x)} y={tuple(y)} w={w}"


def verify_piece(
    m: int, k: int, x, y, w: WeightVector, order: str = "reversed", rows: list[dict] | None = None
) -> list[Violation]:
    """Chain map, matching homology dimensions and an isomorphism on homology for one piece.

    Per-length dimensions are appended to ``rows`` when given.
    """
    subject = _subject(m, k, x, y, w)
    src = cobar_piece(m, k, x, y, w)
    qbasis = enumerate_basis("Q", m, k, tuple(y), tuple(x), w)
    tgt = piece_complex(qbasis)
    total = w.doubled_total
    found: list[Violation] = []

    for q in src.degrees():
        for word in src.basis(q):
            lhs = phi_chain(src.differential([word]), k, order)
            rhs = phi(word, k, order).d()
            lhs = lhs if lhs is not None else QuotElement.zero(m, k)
            if (lhs + rhs).terms:
                found.append(Violation(subject, "chain-map", f"phi(d {word}) != d phi({word})"))
    if found:
        return found

    hs = src.homology(representatives=True)
    ht = tgt.homology()
    for q in sorted(set(hs.dimensions) | {q - total for q in ht.dimensions}):
        dim_src = hs.dimensions.get(q, 0)
        dim_tgt = ht.dimensions.get(q + total, 0)
        if rows is not None and (dim_src or dim_tgt):
            rows.append(
                {"x": list(x), "y": list(y), "w": w.to_json(), "length": -q, "cobar": dim_src, "dimension": dim_tgt}
            )
        found += expect(
            dim_src == dim_tgt,
            subject,
            "dimension",
            f"length {-q}: cobar {dim_src}, Q {dim_tgt}",
        )
        if not dim_src or dim_src != dim_tgt:
            continue
        class_rows = []
        for rep in hs.representatives[q]:
            image = phi_chain(sorted(rep), k, order)
            labels = image.terms if image is not None else frozenset()
            class_rows.append(tgt.homology_class(labels, q + total))
        found += expect(
            gf2_rank(np.array(class_rows, dtype=np.uint8)) == dim_src,
            subject,
            "homology-iso",
            f"phi is not injective on homology at length {-q}",
        )
    return found


def verify_multiplicative(m: int, k: int, cap: int = 1, order: str = "reversed") -> list[Violation]:
    """``phi(u v) = phi(v) phi(u)`` on chained pairs of single letters."""
    found: list[Violation] = []
    capw = WeightVector.ones(m, cap)
    letters = [
        a
        for x in all_states(m, k)
        for y in all_states(m, k)
        for a in clg_pure_elements(m, k, x, y, capw)
        if is_letter(a)
    ]
    for a in letters:
        for b in letters:
            if a.y != b.x:
                continue
            u, v = CobarWord.of(a), CobarWord.of(b)
            joined = phi(u.concat(v), k, order)
            split = q_multiply(phi(v, k, order), phi(u, k, order)) if order == "reversed" else q_multiply(
                phi(u, k, order), phi(v, k, order)
            )
            found += expect(
                not (joined + split).terms, f"{u} ⊗ {v}", "multiplicative", "phi does not respect products"
            )
    return found


def verify_quasi_iso(
    m: int, k: int, cap: int = 1, order: str = "reversed", rows: list[dict] | None = None
) -> list[Violation]:
    found: list[Violation] = []
    for x in all_states(m, k):
        for y in all_states(m, k):
            for w in compatible_weights(m, x.elements, y.elements, cap):
                if w.doubled_total == 0:
                    continue
                found += verify_piece(m, k, x.elements, y.elements, w, order, rows)
    found += verify_multiplicative(m, k, cap, order)
    logger.info("cobar comparison (%s,%s) cap %s: %s violation(s)", m, k, cap, len(found))
    return found


def compare_orders(m: int, k: int, cap: int = 1) -> list[dict]:
    """Chain-map and quasi-isomorphism outcome of ``phi`` under each product order."""
    out = []
    for order in PHI_ORDERS:
        found = verify_quasi_iso(m, k, cap, order)
        out.append(
            {
                "order": order,
                "chain_map": not any(v.rule == "chain-map" for v in found),
                "quasi_iso": not found,
                "violations": len(found),
            }
        )
    return out
