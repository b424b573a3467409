"""Weight pieces ``I_x A(w) I_y`` of P(m,k) and Q(m,k) as chain complexes."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from .complexes import ChainComplex
from .pong import Monomial, Term, enumerate_generators, pure_differential
from .strands import WeightVector, cross, local_multiplicities

logger = logging.getLogger(__name__)

TAGS = ("P", "Q")


def compatible_triple(m: int, x: tuple[int, ...], y: tuple[int, ...], w: WeightVector) -> bool:
    """``2 w_i + #(x_t < i) + #(y_t < i)`` is even for every ``i``."""
    if len(x) != len(y) or w.m != m:
        return False
    return all(
        (w.doubled[i - 1] + sum(1 for t in x if t < i) + sum(1 for t in y if t < i)) % 2 == 0
        for i in range(1, m + 1)
    )


def interleaved(x: tuple[int, ...], y: tuple[int, ...]) -> bool:
    """``max(x_s, y_s) < min(x_{s+1}, y_{s+1})`` for consecutive ``s``."""
    return all(max(x[s], y[s]) < min(x[s + 1], y[s + 1]) for s in range(len(x) - 1))


@dataclass(frozen=True)
class WeightPieceBasis:
    tag: str
    m: int
    k: int
    x: tuple[int, ...]
    y: tuple[int, ...]
    w: WeightVector
    elements: tuple[Term, ...]

    def __len__(self) -> int:
        return len(self.elements)

    @staticmethod
    def degree(term: Term) -> int:
        return cross(term[1])

    def by_degree(self) -> dict[int, list[Term]]:
        out: dict[int, list[Term]] = {}
        for term in self.elements:
            out.setdefault(self.degree(term), []).append(term)
        return out

    @property
    def key(self) -> tuple:
        return (self.tag, self.m, self.k, self.x, self.y, self.w.doubled)


@lru_cache(maxsize=None)
def enumerate_basis(
    tag: str,
    m: int,
    k: int,
    x: tuple[int, ...],
    y: tuple[int, ...],
    w: WeightVector,
    window_multiplier: int = 1,
) -> WeightPieceBasis:
    """Complete basis of the ``(x, y, w)`` piece; empty for incompatible triples."""
    if tag not in TAGS:
        raise ValueError(f"unknown algebra tag {tag!r}")
    if len(x) != k or len(y) != k:
        raise ValueError(f"idempotents must have {k} elements")
    if not w.is_nonnegative() or not compatible_triple(m, x, y, w):
        return WeightPieceBasis(tag, m, k, x, y, w, ())
    elements: list[Term] = []
    for g in enumerate_generators(m, x, y, w, window_multiplier):
        rest = w - local_multiplicities(g)
        if tag == "Q":
            if rest.doubled_total == 0:
                elements.append((Monomial.one(m), g))
        elif rest.is_integral():
            elements.append((Monomial.from_weight(rest), g))
    logger.debug("piece %s(%s,%s) x=%s y=%s w=%s: %s", tag, m, k, x, y, w, len(elements))
    return WeightPieceBasis(tag, m, k, x, y, w, tuple(sorted(elements)))


def term_differential(term: Term, quotient: bool) -> list[Term]:
    mono, g = term
    out = []
    for drop, r in pure_differential(g):
        if quotient and not drop.is_one():
            continue
        out.append((mono * drop, r))
    return out


def piece_complex(basis: WeightPieceBasis) -> ChainComplex:
    quotient = basis.tag == "Q"
    return ChainComplex.build(
        basis.by_degree(),
        lambda term: term_differential(term, quotient),
        name=f"{basis.tag}{basis.x}{basis.y}{basis.w}",
    )


def piece(tag: str, m: int, k: int, x, y, w: WeightVector) -> ChainComplex:
    return piece_complex(enumerate_basis(tag, m, k, tuple(x), tuple(y), w))


def is_saturated(tag: str, m: int, k: int, x, y, w: WeightVector, multiplier: int = 2) -> bool:
    """The basis does not grow when the enumeration window is widened."""
    narrow = enumerate_basis(tag, m, k, tuple(x), tuple(y), w)
    wide = enumerate_basis(tag, m, k, tuple(x), tuple(y), w, multiplier)
    return narrow.elements == wide.elements
