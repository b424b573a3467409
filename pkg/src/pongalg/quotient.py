"""The quotient Q(m,k) = P(m,k)/(v_1 = ... = v_m = 0) and the cones Q', P'.

Q' and P' are realized as the mapping cone of multiplication by Omega
from the ``w - (1,...,1)`` piece into the ``w`` piece.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import ClassVar

from .complexes import ChainComplex, HomologySummary, empty_complex
from .pieces import enumerate_basis, term_differential
from .pong import PongElement, Term, differential, multiply, omega, pure_product
from .strands import WeightVector

logger = logging.getLogger(__name__)


class QuotElement(PongElement):
    """Element of Q(m,k): every term has the trivial monomial."""

    quotient: ClassVar[bool] = True


def project_to_q(a: PongElement) -> QuotElement:
    return QuotElement.from_terms(a.m, a.k, (t for t in a.terms if t[0].is_one()))


def lift_to_p(a: QuotElement) -> PongElement:
    return PongElement.from_terms(a.m, a.k, a.terms)


def q_differential(a: QuotElement) -> QuotElement:
    return project_to_q(differential(a))


def q_multiply(a: QuotElement, b: QuotElement) -> QuotElement:
    return project_to_q(multiply(a, b))


def q_omega(m: int, k: int) -> QuotElement:
    return project_to_q(omega(m, k))


# ---------------------------------------------------------------------------
# Cones
# ---------------------------------------------------------------------------

CONE_KINDS = {"Q'": "Q", "P'": "P"}


@dataclass
class ConeComplexPiece:
    kind: str
    m: int
    k: int
    x: tuple[int, ...]
    y: tuple[int, ...]
    w: WeightVector
    side: str
    complex: ChainComplex

    def homology(self) -> HomologySummary:
        return self.complex.homology()


def _omega_times(term: Term, om: PongElement, side: str, quotient: bool) -> list[Term]:
    mono, g = term
    out = []
    for om_mono, om_g in om.terms:
        r = pure_product(om_g, g) if side == "left" else pure_product(g, om_g)
        if r is None:
            continue
        total = mono * om_mono * r[0]
        if quotient and not total.is_one():
            continue
        out.append((total, r[1]))
    return out


def cone_piece(
    kind: str, m: int, k: int, x, y, w: WeightVector, side: str = "left"
) -> ConeComplexPiece:
    """Cone of ``Omega *`` (or ``* Omega``) from the ``w - 1`` piece to the ``w`` piece."""
    if kind not in CONE_KINDS:
        raise ValueError(f"unknown cone kind {kind!r}; expected one of {sorted(CONE_KINDS)}")
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    tag = CONE_KINDS[kind]
    quotient = tag == "Q"
    x, y = tuple(x), tuple(y)
    if not w.is_nonnegative():
        return ConeComplexPiece(kind, m, k, x, y, w, side, empty_complex(kind))
    base = enumerate_basis(tag, m, k, x, y, w)
    shifted_w = w - WeightVector.ones(m)
    shifted = (
        enumerate_basis(tag, m, k, x, y, shifted_w) if shifted_w.is_nonnegative() else None
    )
    om = omega(m, k)
    om = om.restrict(left=x) if side == "left" else om.restrict(right=y)
    shift = 2 * k + 1

    basis: dict[int, list[tuple]] = {}
    for term in base.elements:
        basis.setdefault(base.degree(term), []).append(("base",) + term)
    if shifted is not None:
        for term in shifted.elements:
            basis.setdefault(shifted.degree(term) + shift, []).append(("shift",) + term)

    def d(label: tuple) -> list[tuple]:
        part, mono, g = label
        inner = [(part,) + t for t in term_differential((mono, g), quotient)]
        if part == "shift":
            inner.extend(("base",) + t for t in _omega_times((mono, g), om, side, quotient))
        return inner

    cplx = ChainComplex.build(basis, d, name=f"{kind}{x}{y}{w}")
    return ConeComplexPiece(kind, m, k, x, y, w, side, cplx)

