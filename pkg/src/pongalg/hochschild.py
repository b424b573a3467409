"""The small Hochschild model pairing C(m,k)[t] with Q(m,k).

A basis element ``(s, alpha, b)`` is ``t^s alpha (x) b`` with ``b`` a pure
generator of Q and ``alpha`` the C-element with the idempotents of ``b`` and
weight ``weight(b) - s*(1,...,1)``.  The bigrading is

    n = 2*Totweight(b) - cross(b)
    d = 1 - n + 2s(m - k - 1)

and the differential keeps ``s`` while raising ``n`` by one, so each line
``n + d = const`` is a chain complex.

Usage::

    from pongalg.hochschild import shh, omega_class

    shh(3, 1, 4, -1).dimension        # 1
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .bordered import (
    ClgPure,
    IdempotentState,
    b0_multiply,
    closed_under_succession,
    ideal_member,
    is_valid_pure,
)
from .checks import Violation, expect
from .complexes import ChainComplex, empty_complex, parity
from .dd import f_pure
from .pong import (
    atomic_length,
    generators_by_length,
    omega_components,
    plain_atomics,
    pure_differential,
    pure_product,
    states,
)
from .quotient import q_omega
from .strands import PongData, WeightVector, local_multiplicities

logger = logging.getLogger(__name__)


def _check_range(m: int, k: int) -> None:
    if not 0 < k < m - 1:
        raise ValueError(f"the small model needs 0 < k < m - 1, got k={k}, m={m}")


@dataclass(frozen=True, order=True)
class SBasisElement:
    s: int
    alpha: ClgPure
    b: PongData

    def __post_init__(self) -> None:
        if self.s < 0:
            raise ValueError(f"negative t-exponent {self.s}")
        expected = local_multiplicities(self.b) - WeightVector.ones(self.b.m, self.s)
        if self.alpha.weight != expected:
            raise ValueError(f"alpha weight {self.alpha.weight} does not match {expected}")
        if self.alpha.x.elements != self.b.left or self.alpha.y.elements != self.b.right:
            raise ValueError("idempotents of alpha and b differ")

    @property
    def n(self) -> int:
        return atomic_length(self.b)

    def d(self, k: int) -> int:
        return 1 - self.n + 2 * self.s * (self.b.m - k - 1)

    def __str__(self) -> str:
        t = "" if self.s == 0 else ("t" if self.s == 1 else f"t^{self.s}")
        return f"({t}{'·' if t else ''}{self.alpha}, {self.b})"


def attach(s: int, b: PongData) -> SBasisElement | None:
    """The basis element over ``b`` with t-exponent ``s``, or ``None`` when alpha vanishes."""
    if s < 0:
        return None
    x = IdempotentState.of(b.m, b.left)
    y = IdempotentState.of(b.m, b.right)
    w = local_multiplicities(b) - WeightVector.ones(b.m, s)
    if not is_valid_pure(x, y, w):
        return None
    alpha = ClgPure(x, y, w)
    if ideal_member(alpha):
        return None
    return SBasisElement(s, alpha, b)


def t_exponent(m: int, k: int, n: int, d: int) -> int | None:
    step = 2 * (m - k - 1)
    total = n + d - 1
    if total < 0 or total % step:
        return None
    return total // step


def basis_at_length(m: int, k: int, s: int, n: int) -> list[SBasisElement]:
    if n < 0:
        return []
    out = [e for b in generators_by_length(m, k, n) if (e := attach(s, b)) is not None]
    return sorted(out)


def s_basis(m: int, k: int, n: int, d: int) -> list[SBasisElement]:
    _check_range(m, k)
    s = t_exponent(m, k, n, d)
    return [] if s is None else basis_at_length(m, k, s, n)


# ---------------------------------------------------------------------------
# Differential
# ---------------------------------------------------------------------------


def d_small(e: SBasisElement) -> frozenset[SBasisElement]:
    """``(Id (x) d_Q) e + S e + e S`` with ``S = sum f(a) (x) a`` over atomics."""
    m = e.b.m
    out: list[SBasisElement] = []
    for drop, r in pure_differential(e.b):
        if drop.is_one():
            out.append(SBasisElement(e.s, e.alpha, r))
    for _, a in _atomics_ending_at(m, e.b.k, e.b.left):
        fa = f_pure(a)
        r = pure_product(a, e.b)
        if fa is None or r is None or not r[0].is_one():
            continue
        c = b0_multiply(fa, e.alpha)
        if c is not None and not ideal_member(c):
            out.append(SBasisElement(e.s, c, r[1]))
    for _, a in plain_atomics(m, e.b.right):
        fa = f_pure(a)
        r = pure_product(e.b, a)
        if fa is None or r is None or not r[0].is_one():
            continue
        c = b0_multiply(e.alpha, fa)
        if c is not None and not ideal_member(c):
            out.append(SBasisElement(e.s, c, r[1]))
    return parity(out)


@lru_cache(maxsize=None)
def _atomics_ending_at(m: int, k: int, state: tuple[int, ...]) -> tuple:
    return tuple((desc, a) for x in states(m, k) for desc, a in plain_atomics(m, x) if a.right == state)


def d_small_sum(elements) -> frozenset[SBasisElement]:
    return parity(t for e in elements for t in d_small(e))


# ---------------------------------------------------------------------------
# Homology
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShhResult:
    n: int
    d: int
    dimension: int
    basis_size: int
    representatives: tuple[frozenset, ...]
    complex: ChainComplex

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "dimension": self.dimension, "basis_size": self.basis_size}


def line_complex(m: int, k: int, s: int, n: int) -> ChainComplex:
    """Lengths ``n - 1``, ``n``, ``n + 1`` of the ``s`` line; exact homology at length ``n``."""
    basis = {-length: basis_at_length(m, k, s, length) for length in (n - 1, n, n + 1)}
    top = set(basis[-(n + 1)])
    return ChainComplex.build(
        basis, lambda e: () if e in top else d_small(e), name=f"S({m},{k}) s={s} n={n}"
    )


@lru_cache(maxsize=None)
def shh(m: int, k: int, n: int, d: int) -> ShhResult:
    _check_range(m, k)
    s = t_exponent(m, k, n, d)
    if s is None:
        return ShhResult(n, d, 0, 0, (), empty_complex())
    cplx = line_complex(m, k, s, n)
    summary = cplx.homology(representatives=True)
    reps = tuple((summary.representatives or {}).get(-n, []))
    logger.info("sHH^{%s,%s}(%s,%s): %s", n, d, m, k, summary.dimensions.get(-n, 0))
    return ShhResult(n, d, summary.dimensions.get(-n, 0), cplx.size(-n), reps, cplx)


# ---------------------------------------------------------------------------
# The class (t, Omega)
# ---------------------------------------------------------------------------


def omega_terms(m: int, k: int, x) -> list[SBasisElement]:
    """``(t I_x, Omega I_x)`` split over the generators of ``Omega I_x``."""
    out = []
    for g in q_omega(m, k).restrict(left=tuple(x)).generators():
        e = attach(1, g)
        if e is None:
            raise ValueError(f"Omega component {g} has no t-partner")
        out.append(e)
    return out


def omega_class(m: int, k: int) -> frozenset[SBasisElement]:
    _check_range(m, k)
    return parity(e for x in states(m, k) for e in omega_terms(m, k, x))


def check_vanishing(m: int, k: int, extra: int = 2) -> list[Violation]:
    """sHH^{n,-1} vanishes off ``{2, 2m-2k}`` and sHH^{n,-2} off ``{3, 2m-2k+1}``."""
    top = 2 * m - 2 * k
    found: list[Violation] = []
    for n in range(0, top + extra + 1):
        for d, allowed in ((-1, {2, top}), (-2, {3, top + 1})):
            if n in allowed:
                continue
            dim = shh(m, k, n, d).dimension
            found += expect(dim == 0, f"sHH^{{{n},{d}}}({m},{k})", "vanishing", f"dimension {dim}")
    return found


def check_omega_generator(m: int, k: int) -> list[Violation]:
    """sHH^{2m-2k,-1} is one-dimensional and (t, Omega) represents its generator."""
    n = 2 * m - 2 * k
    subject = f"sHH^{{{n},-1}}({m},{k})"
    result = shh(m, k, n, -1)
    found = expect(result.dimension == 1, subject, "dimension", f"dimension {result.dimension}")
    cls = omega_class(m, k)
    found += expect(not d_small_sum(cls), subject, "omega-cycle", "(t, Omega) is not closed")
    if result.dimension and not d_small_sum(cls):
        found += expect(
            not result.complex.is_boundary(cls, -n), subject, "omega-class", "(t, Omega) is a boundary"
        )
    return found


def check_closure(m: int, k: int) -> list[Violation]:
    """A partial sum of ``(t, Omega I_x)`` is closed exactly when its states are closed under succession."""
    all_x = states(m, k)
    found: list[Violation] = []
    for size in range(1, len(all_x) + 1):
        for chosen in itertools.combinations(all_x, size):
            closed = not d_small_sum(e for x in chosen for e in omega_terms(m, k, x))
            succession = closed_under_succession(IdempotentState.of(m, x) for x in chosen)
            found += expect(
                closed == succession == (size == len(all_x)),
                f"S({m},{k}) states={list(chosen)}",
                "closure",
                f"closed={closed}, succession-closed={succession}",
            )
    return found


def omega_pm_basis(m: int) -> dict[str, list[SBasisElement]]:
    """For k = 1: the elements ``(t, X_{0,i} X_{i,m})`` and ``(t, X_{i,m} X_{0,i})``."""
    out: dict[str, list[SBasisElement]] = defaultdict(list)
    for x in states(m, 1):
        for side, gens in omega_components(m, 1, x).items():
            for g in gens:
                e = attach(1, g)
                if e is not None:
                    out[side].append(e)
    return {side: sorted(v) for side, v in out.items()}


def check_k1_basis(m: int) -> list[Violation]:
    """For k = 1 the bidegree ``(2m-2, -1)`` is spanned by the 2m-2 elements Omega^{+-}_i and D has a one-dimensional kernel there."""
    n = 2 * m - 2
    subject = f"S^{{{n},-1}}({m},1)"
    basis = set(s_basis(m, 1, n, -1))
    pm = omega_pm_basis(m)
    named = set(pm.get("minus", [])) | set(pm.get("plus", []))
    found = expect(basis == named, subject, "omega-basis", f"{len(basis)} basis elements, {len(named)} named")
    found += expect(len(named) == 2 * m - 2, subject, "omega-basis", f"{len(named)} elements named")
    for e in sorted(named):
        found += expect(bool(d_small(e)), subject, "omega-basis", f"D{e} vanishes")
    cplx = line_complex(m, 1, 1, n)
    kernel = cplx.size(-n) - cplx.rank(-n)
    found += expect(kernel == 1, subject, "kernel", f"kernel has dimension {kernel}")
    return found
