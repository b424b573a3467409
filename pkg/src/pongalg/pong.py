"""The pong algebra P(m,k) over F2[v_1..v_m].

Elements are GF(2) sums of ``(Monomial, PongData)`` terms.  The product
stacks the left factor above the right one; the differential resolves
crossings that drop the crossing number by exactly one.

Usage::

    from pongalg.pong import PongElement, omega
    from pongalg.strands import parse_pong

    a = PongElement.generator(parse_pong("m=4 k=2 ((1,-2),(2,1))"))
    a.d()                 # v1*((1,3),(2,1)) + v2*((1,0),(2,3))
    omega(4, 2).d()       # 0
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import ClassVar, Iterable, Iterator

from .strands import (
    PongData,
    WeightVector,
    compose,
    cross,
    crossings,
    fold,
    fold_class,
    local_multiplicities,
    resolve,
    strand_weight,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Monomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: tuple[int, ...]

    @classmethod
    def one(cls, m: int) -> Monomial:
        return cls((0,) * m)

    @classmethod
    def v(cls, m: int, *indices: int) -> Monomial:
        exps = [0] * m
        for i in indices:
            exps[i - 1] += 1
        return cls(tuple(exps))

    @classmethod
    def from_weight(cls, w: WeightVector) -> Monomial:
        if not w.is_integral() or not w.is_nonnegative():
            raise ValueError(f"weight {w} is not a monomial weight")
        return cls(tuple(c // 2 for c in w.doubled))

    def is_one(self) -> bool:
        return not any(self.exponents)

    def weight(self) -> WeightVector:
        return WeightVector(tuple(2 * e for e in self.exponents))

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __str__(self) -> str:
        parts = [f"v{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(self.exponents, 1) if e]
        return "*".join(parts) if parts else "1"


Term = tuple[Monomial, PongData]


# ---------------------------------------------------------------------------
# Generator-level operations
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def pure_differential(g: PongData) -> tuple[Term, ...]:
    """Resolutions of ``g`` that lower the crossing number by exactly one."""
    target = cross(g) - 1
    out = []
    for c in sorted(crossings(g)):
        r = resolve(g, c)
        if cross(r) == target:
            drop = local_multiplicities(g) - local_multiplicities(r)
            out.append((Monomial.from_weight(drop), r))
    return tuple(out)


@lru_cache(maxsize=None)
def pure_product(a: PongData, b: PongData) -> Term | None:
    """``a`` stacked above ``b``, or ``None`` when the product vanishes."""
    if a.m != b.m or a.right != b.sources:
        return None
    comp = compose(a, b)
    if cross(comp) != cross(a) + cross(b):
        return None
    defect = local_multiplicities(a) + local_multiplicities(b) - local_multiplicities(comp)
    return Monomial.from_weight(defect), comp


def ngr(g: PongData) -> int:
    return cross(g) - local_multiplicities(g).doubled_total


def atomic_length(g: PongData) -> int:
    """``2*Totweight - cross``; the number of atomic factors of ``g``."""
    return -ngr(g)


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


def _reduce(terms: Iterable[Term]) -> frozenset[Term]:
    return frozenset(t for t, n in Counter(terms).items() if n % 2)


@dataclass(frozen=True)
class PongElement:
    m: int
    k: int
    terms: frozenset[Term]

    quotient: ClassVar[bool] = False

    def __post_init__(self) -> None:
        for mono, g in self.terms:
            if g.m != self.m or g.k != self.k:
                raise ValueError(f"term {g} does not live in ({self.m},{self.k})")
            if self.quotient and not mono.is_one():
                raise ValueError(f"quotient element with monomial {mono}")

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_terms(cls, m: int, k: int, terms: Iterable[Term]) -> PongElement:
        reduced = _reduce(terms)
        if cls.quotient:
            reduced = frozenset(t for t in reduced if t[0].is_one())
        return cls(m, k, reduced)

    @classmethod
    def zero(cls, m: int, k: int) -> PongElement:
        return cls(m, k, frozenset())

    @classmethod
    def generator(cls, g: PongData, mono: Monomial | None = None) -> PongElement:
        return cls.from_terms(g.m, g.k, [(mono or Monomial.one(g.m), g)])

    @classmethod
    def from_generators(cls, m: int, k: int, gens: Iterable[PongData]) -> PongElement:
        return cls.from_terms(m, k, ((Monomial.one(m), g) for g in gens))

    def _like(self, terms: Iterable[Term]) -> PongElement:
        return type(self).from_terms(self.m, self.k, terms)

    # -- algebra -------------------------------------------------------------

    def _check_ambient(self, other: PongElement) -> None:
        if (self.m, self.k) != (other.m, other.k):
            raise ValueError(
                f"ambient mismatch: ({self.m},{self.k}) vs ({other.m},{other.k})"
            )

    def __add__(self, other: PongElement) -> PongElement:
        self._check_ambient(other)
        return self._like(itertools.chain(self.terms, other.terms))

    __sub__ = __add__

    def __mul__(self, other: PongElement) -> PongElement:
        return multiply(self, other)

    def times_monomial(self, mono: Monomial) -> PongElement:
        return self._like((mono * m, g) for m, g in self.terms)

    def d(self) -> PongElement:
        return differential(self)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[Term]:
        return sorted(self.terms, key=lambda t: (t[1], t[0]))

    def generators(self) -> list[PongData]:
        return sorted({g for _, g in self.terms})

    def restrict(self, left: Iterable[int] | None = None, right: Iterable[int] | None = None) -> PongElement:
        """``Idemp{left} * self * Idemp{right}``."""
        lt = tuple(sorted(left)) if left is not None else None
        rt = tuple(sorted(right)) if right is not None else None
        return self._like(
            t for t in self.terms
            if (lt is None or t[1].left == lt) and (rt is None or t[1].right == rt)
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            (str(g) if mono.is_one() else f"{mono}*{g}") for mono, g in self.sorted_terms()
        )


def multiply(a: PongElement, b: PongElement) -> PongElement:
    a._check_ambient(b)
    out: list[Term] = []
    for ma, ga in a.terms:
        for mb, gb in b.terms:
            r = pure_product(ga, gb)
            if r is None:
                continue
            mono = ma * mb * r[0]
            if (a.quotient or b.quotient) and not mono.is_one():
                continue
            out.append((mono, r[1]))
    cls = type(a) if a.quotient else type(b)
    return cls.from_terms(a.m, a.k, out)


def differential(a: PongElement) -> PongElement:
    out: list[Term] = []
    for mono, g in a.terms:
        for drop, r in pure_differential(g):
            out.append((mono * drop, r))
    return a._like(out)


def gradings(a: PongElement) -> tuple[int, WeightVector, int]:
    """``(cross, weight, Ngr)`` of a homogeneous element."""
    seen = {(cross(g), mono.weight() + local_multiplicities(g)) for mono, g in a.terms}
    if len(seen) != 1:
        raise ValueError(f"not homogeneous: {a}")
    c, w = seen.pop()
    return c, w, c - w.doubled_total


# ---------------------------------------------------------------------------
# Idempotents and U
# ---------------------------------------------------------------------------


def states(m: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(1, m), k))


def idempotent(m: int, x: Iterable[int], cls: type[PongElement] = PongElement) -> PongElement:
    g = PongData.idempotent(m, x)
    return cls.generator(g)


def identity_element(m: int, k: int, cls: type[PongElement] = PongElement) -> PongElement:
    return cls.from_generators(m, k, (PongData.idempotent(m, x) for x in states(m, k)))


def u_element(m: int, k: int, j: int, over: Iterable[tuple[int, ...]]) -> PongElement:
    """``v_j`` times the idempotents of ``over``."""
    mono = Monomial.v(m, j)
    return PongElement.from_terms(m, k, ((mono, PongData.idempotent(m, x)) for x in set(over)))


def left_states(a: PongElement) -> set[tuple[int, ...]]:
    return {g.left for _, g in a.terms}


# ---------------------------------------------------------------------------
# Atomic generators
# ---------------------------------------------------------------------------

KINDS = ("X", "R", "L")


@dataclass(frozen=True, order=True)
class AtomicDescriptor:
    """``X_{lo,hi}``, ``R_{lo,hi}`` or ``L_{hi,lo}``; optionally calligraphic."""

    m: int
    kind: str
    lo: int
    hi: int
    calligraphic: bool = False
    left: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown atomic kind {self.kind!r}")
        if self.kind == "X":
            if not (0 <= self.lo < self.hi <= self.m) or (self.lo, self.hi) == (0, self.m):
                raise ValueError(f"X_{{{self.lo},{self.hi}}} out of range for m={self.m}")
        elif not (1 <= self.lo < self.hi <= self.m - 1):
            raise ValueError(f"{self.kind} endpoints {self.lo},{self.hi} out of range for m={self.m}")

    def at(self, left: Iterable[int]) -> AtomicDescriptor:
        return AtomicDescriptor(self.m, self.kind, self.lo, self.hi, self.calligraphic, tuple(sorted(left)))

    def data(self, state: tuple[int, ...]) -> PongData | None:
        """The pong datum of this atomic at left idempotent ``state``, if admissible."""
        m, lo, hi = self.m, self.lo, self.hi
        occupied = set(state)
        moves: dict[int, int]
        if self.kind == "X":
            if lo == 0:
                between, moves = range(1, hi), {hi: 1 - hi}
            elif hi == m:
                between, moves = range(lo + 1, m), {lo: 2 * m - 1 - lo}
            else:
                between, moves = range(lo + 1, hi), {lo: hi, hi: lo}
        elif self.kind == "R":
            if hi in occupied:
                return None
            between, moves = range(lo + 1, hi), {lo: hi}
        else:
            if lo in occupied:
                return None
            between, moves = range(lo + 1, hi), {hi: lo}
        if not set(moves) <= occupied:
            return None
        if not self.calligraphic and not set(between) <= occupied:
            return None
        return PongData(m, state, tuple(moves.get(s, s) for s in state))

    def __str__(self) -> str:
        name = ("𝒳" if self.calligraphic else "X") if self.kind == "X" else self.kind
        if self.calligraphic and self.kind != "X":
            name = "𝓡" if self.kind == "R" else "𝓛"
        pair = f"{self.hi},{self.lo}" if self.kind == "L" else f"{self.lo},{self.hi}"
        suffix = f"·I{{{','.join(map(str, self.left))}}}" if self.left is not None else ""
        return f"{name}_{{{pair}}}{suffix}"


def all_descriptors(m: int, calligraphic: bool = False) -> list[AtomicDescriptor]:
    out = [
        AtomicDescriptor(m, "X", i, j, calligraphic)
        for i in range(0, m)
        for j in range(i + 1, m + 1)
        if (i, j) != (0, m)
    ]
    for kind in ("R", "L"):
        out.extend(
            AtomicDescriptor(m, kind, i, j, calligraphic) for i in range(1, m) for j in range(i + 1, m)
        )
    return out


def atomic_data(desc: AtomicDescriptor, k: int) -> list[PongData]:
    chosen = [desc.left] if desc.left is not None else states(desc.m, k)
    out = []
    for state in chosen:
        if len(state) != k:
            raise ValueError(f"state {state} does not have {k} elements")
        g = desc.data(tuple(state))
        if g is not None:
            out.append(g)
    return out


def atomic(desc: AtomicDescriptor, k: int) -> PongElement:
    return PongElement.from_generators(desc.m, k, atomic_data(desc, k))


@lru_cache(maxsize=None)
def plain_atomics(m: int, state: tuple[int, ...]) -> tuple[tuple[AtomicDescriptor, PongData], ...]:
    """Every plain atomic generator with left idempotent ``state``."""
    out = []
    for desc in all_descriptors(m):
        g = desc.data(state)
        if g is not None:
            out.append((desc.at(state), g))
    return tuple(out)


def is_atomic(g: PongData) -> bool:
    return any(a == g for _, a in plain_atomics(g.m, g.left))


def describe_atomic(g: PongData) -> AtomicDescriptor | None:
    for desc, a in plain_atomics(g.m, g.left):
        if a == g:
            return desc
    return None


# ---------------------------------------------------------------------------
# Omega
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def omega(m: int, k: int) -> PongElement:
    """``sum_i [X_{0,i}, X_{i,m}]`` with calligraphic factors."""
    if not 0 <= k < m:
        raise ValueError(f"omega needs 0 <= k < m, got k={k}, m={m}")
    if k == 0:
        return PongElement.generator(PongData.idempotent(m, ()), Monomial(tuple([1] * m)))
    total = PongElement.zero(m, k)
    for i in range(1, m):
        low = atomic(AtomicDescriptor(m, "X", 0, i, True), k)
        high = atomic(AtomicDescriptor(m, "X", i, m, True), k)
        total = total + low * high + high * low
    return total


def omega_components(m: int, k: int, state: tuple[int, ...]) -> dict[str, list[PongData]]:
    """The pieces ``X_{0,i}X_{i,m}`` ("minus") and ``X_{i,m}X_{0,i}`` ("plus") at ``state``."""
    out: dict[str, list[PongData]] = {"minus": [], "plus": []}
    for i in range(1, m):
        low = AtomicDescriptor(m, "X", 0, i, True).data(state)
        if low is None:
            continue
        high = AtomicDescriptor(m, "X", i, m, True).data(low.right)
        if high is not None:
            r = pure_product(low, high)
            if r is not None and r[0].is_one():
                out["minus"].append(r[1])
        high_first = AtomicDescriptor(m, "X", i, m, True).data(state)
        low_after = AtomicDescriptor(m, "X", 0, i, True).data(high_first.right) if high_first else None
        if high_first is not None and low_after is not None:
            r = pure_product(high_first, low_after)
            if r is not None and r[0].is_one():
                out["plus"].append(r[1])
    return out


# ---------------------------------------------------------------------------
# Factorization into atomics
# ---------------------------------------------------------------------------


def _quotient_by(a: PongData, g: PongData) -> PongData:
    """The unique ``h`` with ``compose(a, h) == g`` on the orbit level."""
    pairs = []
    for s, n in zip(a.sources, a.targets):
        t, gamma = fold(a.m, n)
        pairs.append((t, gamma.inverse()(g.target(s))))
    return PongData.from_pairs(a.m, pairs)


@lru_cache(maxsize=None)
def factor_atomic(g: PongData) -> tuple[PongData, ...]:
    """Pong data of atomic factors whose ordered product is exactly ``g``.

    ``factor_descriptors`` gives the same factors as descriptors.
    """
    if g.is_idempotent():
        return ()
    for _, a in plain_atomics(g.m, g.left):
        if a == g:
            return (g,)
    for _, a in plain_atomics(g.m, g.left):
        rest = _quotient_by(a, g)
        r = pure_product(a, rest)
        if r is None or r != (Monomial.one(g.m), g):
            continue
        try:
            return (a,) + factor_atomic(rest)
        except ValueError:
            continue
    raise ValueError(f"no atomic factorization found for {g}")


def factor_descriptors(g: PongData) -> tuple[AtomicDescriptor, ...]:
    return tuple(describe_atomic(a) for a in factor_atomic(g))


def product_of(factors: Iterable[PongData]) -> PongElement:
    items = list(factors)
    if not items:
        raise ValueError("empty product")
    out = PongElement.generator(items[0])
    for g in items[1:]:
        out = out * PongElement.generator(g)
    return out


# ---------------------------------------------------------------------------
# Generator enumeration
# ---------------------------------------------------------------------------


def _strand_candidates(m: int, s: int, cap: tuple[int, ...], reach: int, allowed: set[int]):
    for n in range(s - reach, s + reach + 1):
        if fold_class(m, n) not in allowed:
            continue
        w = strand_weight(m, s, n)
        if all(a <= b for a, b in zip(w, cap)):
            yield n, w


def enumerate_generators(
    m: int,
    left: tuple[int, ...],
    right: tuple[int, ...] | None,
    cap: WeightVector,
    window_multiplier: int = 1,
) -> list[PongData]:
    """All pong data from ``left`` (to ``right``) with weight componentwise <= ``cap``.

    A strand from ``s`` to ``n`` passes ``|n - s|`` half-integer levels, so
    its doubled weight bounds the travel distance.
    """
    reach = cap.doubled_total * window_multiplier
    allowed = set(right) if right is not None else set(range(1, m))
    found: list[PongData] = []

    def extend(idx: int, remaining: tuple[int, ...], used: set[int], chosen: list[int]) -> None:
        if idx == len(left):
            found.append(PongData(m, tuple(left), tuple(chosen)))
            return
        s = left[idx]
        for n, w in _strand_candidates(m, s, remaining, reach, allowed - used):
            extend(
                idx + 1,
                tuple(a - b for a, b in zip(remaining, w)),
                used | {fold_class(m, n)},
                chosen + [n],
            )

    extend(0, cap.doubled, set(), [])
    return sorted(found)


@lru_cache(maxsize=None)
def generators_by_length(m: int, k: int, n: int) -> frozenset[PongData]:
    """Pure generators that are products of exactly ``n`` atomic generators."""
    if n == 0:
        return frozenset(PongData.idempotent(m, x) for x in states(m, k))
    out = set()
    for g in generators_by_length(m, k, n - 1):
        for _, a in plain_atomics(m, g.right):
            r = pure_product(g, a)
            if r is not None and r[0].is_one():
                out.add(r[1])
    logger.debug("generators of atomic length %s in P(%s,%s): %s", n, m, k, len(out))
    return frozenset(out)
