"""Strand combinatorics below the algebra layer.

Pong data are lifted partial permutations: ``k`` strands leave the
fundamental domain ``{1..m-1}`` and travel along the integers, with the
group ``G_m`` generated by the reflections at ``1/2`` and ``m - 1/2``
folding every integer back onto a source.

Usage::

    from pongalg.strands import parse_pong, local_multiplicities, crossings

    d = parse_pong("m=4 k=2 ((1,-2),(2,1))")
    local_multiplicities(d)      # (1,1,1/2,0)
    len(crossings(d))            # 2
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable


# ---------------------------------------------------------------------------
# The group G_m
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class GroupElement:
    """``x -> x + P*offset`` or ``x -> 1 - x + P*offset`` with ``P = 2m - 2``."""

    m: int
    reflect: bool
    offset: int

    @property
    def period(self) -> int:
        return 2 * self.m - 2

    @classmethod
    def identity(cls, m: int) -> GroupElement:
        return cls(m, False, 0)

    def constant(self) -> int:
        return (1 if self.reflect else 0) + self.period * self.offset

    def __call__(self, x: int) -> int:
        return (1 - x if self.reflect else x) + self.period * self.offset

    def __mul__(self, other: GroupElement) -> GroupElement:
        """Composite ``self o other`` (apply ``other`` first)."""
        if other.m != self.m:
            raise ValueError("group elements for different m")
        sign = -1 if self.reflect else 1
        c = sign * other.constant() + self.constant()
        reflect = self.reflect != other.reflect
        return GroupElement(self.m, reflect, (c - (1 if reflect else 0)) // self.period)

    def inverse(self) -> GroupElement:
        if self.reflect:
            return self
        return GroupElement(self.m, False, -self.offset)


def wall_reflections(m: int) -> tuple[GroupElement, GroupElement]:
    """The generating reflections at ``1/2`` and ``m - 1/2``."""
    # 2m - 1 - x = 1 - x + P
    return GroupElement(m, True, 0), GroupElement(m, True, 1)


def fold(m: int, n: int) -> tuple[int, GroupElement]:
    """Return ``(cls, gamma)`` with ``cls`` in ``{1..m-1}`` and ``gamma(cls) == n``."""
    if m < 2:
        raise ValueError(f"m must be at least 2, got {m}")
    period = 2 * m - 2
    r = n % period
    if 1 <= r <= m - 1:
        return r, GroupElement(m, False, (n - r) // period)
    c = (1 - n) % period
    return c, GroupElement(m, True, (n - 1 + c) // period)


def fold_class(m: int, n: int) -> int:
    return fold(m, n)[0]


# ---------------------------------------------------------------------------
# Weight vectors
# ---------------------------------------------------------------------------


def _half(value: int | Fraction | float | str) -> int:
    doubled = Fraction(value) * 2
    if doubled.denominator != 1:
        raise ValueError(f"{value} is not a half-integer")
    return int(doubled)


@dataclass(frozen=True, order=True)
class WeightVector:
    """Half-integer vector, stored doubled so arithmetic stays exact."""

    doubled: tuple[int, ...]

    @classmethod
    def of(cls, *values: int | Fraction | float | str) -> WeightVector:
        return cls(tuple(_half(v) for v in values))

    @classmethod
    def zero(cls, m: int) -> WeightVector:
        return cls((0,) * m)

    @classmethod
    def ones(cls, m: int, times: int = 1) -> WeightVector:
        return cls((2 * times,) * m)

    @classmethod
    def unit(cls, m: int, i: int) -> WeightVector:
        """Weight of ``v_i`` (1-based)."""
        return cls(tuple(2 if j == i else 0 for j in range(1, m + 1)))

    @property
    def m(self) -> int:
        return len(self.doubled)

    def halves(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, 2) for c in self.doubled)

    def __getitem__(self, i: int) -> Fraction:
        """Component ``weight_i`` (1-based)."""
        return Fraction(self.doubled[i - 1], 2)

    @property
    def doubled_total(self) -> int:
        return sum(self.doubled)

    @property
    def total(self) -> Fraction:
        return Fraction(self.doubled_total, 2)

    def is_integral(self) -> bool:
        return all(c % 2 == 0 for c in self.doubled)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.doubled)

    def within(self, cap: WeightVector) -> bool:
        """Componentwise ``self <= cap``."""
        return all(a <= b for a, b in zip(self.doubled, cap.doubled))

    def __add__(self, other: WeightVector) -> WeightVector:
        _same_length(self, other)
        return WeightVector(tuple(a + b for a, b in zip(self.doubled, other.doubled)))

    def __sub__(self, other: WeightVector) -> WeightVector:
        _same_length(self, other)
        return WeightVector(tuple(a - b for a, b in zip(self.doubled, other.doubled)))

    def scaled(self, factor: int) -> WeightVector:
        return WeightVector(tuple(factor * c for c in self.doubled))

    def __str__(self) -> str:
        return "(" + ",".join(str(h) for h in self.halves()) + ")"

    def to_json(self) -> list[str]:
        return [str(h) for h in self.halves()]


def _same_length(a: WeightVector, b: WeightVector) -> None:
    if a.m != b.m:
        raise ValueError(f"weight length mismatch: {a.m} vs {b.m}")


# ---------------------------------------------------------------------------
# Pong data
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class PongData:
    """Sources in the fundamental domain with integer targets.

    ``left`` is the source set (top of the diagram), ``right`` the folded
    target set (bottom).
    """

    m: int
    sources: tuple[int, ...]
    targets: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"m must be at least 2, got {self.m}")
        if len(self.sources) != len(self.targets):
            raise ValueError("sources and targets differ in length")
        if list(self.sources) != sorted(set(self.sources)):
            raise ValueError(f"sources must be strictly increasing: {self.sources}")
        if any(not 1 <= s <= self.m - 1 for s in self.sources):
            raise ValueError(f"sources must lie in 1..{self.m - 1}: {self.sources}")
        folded = [fold_class(self.m, t) for t in self.targets]
        if len(set(folded)) != len(folded):
            raise ValueError(f"targets fold onto the same position: {self.targets}")

    @classmethod
    def from_pairs(cls, m: int, pairs: Iterable[tuple[int, int]]) -> PongData:
        ordered = sorted(pairs)
        return cls(m, tuple(s for s, _ in ordered), tuple(t for _, t in ordered))

    @classmethod
    def idempotent(cls, m: int, state: Iterable[int]) -> PongData:
        s = tuple(sorted(state))
        return cls(m, s, s)

    @property
    def k(self) -> int:
        return len(self.sources)

    @property
    def left(self) -> tuple[int, ...]:
        return self.sources

    @property
    def right(self) -> tuple[int, ...]:
        return tuple(sorted(fold_class(self.m, t) for t in self.targets))

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.sources, self.targets))

    def target(self, s: int) -> int:
        try:
            return self.targets[self.sources.index(s)]
        except ValueError:
            raise ValueError(f"source not in domain: {s}") from None

    def is_idempotent(self) -> bool:
        return self.sources == self.targets

    def __str__(self) -> str:
        return "(" + ",".join(f"({s},{t})" for s, t in self.pairs()) + ")"


_PONG_RE = re.compile(r"^\s*m\s*=\s*(\d+)\s+k\s*=\s*(\d+)\s+(.*)$")
_PAIR_RE = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_pong(text: str) -> PongData:
    """Parse ``"m=4 k=2 ((1,-2),(2,1))"``."""
    match = _PONG_RE.match(text)
    if not match:
        raise ValueError(f"expected 'm=<m> k=<k> ((s,t),...)', got {text!r}")
    m, k, body = int(match.group(1)), int(match.group(2)), match.group(3)
    pairs = [(int(a), int(b)) for a, b in _PAIR_RE.findall(body)]
    if len(pairs) != k:
        raise ValueError(f"expected {k} strand(s), found {len(pairs)}")
    return PongData.from_pairs(m, pairs)


def format_pong(d: PongData) -> str:
    return f"m={d.m} k={d.k} {d}"


def lift_apply(d: PongData, n: int) -> int:
    """Equivariant lift: ``gamma * f(s)`` where ``(s, gamma) = fold(n)``."""
    s, gamma = fold(d.m, n)
    if s not in d.sources:
        raise ValueError(f"source not in domain: {n} folds to {s}")
    return gamma(d.target(s))


# ---------------------------------------------------------------------------
# Local multiplicities
# ---------------------------------------------------------------------------


def _lifts_between(c: int, lo2: int, hi2: int, modulus: int) -> int:
    """Count ``q`` with ``lo2 < c + modulus*q < hi2``."""
    return max(0, (hi2 - c - 1) // modulus - (lo2 - c) // modulus)


def strand_weight(m: int, s: int, n: int) -> tuple[int, ...]:
    """Doubled multiplicities of the lifted strand from ``s`` to ``n``."""
    lo2, hi2 = 2 * min(s, n), 2 * max(s, n)
    modulus = 4 * m - 4
    return tuple(
        _lifts_between(2 * i - 1, lo2, hi2, modulus) + _lifts_between(3 - 2 * i, lo2, hi2, modulus)
        for i in range(1, m + 1)
    )


@lru_cache(maxsize=None)
def local_multiplicities(d: PongData) -> WeightVector:
    totals = [0] * d.m
    for s, n in d.pairs():
        for i, c in enumerate(strand_weight(d.m, s, n)):
            totals[i] += c
    return WeightVector(tuple(totals))


weight = local_multiplicities


# ---------------------------------------------------------------------------
# Crossings
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class CrossingClass:
    """Canonical anchored pair ``(i, j)``; ``i`` is a source, ``j`` a lift."""

    i: int
    j: int

    def __str__(self) -> str:
        return f"<{self.i},{self.j}>"


def _canonical(m: int, s: int, j: int) -> CrossingClass:
    t, gamma = fold(m, j)
    return min(CrossingClass(s, j), CrossingClass(t, gamma.inverse()(s)))


def _inverts(d: PongData, s: int, j: int) -> bool:
    return (s - j) * (d.target(s) - lift_apply(d, j)) < 0


def search_window(d: PongData) -> int:
    span = max((abs(t - s) for s, t in d.pairs()), default=0)
    return span + 2 * d.m - 2


@lru_cache(maxsize=None)
def crossings(d: PongData) -> frozenset[CrossingClass]:
    found: set[CrossingClass] = set()
    window = search_window(d)
    sources = set(d.sources)
    for s, n in d.pairs():
        lo, hi = min(s, n) - window, max(s, n) + window
        for j in range(lo, hi + 1):
            if j == s or fold_class(d.m, j) not in sources:
                continue
            if _inverts(d, s, j):
                found.add(_canonical(d.m, s, j))
    return frozenset(found)


def cross(d: PongData) -> int:
    return len(crossings(d))


def resolve(d: PongData, c: CrossingClass) -> PongData:
    """Swap the targets of the orbits of ``c.i`` and ``c.j``."""
    if c.i not in d.sources or fold_class(d.m, c.j) not in d.sources or not _inverts(d, c.i, c.j):
        raise ValueError(f"not a crossing of {d}: {c}")
    s = c.i
    t, gamma = fold(d.m, c.j)
    new = dict(d.pairs())
    if t == s:
        new[s] = gamma(d.target(s))
    else:
        new[s] = gamma(d.target(t))
        new[t] = gamma.inverse()(d.target(s))
    return PongData.from_pairs(d.m, new.items())


def compose(f: PongData, g: PongData) -> PongData:
    """``(S, g~ o f)``: ``f`` on top, ``g`` below."""
    if f.m != g.m or g.sources != f.right:
        raise ValueError(f"not composable: {f} then {g}")
    return PongData(f.m, f.sources, tuple(lift_apply(g, t) for t in f.targets))


def weight_drop(before: PongData, after: PongData) -> WeightVector:
    return local_multiplicities(before) - local_multiplicities(after)
