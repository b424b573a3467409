"""The bordered algebras B0(m,k), B(m,k) = B0/J and C(m,k).

A pure element is determined by its idempotents and its weight vector, so
``ClgPure`` stores exactly ``(x, y, weight)``; the U-monomial is the excess
of the weight over the minimal weight of ``gamma_{x,y}``.

Usage::

    from pongalg.bordered import L, R, U, parse_clg

    L(4, 2, 3) * R(4, 2, 3)                  # [not 2][3] U3
    parse_clg(4, 2, "L3*R3 | x={1,3} y={1,3}")
"""

from __future__ import annotations

import itertools
import json
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

from .strands import WeightVector

FLAVORS = ("B0", "C")


# ---------------------------------------------------------------------------
# Idempotent states
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class IdempotentState:
    m: int
    elements: tuple[int, ...]
    flavor: str = "C"

    def __post_init__(self) -> None:
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if list(self.elements) != sorted(set(self.elements)):
            raise ValueError(f"state must be strictly increasing: {self.elements}")
        lo, hi = (1, self.m - 1) if self.flavor == "C" else (0, self.m)
        if any(not lo <= e <= hi for e in self.elements):
            raise ValueError(f"state {self.elements} outside {lo}..{hi}")

    @classmethod
    def of(cls, m: int, elements: Iterable[int], flavor: str = "C") -> IdempotentState:
        return cls(m, tuple(sorted(elements)), flavor)

    @property
    def k(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, item: object) -> bool:
        return item in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def all_states(m: int, k: int, flavor: str = "C") -> list[IdempotentState]:
    pool = range(1, m) if flavor == "C" else range(0, m + 1)
    return [IdempotentState(m, c, flavor) for c in itertools.combinations(pool, k)]


def state_weight_vector(x: IdempotentState) -> tuple[int, ...]:
    """``v_i = #{x in x : x >= i}`` for ``i = 1..m``."""
    return tuple(sum(1 for e in x if e >= i) for i in range(1, x.m + 1))


def minimal_weight(x: IdempotentState, y: IdempotentState) -> WeightVector:
    vx, vy = state_weight_vector(x), state_weight_vector(y)
    return WeightVector(tuple(abs(a - b) for a, b in zip(vx, vy)))


def too_far(x: IdempotentState, y: IdempotentState) -> bool:
    return any(abs(a - b) >= 2 for a, b in zip(x.elements, y.elements))


def immediate_successors(x: IdempotentState) -> list[IdempotentState]:
    """States obtained by moving one element of ``x`` one step up."""
    hi = x.m - 1 if x.flavor == "C" else x.m
    out = []
    for e in x.elements:
        if e + 1 <= hi and e + 1 not in x:
            out.append(IdempotentState.of(x.m, (set(x.elements) - {e}) | {e + 1}, x.flavor))
    return out


def immediate_predecessors(x: IdempotentState) -> list[IdempotentState]:
    lo = 1 if x.flavor == "C" else 0
    out = []
    for e in x.elements:
        if e - 1 >= lo and e - 1 not in x:
            out.append(IdempotentState.of(x.m, (set(x.elements) - {e}) | {e - 1}, x.flavor))
    return out


def closed_under_succession(chosen: Iterable[IdempotentState]) -> bool:
    pool = set(chosen)
    return all(
        set(immediate_successors(x)) <= pool and set(immediate_predecessors(x)) <= pool for x in pool
    )


# ---------------------------------------------------------------------------
# Pure elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class ClgPure:
    x: IdempotentState
    y: IdempotentState
    weight: WeightVector

    def __post_init__(self) -> None:
        if self.x.m != self.y.m or self.x.flavor != self.y.flavor or self.x.k != self.y.k:
            raise ValueError(f"incompatible states {self.x} and {self.y}")
        if self.weight.m != self.x.m:
            raise ValueError(f"weight {self.weight} has the wrong length")
        excess = self.weight - minimal_weight(self.x, self.y)
        if not excess.is_nonnegative() or not excess.is_integral():
            raise ValueError(f"weight {self.weight} is not attained between {self.x} and {self.y}")

    @classmethod
    def minimal(cls, x: IdempotentState, y: IdempotentState) -> ClgPure:
        return cls(x, y, minimal_weight(x, y))

    @classmethod
    def idempotent(cls, x: IdempotentState) -> ClgPure:
        return cls(x, x, WeightVector.zero(x.m))

    @property
    def m(self) -> int:
        return self.x.m

    @property
    def k(self) -> int:
        return self.x.k

    def u_exponents(self) -> tuple[int, ...]:
        return tuple(c // 2 for c in (self.weight - minimal_weight(self.x, self.y)).doubled)

    def is_idempotent(self) -> bool:
        return self.x == self.y and self.weight.doubled_total == 0

    def __str__(self) -> str:
        us = [f"U{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(self.u_exponents(), 1) if e]
        word = "*".join(["G"] + us)
        return f"{word} | x={self.x} y={self.y}"


def is_valid_pure(x: IdempotentState, y: IdempotentState, w: WeightVector) -> bool:
    if not w.is_nonnegative():
        return False
    excess = w - minimal_weight(x, y)
    return excess.is_nonnegative() and excess.is_integral()


def b0_multiply(a: ClgPure, b: ClgPure) -> ClgPure | None:
    """Product in B0: weights add; mismatched idempotents give zero (``None``)."""
    if a.y != b.x:
        return None
    return ClgPure(a.x, b.y, a.weight + b.weight)


def ideal_member(b: ClgPure) -> bool:
    """Membership in the ideal J."""
    x, y, w = b.x, b.y, b.weight
    if too_far(x, y):
        return True
    m = x.m
    both = set(x) & set(y)
    outside = [i for i in range(0, m + 1) if i not in both]
    for i, j in itertools.combinations(outside, 2):
        if any(t not in both for t in range(i + 1, j)):
            continue
        if any(w.doubled[t - 1] < 2 for t in range(i + 1, j + 1)):
            continue
        if sum(1 for e in x if e <= i) == sum(1 for e in y if e <= i):
            return True
    return False


def is_clg_basis(b: ClgPure) -> bool:
    return b.x.flavor == "C" and not ideal_member(b)


# ---------------------------------------------------------------------------
# Elements of C(m,k)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClgElement:
    m: int
    k: int
    terms: frozenset[ClgPure]

    @classmethod
    def from_terms(cls, m: int, k: int, terms: Iterable[ClgPure]) -> ClgElement:
        kept = (t for t, n in Counter(terms).items() if n % 2)
        return cls(m, k, frozenset(t for t in kept if not ideal_member(t)))

    @classmethod
    def zero(cls, m: int, k: int) -> ClgElement:
        return cls(m, k, frozenset())

    @classmethod
    def pure(cls, p: ClgPure) -> ClgElement:
        return cls.from_terms(p.m, p.k, [p])

    def __add__(self, other: ClgElement) -> ClgElement:
        return ClgElement.from_terms(self.m, self.k, itertools.chain(self.terms, other.terms))

    def __mul__(self, other: ClgElement) -> ClgElement:
        return clg_multiply(self, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[ClgPure]:
        return iter(sorted(self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def restrict(self, x: IdempotentState | None = None, y: IdempotentState | None = None) -> ClgElement:
        return ClgElement(
            self.m,
            self.k,
            frozenset(t for t in self.terms if (x is None or t.x == x) and (y is None or t.y == y)),
        )

    def __str__(self) -> str:
        return " + ".join(str(t) for t in sorted(self.terms)) if self.terms else "0"


def clg_multiply(a: ClgElement, b: ClgElement) -> ClgElement:
    if (a.m, a.k) != (b.m, b.k):
        raise ValueError(f"ambient mismatch: ({a.m},{a.k}) vs ({b.m},{b.k})")
    out = []
    for p in a.terms:
        for q in b.terms:
            r = b0_multiply(p, q)
            if r is not None:
                out.append(r)
    return ClgElement.from_terms(a.m, a.k, out)


def _moves(m: int, k: int, src: int, dst: int) -> ClgElement:
    terms = []
    for x in all_states(m, k):
        if src in x and dst not in x:
            y = IdempotentState.of(m, (set(x) - {src}) | {dst})
            terms.append(ClgPure.minimal(x, y))
    return ClgElement.from_terms(m, k, terms)


def L(m: int, k: int, i: int) -> ClgElement:
    """``L_i``: moves ``i`` to ``i - 1``."""
    if not 2 <= i <= m - 1:
        raise ValueError(f"L_{i} needs 2 <= i <= {m - 1}")
    return _moves(m, k, i, i - 1)


def R(m: int, k: int, i: int) -> ClgElement:
    """``R_i``: moves ``i - 1`` to ``i``."""
    if not 2 <= i <= m - 1:
        raise ValueError(f"R_{i} needs 2 <= i <= {m - 1}")
    return _moves(m, k, i - 1, i)


def U(m: int, k: int, i: int, power: int = 1) -> ClgElement:
    if not 1 <= i <= m:
        raise ValueError(f"U_{i} needs 1 <= i <= {m}")
    w = WeightVector.unit(m, i).scaled(power)
    return ClgElement.from_terms(m, k, (ClgPure(x, x, w) for x in all_states(m, k)))


def clg_identity(m: int, k: int) -> ClgElement:
    return ClgElement.from_terms(m, k, (ClgPure.idempotent(x) for x in all_states(m, k)))


def clg_idempotent(x: IdempotentState, k: int | None = None) -> ClgElement:
    return ClgElement.from_terms(x.m, x.k if k is None else k, [ClgPure.idempotent(x)])


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def clg_pure_elements(
    m: int, k: int, x: IdempotentState, y: IdempotentState, cap: WeightVector
) -> list[ClgPure]:
    """Nonzero pure elements of ``I_x C I_y`` with weight componentwise <= ``cap``."""
    base = minimal_weight(x, y)
    room = cap - base
    if not room.is_nonnegative():
        return []
    ranges = [range(0, c // 2 + 1) for c in room.doubled]
    out = []
    for exps in itertools.product(*ranges):
        w = base + WeightVector(tuple(2 * e for e in exps))
        p = ClgPure(x, y, w)
        if not ideal_member(p):
            out.append(p)
    return out


def clg_piece(m: int, k: int, x: IdempotentState, y: IdempotentState, w: WeightVector) -> ClgPure | None:
    """The unique nonzero pure element with these idempotents and weight, if any."""
    if not is_valid_pure(x, y, w):
        return None
    p = ClgPure(x, y, w)
    return None if ideal_member(p) else p


def basis_json(m: int, k: int, cap: WeightVector) -> str:
    """JSON listing of the basis of C(m,k) below ``cap``, grouped by idempotents."""
    rows = []
    for x in all_states(m, k):
        for y in all_states(m, k):
            for p in clg_pure_elements(m, k, x, y, cap):
                rows.append({"x": list(x), "y": list(y), "weight": p.weight.to_json(), "u": list(p.u_exponents())})
    return json.dumps({"m": m, "k": k, "cap": cap.to_json(), "basis": rows}, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# C(m,k)[t]
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClgTElement:
    m: int
    k: int
    terms: frozenset[tuple[int, ClgPure]]

    @classmethod
    def from_terms(cls, m: int, k: int, terms: Iterable[tuple[int, ClgPure]]) -> ClgTElement:
        kept = (t for t, n in Counter(terms).items() if n % 2)
        return cls(m, k, frozenset(t for t in kept if not ideal_member(t[1])))

    def __add__(self, other: ClgTElement) -> ClgTElement:
        return ClgTElement.from_terms(self.m, self.k, itertools.chain(self.terms, other.terms))

    def __mul__(self, other: ClgTElement) -> ClgTElement:
        out = []
        for s, p in self.terms:
            for t, q in other.terms:
                r = b0_multiply(p, q)
                if r is not None:
                    out.append((s + t, r))
        return ClgTElement.from_terms(self.m, self.k, out)

    def __bool__(self) -> bool:
        return bool(self.terms)


def t_grading_step(m: int, k: int) -> int:
    return 2 * m - 2 * k - 2


def clg_t_gradings(e: ClgTElement) -> tuple[int, WeightVector]:
    """``(gr, weight)`` with ``gr(t) = 2m - 2k - 2`` and ``weight(t) = (1,...,1)``."""
    seen = {
        (s * t_grading_step(e.m, e.k), p.weight + WeightVector.ones(e.m, s)) for s, p in e.terms
    }
    if len(seen) != 1:
        raise ValueError("not homogeneous")
    return seen.pop()


def clg_t_dimension(m: int, k: int, x: IdempotentState, y: IdempotentState, w: WeightVector) -> int:
    """``dim I_x C(m,k)[t] I_y`` in weight ``w``."""
    count, s = 0, 0
    while True:
        rest = w - WeightVector.ones(m, s)
        if not rest.is_nonnegative():
            return count
        if clg_piece(m, k, x, y, rest) is not None:
            count += 1
        s += 1


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------

_FACTOR_RE = re.compile(r"^(G|L|R|U)(\d*)(?:\^(\d+))?$")
_STATE_RE = re.compile(r"([xy])\s*=\s*\{([^}]*)\}")


def _parse_state(m: int, body: str) -> IdempotentState:
    items = [int(tok) for tok in body.replace(" ", "").split(",") if tok]
    return IdempotentState.of(m, items)


def parse_clg(m: int, k: int, text: str) -> ClgElement:
    """Parse ``"L3*R3*U1^2 | x={1,3} y={1,3}"``; ``G`` is ``gamma_{x,y}``."""
    word, _, states_text = text.partition("|")
    found = dict((name, _parse_state(m, body)) for name, body in _STATE_RE.findall(states_text))
    x, y = found.get("x"), found.get("y")
    result: ClgElement | None = None
    for token in (tok.strip() for tok in word.split("*")):
        if not token:
            continue
        match = _FACTOR_RE.match(token)
        if not match:
            raise ValueError(f"cannot parse factor {token!r}")
        kind, index, power = match.group(1), match.group(2), int(match.group(3) or 1)
        if kind == "G":
            if x is None or y is None:
                raise ValueError("G needs both x and y")
            factor = ClgElement.pure(ClgPure.minimal(x, y))
        elif kind == "U":
            factor = U(m, k, int(index), power)
        else:
            single = (L if kind == "L" else R)(m, k, int(index))
            factor = single
            for _ in range(power - 1):
                factor = factor * single
        result = factor if result is None else result * factor
    if result is None:
        result = clg_identity(m, k)
    if x is not None:
        result = clg_idempotent(x, k) * result
    if y is not None:
        result = result * clg_idempotent(y, k)
    return result
