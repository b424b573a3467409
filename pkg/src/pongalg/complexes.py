"""Finite chain complexes over GF(2) with labelled bases.

Every homology computation in the package goes through ``ChainComplex``:
a basis per degree and a differential lowering the degree by one.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping

import numpy as np

from .gf2 import (
    extend_to_basis,
    gf2_inverse,
    gf2_matmul,
    gf2_nullspace_basis,
    gf2_rank,
    gf2_row_reduce,
    zeros,
)

logger = logging.getLogger(__name__)

Label = Hashable


def parity(labels: Iterable[Label]) -> frozenset:
    """GF(2) sum of a multiset of basis labels."""
    return frozenset(label for label, count in Counter(labels).items() if count % 2)


@dataclass(frozen=True)
class HomologySummary:
    dimensions: dict[int, int]
    basis_sizes: dict[int, int]
    representatives: dict[int, list[frozenset]] | None = None

    @property
    def total(self) -> int:
        return sum(self.dimensions.values())

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** (q % 2) * d for q, d in self.dimensions.items())

    def nonzero(self) -> dict[int, int]:
        return {q: d for q, d in sorted(self.dimensions.items()) if d}

    def __str__(self) -> str:
        if not self.total:
            return "0"
        return " + ".join(f"F^{d}[{q}]" for q, d in self.nonzero().items())


@dataclass(frozen=True)
class DegreeSplitting:
    """Basis ``[B | H | E]`` of one degree.

    ``B`` spans the boundaries, ``H`` completes them to the cycles and ``E``
    are unit vectors at the pivot columns of the outgoing differential.
    """

    image_basis: np.ndarray
    homology_basis: np.ndarray
    pivots: tuple[int, ...]
    image_pivots: tuple[int, ...]
    inverse: np.ndarray

    def coordinates(self, vector: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        coords = gf2_matmul(self.inverse, vector)
        nb, nh = self.image_basis.shape[1], self.homology_basis.shape[1]
        return coords[:nb], coords[nb : nb + nh], coords[nb + nh :]


@dataclass
class ChainComplex:
    """Labelled GF(2) complex; ``d`` maps degree ``q`` into degree ``q - 1``."""

    bases: dict[int, list[Label]]
    images: dict[Label, frozenset] = field(repr=False)
    name: str = ""

    def __post_init__(self) -> None:
        self._index: dict[int, dict[Label, int]] = {
            q: {label: n for n, label in enumerate(labels)} for q, labels in self.bases.items()
        }
        self._degree: dict[Label, int] = {}
        for q, labels in self.bases.items():
            for label in labels:
                if label in self._degree:
                    raise ValueError(f"duplicate basis label {label!r}")
                self._degree[label] = q
        self._matrices: dict[int, np.ndarray] = {}
        self._splittings: dict[int, DegreeSplitting] = {}

    @classmethod
    def build(
        cls,
        basis: Mapping[int, Iterable[Label]],
        differential: Callable[[Label], Iterable[Label]],
        name: str = "",
    ) -> ChainComplex:
        bases = {q: sorted(set(labels)) for q, labels in basis.items()}
        bases = {q: labels for q, labels in bases.items() if labels}
        known = {label: q for q, labels in bases.items() for label in labels}
        images: dict[Label, frozenset] = {}
        for q, labels in bases.items():
            for label in labels:
                image = parity(differential(label))
                for target in image:
                    if known.get(target) != q - 1:
                        raise ValueError(
                            f"differential of {label!r} leaves the complex at {target!r}"
                        )
                images[label] = image
        logger.debug("complex %s: sizes %s", name, {q: len(v) for q, v in bases.items()})
        return cls(bases=bases, images=images, name=name)

    # -- basis bookkeeping ---------------------------------------------------

    def degrees(self) -> list[int]:
        return sorted(self.bases)

    def basis(self, q: int) -> list[Label]:
        return self.bases.get(q, [])

    def size(self, q: int) -> int:
        return len(self.bases.get(q, []))

    def degree_of(self, label: Label) -> int:
        return self._degree[label]

    def vector(self, labels: Iterable[Label], q: int) -> np.ndarray:
        vec = np.zeros(self.size(q), dtype=np.uint8)
        index = self._index.get(q, {})
        for label in labels:
            if label not in index:
                raise KeyError(f"{label!r} is not a degree-{q} basis element")
            vec[index[label]] ^= 1
        return vec

    def labels(self, vector: np.ndarray, q: int) -> frozenset:
        basis = self.basis(q)
        return frozenset(basis[n] for n in np.nonzero(vector)[0])

    def differential(self, labels: Iterable[Label]) -> frozenset:
        return parity(t for label in labels for t in self.images[label])

    # -- matrices ------------------------------------------------------------

    def matrix(self, q: int) -> np.ndarray:
        """Boundary ``C_q -> C_{q-1}`` as a ``size(q-1) x size(q)`` matrix."""
        if q not in self._matrices:
            mat = zeros(self.size(q - 1), self.size(q))
            target = self._index.get(q - 1, {})
            for col, label in enumerate(self.basis(q)):
                for image in self.images[label]:
                    mat[target[image], col] = 1
            self._matrices[q] = mat
        return self._matrices[q]

    def check_square_zero(self) -> bool:
        for q in self.degrees():
            if self.size(q - 1) and self.size(q - 2):
                if gf2_matmul(self.matrix(q - 1), self.matrix(q)).any():
                    return False
        return True

    def rank(self, q: int) -> int:
        if not self.size(q) or not self.size(q - 1):
            return 0
        return gf2_rank(self.matrix(q))

    # -- homology ------------------------------------------------------------

    def homology(self, representatives: bool = False) -> HomologySummary:
        """Betti numbers per degree; raises ValueError unless ``d * d == 0``."""
        if not self.check_square_zero():
            raise ValueError(f"complex {self.name or '<unnamed>'} does not square to zero")
        ranks = {q: self.rank(q) for q in self.degrees()}
        dims = {q: self.size(q) - ranks.get(q, 0) - ranks.get(q + 1, 0) for q in self.degrees()}
        reps = None
        if representatives:
            reps = {
                q: [self.labels(col, q) for col in self.splitting(q).homology_basis.T]
                for q in self.degrees()
                if dims[q]
            }
        return HomologySummary(
            dimensions=dims, basis_sizes={q: self.size(q) for q in self.degrees()}, representatives=reps
        )

    def splitting(self, q: int) -> DegreeSplitting:
        if q in self._splittings:
            return self._splittings[q]
        n = self.size(q)
        outgoing = self.matrix(q) if self.size(q - 1) else zeros(0, n)
        pivots = gf2_row_reduce(outgoing).pivots if outgoing.size else ()
        incoming = self.matrix(q + 1) if self.size(q + 1) else zeros(n, 0)
        image_pivots = gf2_row_reduce(incoming).pivots if incoming.size else ()
        image_basis = incoming[:, list(image_pivots)] if image_pivots else zeros(n, 0)
        kernel = gf2_nullspace_basis(outgoing).T if n else zeros(0, 0)
        chosen = extend_to_basis(image_basis, kernel) if kernel.size else []
        homology_basis = kernel[:, chosen] if chosen else zeros(n, 0)
        units = np.eye(n, dtype=np.uint8)[:, list(pivots)] if pivots else zeros(n, 0)
        frame = np.concatenate([image_basis, homology_basis, units], axis=1)
        inverse = gf2_inverse(frame) if n else zeros(0, 0)
        split = DegreeSplitting(
            image_basis=image_basis,
            homology_basis=homology_basis,
            pivots=tuple(pivots),
            image_pivots=tuple(image_pivots),
            inverse=inverse,
        )
        self._splittings[q] = split
        return split

    def is_boundary(self, labels: Iterable[Label], q: int) -> bool:
        vec = self.vector(labels, q)
        if not vec.any():
            return True
        beta, eta, eps = self.splitting(q).coordinates(vec)
        return not eta.any() and not eps.any()

    def homology_class(self, labels: Iterable[Label], q: int) -> np.ndarray:
        """Coordinates of a cycle in the chosen homology basis."""
        vec = self.vector(labels, q)
        if not self.size(q):
            return np.zeros(0, dtype=np.uint8)
        _, eta, eps = self.splitting(q).coordinates(vec)
        if eps.any():
            raise ValueError("not a cycle")
        return eta

    def solve_boundary(self, labels: Iterable[Label], q: int) -> frozenset | None:
        """A chain in degree ``q + 1`` whose boundary is ``labels``."""
        vec = self.vector(labels, q)
        if not vec.any():
            return frozenset()
        beta, eta, eps = self.splitting(q).coordinates(vec)
        if eta.any() or eps.any():
            return None
        chain = np.zeros(self.size(q + 1), dtype=np.uint8)
        for n, pivot in enumerate(self.splitting(q).image_pivots):
            if beta[n]:
                chain[pivot] = 1
        return self.labels(chain, q + 1)


def empty_complex(name: str = "") -> ChainComplex:
    return ChainComplex(bases={}, images={}, name=name)
