"""GF(2) linear algebra on numpy ``uint8`` matrices.

Ranks eliminate on rows packed eight columns to a byte; reductions that
return a matrix work on unpacked rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def to_gf2(matrix: np.ndarray | list) -> np.ndarray:
    return (np.asarray(matrix, dtype=np.int64) % 2).astype(np.uint8)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.uint8)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def gf2_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] == 0 or (b.ndim == 2 and b.shape[0] == 0):
        cols = b.shape[1] if b.ndim == 2 else None
        return np.zeros((a.shape[0], cols) if cols is not None else a.shape[0], dtype=np.uint8)
    return ((a.astype(np.int64) @ b.astype(np.int64)) % 2).astype(np.uint8)


@dataclass(frozen=True)
class RowReduceResult:
    matrix: np.ndarray
    rank: int
    pivots: tuple[int, ...]


def gf2_row_reduce(matrix: np.ndarray) -> RowReduceResult:
    """Reduced row echelon form with pivot columns."""
    mat = to_gf2(matrix).copy()
    rows, cols = mat.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        below = np.nonzero(mat[row:, col])[0]
        if below.size == 0:
            continue
        pivot = row + int(below[0])
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        hits = np.nonzero(mat[:, col])[0]
        hits = hits[hits != row]
        if hits.size:
            mat[hits] ^= mat[row]
        pivots.append(col)
        row += 1
    return RowReduceResult(matrix=mat, rank=len(pivots), pivots=tuple(pivots))


def pack_rows(matrix: np.ndarray) -> np.ndarray:
    """Rows as little-endian bit strings, eight columns per byte."""
    return np.packbits(to_gf2(matrix), axis=1, bitorder="little")


def unpack_rows(packed: np.ndarray, cols: int) -> np.ndarray:
    return np.unpackbits(packed, axis=1, count=cols, bitorder="little")


def _column_bits(rows: np.ndarray, col: int) -> np.ndarray:
    byte, bit = divmod(col, 8)
    return (rows[:, byte] >> bit) & 1


def gf2_rank(matrix: np.ndarray) -> int:
    """Rank by forward elimination on bit-packed rows."""
    if matrix.size == 0:
        return 0
    n_rows, cols = matrix.shape
    rows = pack_rows(matrix)
    rank = 0
    for col in range(cols):
        if rank == n_rows:
            break
        hits = np.nonzero(_column_bits(rows[rank:], col))[0]
        if hits.size == 0:
            continue
        pivot = rank + int(hits[0])
        if pivot != rank:
            rows[[rank, pivot]] = rows[[pivot, rank]]
        below = rank + 1 + np.nonzero(_column_bits(rows[rank + 1 :], col))[0]
        if below.size:
            rows[below] ^= rows[rank]
        rank += 1
    return rank


def gf2_nullspace_basis(matrix: np.ndarray) -> np.ndarray:
    """Rows form a basis of ``{x : matrix @ x = 0}``."""
    reduced = gf2_row_reduce(matrix)
    mat = reduced.matrix
    n = mat.shape[1]
    pivots = set(reduced.pivots)
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        vec = np.zeros(n, dtype=np.uint8)
        vec[free] = 1
        for row, col in enumerate(reduced.pivots):
            if mat[row, free]:
                vec[col] = 1
        basis.append(vec)
    if not basis:
        return np.zeros((0, n), dtype=np.uint8)
    return np.vstack(basis)


def gf2_solve(matrix: np.ndarray, vector: np.ndarray) -> np.ndarray | None:
    """Some ``x`` with ``matrix @ x = vector``, or ``None`` if inconsistent."""
    rows, cols = matrix.shape
    aug = np.concatenate([to_gf2(matrix), to_gf2(vector).reshape(rows, 1)], axis=1)
    reduced = gf2_row_reduce(aug)
    if cols in reduced.pivots:
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for row, col in enumerate(reduced.pivots):
        x[col] = reduced.matrix[row, cols]
    return x


def gf2_inverse(matrix: np.ndarray) -> np.ndarray:
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise ValueError(f"not square: {matrix.shape}")
    reduced = gf2_row_reduce(np.concatenate([to_gf2(matrix), identity(n)], axis=1))
    if reduced.pivots[:n] != tuple(range(n)):
        raise ValueError("matrix is singular over GF(2)")
    return reduced.matrix[:, n:].copy()


def in_column_space(matrix: np.ndarray, vector: np.ndarray) -> bool:
    if matrix.shape[1] == 0:
        return not to_gf2(vector).any()
    return gf2_solve(matrix, vector) is not None


def extend_to_basis(span: np.ndarray, candidates: np.ndarray) -> list[int]:
    """Indices of candidate columns that extend ``span``'s columns independently."""
    chosen: list[int] = []
    current = span
    rank = gf2_rank(current) if current.size else 0
    for idx in range(candidates.shape[1]):
        trial = np.concatenate([current, candidates[:, idx : idx + 1]], axis=1)
        trial_rank = gf2_rank(trial)
        if trial_rank > rank:
            chosen.append(idx)
            current, rank = trial, trial_rank
    return chosen
