"""
Dense exact matrices over Q(i).
Storage is numpy object arrays; rank, determinant and inverse go through sympy DomainMatrix.
"""
from typing import Iterable, List, Sequence

import numpy as np
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from app.exceptions import DimensionMismatchError, SingularTransformError
from app.services.exactnum import ONE, ZERO, conjugate, to_gaussian

Matrix = np.ndarray

_conjugate = np.vectorize(conjugate, otypes=[object])


def zeros(rows: int, cols: int = None) -> Matrix:
    cols = rows if cols is None else cols
    return np.full((rows, cols), ZERO, dtype=object)


def identity(n: int) -> Matrix:
    matrix = zeros(n)
    for i in range(n):
        matrix[i, i] = ONE
    return matrix


def reverse_identity(n: int) -> Matrix:
    """R with R[i, j] = 1 iff i + j = n - 1 (0-based)."""
    matrix = zeros(n)
    for i in range(n):
        matrix[i, n - 1 - i] = ONE
    return matrix


def shift_matrix(n: int) -> Matrix:
    """N with ones on the superdiagonal."""
    matrix = zeros(n)
    for i in range(n - 1):
        matrix[i, i + 1] = ONE
    return matrix


def as_matrix(rows, cols: int = None) -> Matrix:
    """
    Convert nested sequences of scalars (or scalar text) to an object matrix.

    Args:
        rows: Nested rows, an existing array, or an empty list
        cols: Column count used when rows is empty

    Returns:
        Object ndarray of GaussianRational
    """
    if isinstance(rows, np.ndarray) and rows.dtype == object and rows.ndim == 2:
        return rows.copy()
    rows = [list(row) for row in rows]
    if not rows:
        return zeros(0, cols or 0)
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise DimensionMismatchError("Ragged matrix rows")
    matrix = zeros(len(rows), width)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            matrix[i, j] = to_gaussian(value)
    return matrix


def as_vector(values: Iterable) -> np.ndarray:
    values = list(values)
    vector = np.full(len(values), ZERO, dtype=object)
    for i, value in enumerate(values):
        vector[i] = to_gaussian(value)
    return vector


def unit_vector(n: int, index: int) -> np.ndarray:
    """e_{index+1} in dimension n (0-based index)."""
    vector = np.full(n, ZERO, dtype=object)
    vector[index] = ONE
    return vector


def conj(matrix: np.ndarray) -> np.ndarray:
    if matrix.size == 0:
        return matrix.copy()
    return _conjugate(matrix)


def is_zero(matrix: np.ndarray) -> bool:
    return not any(bool(entry) for entry in matrix.flat)


def equal(left: np.ndarray, right: np.ndarray) -> bool:
    return left.shape == right.shape and all(a == b for a, b in zip(left.flat, right.flat))


def matmul(left: Matrix, right: Matrix) -> Matrix:
    if left.shape[1] != right.shape[0]:
        raise DimensionMismatchError(f"Cannot multiply {left.shape} by {right.shape}")
    if left.shape[1] == 0:
        return zeros(left.shape[0], right.shape[1])
    return left @ right


def to_domain(matrix: Matrix) -> DomainMatrix:
    rows, cols = matrix.shape
    return DomainMatrix([list(row) for row in matrix], (rows, cols), QQ_I)


def from_domain(dm: DomainMatrix) -> Matrix:
    rows, cols = dm.shape
    return as_matrix([[dm[i, j].element for j in range(cols)] for i in range(rows)], cols)


def rank(matrix: Matrix) -> int:
    if matrix.size == 0:
        return 0
    return to_domain(matrix).rank()


def det(matrix: Matrix):
    rows, cols = matrix.shape
    if rows != cols:
        raise DimensionMismatchError(f"Determinant of non-square {matrix.shape}")
    if rows == 0:
        return ONE
    return to_domain(matrix).det()


def inverse(matrix: Matrix) -> Matrix:
    """Exact inverse; raises SingularTransformError when det = 0."""
    if not det(matrix):
        raise SingularTransformError("Matrix is not invertible")
    return from_domain(to_domain(matrix).inv())


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(block.shape[0] for block in blocks)
    cols = sum(block.shape[1] for block in blocks)
    result = zeros(rows, cols)
    r = c = 0
    for block in blocks:
        result[r:r + block.shape[0], c:c + block.shape[1]] = block
        r += block.shape[0]
        c += block.shape[1]
    return result


def to_rows(matrix: Matrix) -> List[list]:
    return [list(row) for row in matrix]
