"""
Core pencil data types.
A Pencil holds the coefficient pair (A, B) of A + lambda*B; a PolyVector holds w0 + lambda*w1.
"""
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Sequence

import numpy as np

from app.exceptions import DimensionMismatchError
from app.services import matrices
from app.services.exactnum import GaussianRational, ZERO
from app.services.polynomials import Poly, coefficient, degree, linear


class StructureTag(str, Enum):
    """Symmetry classes of pencils."""
    HERMITIAN = "hermitian"
    SYMMETRIC = "symmetric"
    SKEW_HERMITIAN = "skew-hermitian"
    SKEW_SYMMETRIC = "skew-symmetric"
    T_EVEN = "t-even"
    T_ODD = "t-odd"
    T_PALINDROMIC = "t-palindromic"
    T_ANTI_PALINDROMIC = "t-anti-palindromic"
    STAR_EVEN = "star-even"
    STAR_ODD = "star-odd"
    STAR_PALINDROMIC = "star-palindromic"
    STAR_ANTI_PALINDROMIC = "star-anti-palindromic"
    NONE = "none"


class Star(str, Enum):
    TRANSPOSE = "transpose"
    CONJUGATE_TRANSPOSE = "conjugate-transpose"


class Twist(str, Enum):
    """Action on the variable: identity, lambda -> -lambda, or reversal."""
    IDENTITY = "identity"
    NEGATE = "negate"
    REVERSE = "reverse"


class StructureRule(NamedTuple):
    """
    A pencil K carries the tag iff K = sign * twist(K)^star.

    The same rule gives the paired summand v w^star + sign * twist(w) v^star.
    """
    star: Star
    sign: int
    twist: Twist


_T, _C = Star.TRANSPOSE, Star.CONJUGATE_TRANSPOSE

STRUCTURE_RULES: Dict[StructureTag, StructureRule] = {
    StructureTag.HERMITIAN: StructureRule(_C, 1, Twist.IDENTITY),
    StructureTag.SYMMETRIC: StructureRule(_T, 1, Twist.IDENTITY),
    StructureTag.SKEW_HERMITIAN: StructureRule(_C, -1, Twist.IDENTITY),
    StructureTag.SKEW_SYMMETRIC: StructureRule(_T, -1, Twist.IDENTITY),
    StructureTag.T_EVEN: StructureRule(_T, 1, Twist.NEGATE),
    StructureTag.T_ODD: StructureRule(_T, -1, Twist.NEGATE),
    StructureTag.T_PALINDROMIC: StructureRule(_T, 1, Twist.REVERSE),
    StructureTag.T_ANTI_PALINDROMIC: StructureRule(_T, -1, Twist.REVERSE),
    StructureTag.STAR_EVEN: StructureRule(_C, 1, Twist.NEGATE),
    StructureTag.STAR_ODD: StructureRule(_C, -1, Twist.NEGATE),
    StructureTag.STAR_PALINDROMIC: StructureRule(_C, 1, Twist.REVERSE),
    StructureTag.STAR_ANTI_PALINDROMIC: StructureRule(_C, -1, Twist.REVERSE),
}

# Structures whose scalar rank-one terms carry real (a, b)
HERMITIAN_FAMILY = (
    StructureTag.HERMITIAN,
    StructureTag.SKEW_HERMITIAN,
    StructureTag.STAR_EVEN,
    StructureTag.STAR_ODD,
    StructureTag.STAR_PALINDROMIC,
    StructureTag.STAR_ANTI_PALINDROMIC,
)

TRANSPOSE_FAMILY = (
    StructureTag.T_EVEN,
    StructureTag.T_ODD,
    StructureTag.T_PALINDROMIC,
    StructureTag.T_ANTI_PALINDROMIC,
)


def rule_for(tag: StructureTag) -> Optional[StructureRule]:
    return STRUCTURE_RULES.get(tag)


class Pencil:
    """Matrix pencil A + lambda*B with exact coefficients and an optional structure tag."""

    __slots__ = ('A', 'B', 'structure')

    def __init__(self, A, B, structure: StructureTag = StructureTag.NONE):
        A = matrices.as_matrix(A)
        B = matrices.as_matrix(B, A.shape[1])
        if A.shape != B.shape:
            raise DimensionMismatchError(f"A is {A.shape} but B is {B.shape}")
        self.A = A
        self.B = B
        self.structure = StructureTag(structure)

    @classmethod
    def zeros(cls, rows: int, cols: int = None, structure: StructureTag = StructureTag.NONE) -> 'Pencil':
        return cls(matrices.zeros(rows, cols), matrices.zeros(rows, cols), structure)

    @classmethod
    def from_polys(cls, entries: Sequence[Sequence[Poly]], structure: StructureTag = StructureTag.NONE) -> 'Pencil':
        """Build from a matrix of polynomials of degree at most one."""
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        A, B = matrices.zeros(rows, cols), matrices.zeros(rows, cols)
        for i, row in enumerate(entries):
            for j, entry in enumerate(row):
                if degree(entry) > 1:
                    raise DimensionMismatchError(f"Entry ({i}, {j}) has degree {degree(entry)}")
                A[i, j] = coefficient(entry, 0)
                B[i, j] = coefficient(entry, 1)
        return cls(A, B, structure)

    @property
    def shape(self):
        return self.A.shape

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def is_square(self) -> bool:
        return self.A.shape[0] == self.A.shape[1]

    def entry(self, i: int, j: int) -> Poly:
        return linear(self.A[i, j], self.B[i, j])

    def to_polys(self) -> List[List[Poly]]:
        rows, cols = self.shape
        return [[self.entry(i, j) for j in range(cols)] for i in range(rows)]

    def with_structure(self, structure: StructureTag) -> 'Pencil':
        return Pencil(self.A, self.B, structure)

    def is_zero(self) -> bool:
        return matrices.is_zero(self.A) and matrices.is_zero(self.B)

    def scale(self, c: GaussianRational) -> 'Pencil':
        return Pencil(self.A * c, self.B * c, self.structure)

    def congruence(self, P: np.ndarray, star: Star) -> 'Pencil':
        """Return P * K * P^star."""
        P_star = P.T if star == Star.TRANSPOSE else matrices.conj(P).T
        A = matrices.matmul(matrices.matmul(P, self.A), P_star)
        B = matrices.matmul(matrices.matmul(P, self.B), P_star)
        return Pencil(A, B, self.structure)

    def embed(self, frame: int, offset: int) -> 'Pencil':
        """Place this square pencil on the diagonal of a frame x frame zero pencil."""
        size = self.n
        result = Pencil.zeros(frame, structure=self.structure)
        result.A[offset:offset + size, offset:offset + size] = self.A
        result.B[offset:offset + size, offset:offset + size] = self.B
        return result

    @staticmethod
    def direct_sum(pencils: Sequence['Pencil'], structure: StructureTag = StructureTag.NONE) -> 'Pencil':
        return Pencil(
            matrices.block_diagonal([p.A for p in pencils]),
            matrices.block_diagonal([p.B for p in pencils]),
            structure,
        )

    def __add__(self, other: 'Pencil') -> 'Pencil':
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Cannot add {self.shape} and {other.shape}")
        structure = self.structure if self.structure == other.structure else StructureTag.NONE
        return Pencil(self.A + other.A, self.B + other.B, structure)

    def __sub__(self, other: 'Pencil') -> 'Pencil':
        return self + (-other)

    def __neg__(self) -> 'Pencil':
        return Pencil(-self.A, -self.B, self.structure)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pencil):
            return NotImplemented
        return matrices.equal(self.A, other.A) and matrices.equal(self.B, other.B)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Pencil(shape={self.shape}, structure={self.structure.value})"


class PolyVector:
    """Vector polynomial w0 + lambda*w1 of degree at most one."""

    __slots__ = ('c0', 'c1')

    def __init__(self, c0, c1=None):
        c0 = matrices.as_vector(c0)
        c1 = matrices.as_vector(c1) if c1 is not None else np.full(len(c0), ZERO, dtype=object)
        if len(c0) != len(c1):
            raise DimensionMismatchError(f"Coefficient lengths {len(c0)} and {len(c1)} differ")
        self.c0 = c0
        self.c1 = c1

    @classmethod
    def zeros(cls, n: int) -> 'PolyVector':
        return cls(np.full(n, ZERO, dtype=object))

    @classmethod
    def unit(cls, n: int, index: int) -> 'PolyVector':
        return cls(matrices.unit_vector(n, index))

    @property
    def n(self) -> int:
        return len(self.c0)

    @property
    def degree(self) -> int:
        """Max entry degree; -1 for the zero vector."""
        if matrices.is_zero(self.c1):
            return -1 if matrices.is_zero(self.c0) else 0
        return 1

    def entries(self) -> List[Poly]:
        return [linear(a, b) for a, b in zip(self.c0, self.c1)]

    def reversal(self) -> 'PolyVector':
        return PolyVector(self.c1, self.c0)

    def negate_variable(self) -> 'PolyVector':
        return PolyVector(self.c0, -self.c1)

    def twisted(self, twist: Twist) -> 'PolyVector':
        if twist == Twist.NEGATE:
            return self.negate_variable()
        if twist == Twist.REVERSE:
            return self.reversal()
        return self

    def conjugate(self) -> 'PolyVector':
        return PolyVector(matrices.conj(self.c0), matrices.conj(self.c1))

    def scale(self, c: GaussianRational) -> 'PolyVector':
        return PolyVector(self.c0 * c, self.c1 * c)

    def times_linear(self, c0: GaussianRational, c1: GaussianRational) -> 'PolyVector':
        """Multiply a constant vector by c0 + lambda*c1."""
        if not matrices.is_zero(self.c1):
            raise DimensionMismatchError("Only constant vectors can be multiplied by a linear factor")
        return PolyVector(self.c0 * c0, self.c0 * c1)

    def transform(self, P: np.ndarray) -> 'PolyVector':
        return PolyVector(matrices.matmul(P, self.c0.reshape(-1, 1)).ravel(),
                          matrices.matmul(P, self.c1.reshape(-1, 1)).ravel())

    def __add__(self, other: 'PolyVector') -> 'PolyVector':
        return PolyVector(self.c0 + other.c0, self.c1 + other.c1)

    def __sub__(self, other: 'PolyVector') -> 'PolyVector':
        return PolyVector(self.c0 - other.c0, self.c1 - other.c1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVector):
            return NotImplemented
        return matrices.equal(self.c0, other.c0) and matrices.equal(self.c1, other.c1)

    __hash__ = None

    def __repr__(self) -> str:
        return f"PolyVector(n={self.n}, degree={self.degree})"
