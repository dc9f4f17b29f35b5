"""
Structured rank-one decomposition models.
Scalar terms (a + lambda*b) u u^star and paired terms v w^star + sign * twist(w) v^star.
"""
from typing import List, NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from app.models.fields import PolyVectorValue, Scalar
from app.models.pencil import StructureTag
from app.services import matrices


class ScalarTerm(BaseModel):
    """(a, b) in the structure's scalar encoding and a constant vector u."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    a: Scalar
    b: Scalar
    u: PolyVectorValue

    @model_validator(mode='after')
    def check_constant(self) -> 'ScalarTerm':
        if self.u.degree > 0:
            raise ValueError("Scalar-term vectors must be constant")
        return self


class PairedTerm(BaseModel):
    """Constant v and w of degree at most one."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    v: PolyVectorValue
    w: PolyVectorValue

    @model_validator(mode='after')
    def check_degrees(self) -> 'PairedTerm':
        if self.v.degree > 0:
            raise ValueError("Paired-term v must be constant")
        if self.v.n != self.w.n:
            raise ValueError(f"v has length {self.v.n} but w has length {self.w.n}")
        return self


class ConciseForm(NamedTuple):
    """U, V, W_A, W_B as column matrices and D_A, D_B as diagonal matrices."""
    U: np.ndarray
    V: np.ndarray
    W_A: np.ndarray
    W_B: np.ndarray
    D_A: np.ndarray
    D_B: np.ndarray


class RankOneDecomposition(BaseModel):
    """A sum of ell scalar terms and s paired terms for one structure."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    structure: StructureTag
    n: int
    scalar_terms: List[ScalarTerm] = []
    paired_terms: List[PairedTerm] = []

    @model_validator(mode='after')
    def check_lengths(self) -> 'RankOneDecomposition':
        for term in self.scalar_terms:
            if term.u.n != self.n:
                raise ValueError(f"Scalar term of length {term.u.n} in a decomposition of size {self.n}")
        for term in self.paired_terms:
            if term.v.n != self.n:
                raise ValueError(f"Paired term of length {term.v.n} in a decomposition of size {self.n}")
        if self.structure == StructureTag.NONE and self.scalar_terms:
            raise ValueError("Unstructured decompositions carry paired terms only")
        return self

    @property
    def ell(self) -> int:
        return len(self.scalar_terms)

    @property
    def s(self) -> int:
        return len(self.paired_terms)

    @property
    def rank_bound(self) -> int:
        """ell + 2s; unstructured terms v w^T count once each."""
        if self.structure == StructureTag.NONE:
            return self.s
        return self.ell + 2 * self.s

    def constant_vectors(self) -> np.ndarray:
        """Columns u_1..u_ell, v_1..v_s."""
        columns = [t.u.c0 for t in self.scalar_terms] + [t.v.c0 for t in self.paired_terms]
        return _columns(columns, self.n)

    def concise(self) -> ConciseForm:
        ell = self.ell
        D_A, D_B = matrices.zeros(ell), matrices.zeros(ell)
        for i, term in enumerate(self.scalar_terms):
            D_A[i, i] = term.a
            D_B[i, i] = term.b
        return ConciseForm(
            U=_columns([t.u.c0 for t in self.scalar_terms], self.n),
            V=_columns([t.v.c0 for t in self.paired_terms], self.n),
            W_A=_columns([t.w.c0 for t in self.paired_terms], self.n),
            W_B=_columns([t.w.c1 for t in self.paired_terms], self.n),
            D_A=D_A,
            D_B=D_B,
        )


def _columns(vectors, n: int) -> np.ndarray:
    result = matrices.zeros(n, len(vectors))
    for j, vector in enumerate(vectors):
        result[:, j] = vector
    return result
