"""
Base module for canonical block builders.
Contains the Jordan and singular building blocks and the shared block layouts.
"""
import logging
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from app.exceptions import InadmissibleError
from app.models.pencil import Pencil, StructureTag
from app.models.spectral import BlockKind, BlockSpec, Eigenvalue
from app.services import matrices
from app.services.exactnum import GaussianRational, ONE

logger = logging.getLogger(__name__)

Spectrum = Dict[Eigenvalue, List[int]]


class NativeBlock(NamedTuple):
    """
    A block in the structure it is natively written in.

    lower_rows are the rows emitted as paired rank-one terms; centre is the
    diagonal position emitted as a scalar term (odd anti-banded blocks).
    """
    pencil: Pencil
    native: StructureTag
    spectrum: Spectrum
    lower_rows: Tuple[int, ...]
    centre: Optional[int] = None
    sign: int = 1


def jordan_matrices(a: GaussianRational, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """Coefficients of J_k(a - lambda)."""
    return matrices.identity(k) * a + matrices.shift_matrix(k), -matrices.identity(k)


def jordan_pencil(a: GaussianRational, k: int) -> Pencil:
    """J_k(a - lambda): a - lambda on the diagonal, 1 on the superdiagonal."""
    if k < 1:
        raise InadmissibleError(f"Jordan block size must be >= 1, got {k}")
    A, B = jordan_matrices(a, k)
    return Pencil(A, B)


def infinite_jordan_pencil(k: int) -> Pencil:
    """rev J_k(-lambda) = -I + lambda*N."""
    if k < 1:
        raise InadmissibleError(f"Jordan block size must be >= 1, got {k}")
    return Pencil(-matrices.identity(k), matrices.shift_matrix(k))


def singular_block(alpha: int) -> Pencil:
    """Right singular block L_alpha = lambda*[I | 0] + [0 | I] of size alpha x (alpha + 1)."""
    if alpha < 1:
        raise InadmissibleError(f"Singular block order must be >= 1, got {alpha}")
    A = matrices.zeros(alpha, alpha + 1)
    B = matrices.zeros(alpha, alpha + 1)
    for i in range(alpha):
        B[i, i] = ONE
        A[i, i + 1] = ONE
    return Pencil(A, B)


def reverse_times(P: Pencil) -> Pencil:
    """R * P for a square pencil."""
    R = matrices.reverse_identity(P.n)
    return Pencil(matrices.matmul(R, P.A), matrices.matmul(R, P.B))


def pair_layout(top: Pencil, bottom: Pencil) -> Pencil:
    """[[0, top], [bottom, 0]] with top p x q and bottom q x p."""
    p, q = top.shape
    size = p + q
    result = Pencil.zeros(size)
    result.A[:p, p:] = top.A
    result.B[:p, p:] = top.B
    result.A[p:, :p] = bottom.A
    result.B[p:, :p] = bottom.B
    return result


def pair_rows(top: Pencil) -> Tuple[int, ...]:
    p, q = top.shape
    return tuple(range(p, p + q))


def anti_band_rows(size: int) -> Tuple[Tuple[int, ...], Optional[int]]:
    """Rows below the anti-diagonal centre, and the centre itself for odd sizes."""
    if size % 2:
        return tuple(range(size // 2 + 1, size)), size // 2
    return tuple(range(size // 2, size)), None


def anti_band_pencil(size: int, entries: Sequence[Tuple[int, int, GaussianRational, GaussianRational]]) -> Pencil:
    """Pencil from (row, col, constant, lambda-coefficient) entries, 1-based positions."""
    result = Pencil.zeros(size)
    for row, col, c0, c1 in entries:
        result.A[row - 1, col - 1] = c0
        result.B[row - 1, col - 1] = c1
    return result


def merge_spectra(spectra: Sequence[Spectrum]) -> Spectrum:
    merged: Spectrum = {}
    for spectrum in spectra:
        for eig, sizes in spectrum.items():
            merged.setdefault(eig, []).extend(sizes)
    return {eig: sorted(sizes, reverse=True) for eig, sizes in merged.items()}


class BaseBlockBuilder:
    """Base class for all canonical block builders."""

    native: StructureTag = StructureTag.NONE
    kinds: Tuple[BlockKind, ...] = ()

    def supports(self, kind: BlockKind) -> bool:
        return kind in self.kinds

    def build(self, spec: BlockSpec) -> NativeBlock:
        raise NotImplementedError

    def _anti_banded(self, pencil: Pencil, spectrum: Spectrum, sign: int = 1) -> NativeBlock:
        lower, centre = anti_band_rows(pencil.n)
        return NativeBlock(pencil.with_structure(self.native), self.native, spectrum, lower, centre, sign)

    def _paired(self, top: Pencil, bottom: Pencil, spectrum: Spectrum) -> NativeBlock:
        pencil = pair_layout(top, bottom).with_structure(self.native)
        return NativeBlock(pencil, self.native, spectrum, pair_rows(top))
