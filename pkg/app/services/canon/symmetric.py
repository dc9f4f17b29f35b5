"""
Symmetric and skew-symmetric canonical blocks.
"""
import logging

from app.exceptions import InadmissibleError
from app.models.pencil import Pencil, StructureTag
from app.models.spectral import BlockKind, BlockSpec, Eigenvalue
from app.services.canon.base import BaseBlockBuilder, NativeBlock, singular_block
from app.services.canon.hermitian import signed_infinite_block, signed_real_block

logger = logging.getLogger(__name__)


def symmetric_jordan(eig: Eigenvalue, k: int) -> Pencil:
    """R * J_k(a - lambda), or R * (-I + lambda*N) at infinity."""
    if eig.is_infinite:
        return signed_infinite_block(k, 1)
    return signed_real_block(eig.value, k, 1)


class SymmetricBlockBuilder(BaseBlockBuilder):
    """
    Builder for complex symmetric blocks.
    Responsible only for R*J_k(a - lambda) at finite or infinite eigenvalues.
    """

    native = StructureTag.SYMMETRIC
    kinds = (BlockKind.SYM_BLOCK,)

    def build(self, spec: BlockSpec) -> NativeBlock:
        if spec.kind != BlockKind.SYM_BLOCK:
            raise InadmissibleError(f"{spec.kind.value} is not a symmetric block kind")
        return self._anti_banded(symmetric_jordan(spec.eig, spec.size), {spec.eig: [spec.size]})


class SkewSymmetricBlockBuilder(BaseBlockBuilder):
    """
    Builder for skew-symmetric blocks.
    Every regular block is a pair [[0, D], [-D, 0]], so multiplicities come doubled.
    """

    native = StructureTag.SKEW_SYMMETRIC
    kinds = (BlockKind.SKEW_SYM_PAIR, BlockKind.SKEW_SINGULAR_PAIR)

    def build(self, spec: BlockSpec) -> NativeBlock:
        k = spec.size
        if spec.kind == BlockKind.SKEW_SYM_PAIR:
            D = symmetric_jordan(spec.eig, k)
            return self._paired(D, -D, {spec.eig: [k, k]})

        if spec.kind == BlockKind.SKEW_SINGULAR_PAIR:
            L = singular_block(k)
            return self._paired(Pencil(-L.A.T, -L.B.T), L, {})

        raise InadmissibleError(f"{spec.kind.value} is not a skew-symmetric block kind")
