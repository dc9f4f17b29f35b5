"""
Hermitian canonical blocks.
Real and infinite sign-carrying blocks, conjugate eigenvalue pairs and singular pairs.
"""
import logging

from app.exceptions import InadmissibleError
from app.models.pencil import Pencil, StructureTag
from app.models.spectral import BlockKind, BlockSpec, Eigenvalue
from app.services import matrices
from app.services.canon.base import (
    BaseBlockBuilder,
    NativeBlock,
    jordan_pencil,
    reverse_times,
    singular_block,
)
from app.services.exactnum import conjugate, gaussian

logger = logging.getLogger(__name__)


def signed_real_block(a, k: int, sign: int) -> Pencil:
    """sigma * R * J_k(a - lambda)."""
    return reverse_times(jordan_pencil(a, k)).scale(gaussian(sign))


def signed_infinite_block(k: int, sign: int) -> Pencil:
    """rev(sigma * R * J_k(-lambda)) = sigma * R * (-I + lambda*N)."""
    R = matrices.reverse_identity(k)
    block = Pencil(-R, matrices.matmul(R, matrices.shift_matrix(k)))
    return block.scale(gaussian(sign))


class HermitianBlockBuilder(BaseBlockBuilder):
    """
    Builder for Hermitian canonical blocks.
    Responsible only for the four Hermitian block types.
    """

    native = StructureTag.HERMITIAN
    kinds = (
        BlockKind.HERMITIAN_REAL,
        BlockKind.HERMITIAN_INFINITY,
        BlockKind.CONJUGATE_PAIR,
        BlockKind.SINGULAR_PAIR,
    )

    def build(self, spec: BlockSpec) -> NativeBlock:
        k = spec.size
        if spec.kind == BlockKind.HERMITIAN_REAL:
            a = spec.eig.value
            return self._anti_banded(signed_real_block(a, k, spec.sign), {Eigenvalue(a): [k]}, spec.sign)

        if spec.kind == BlockKind.HERMITIAN_INFINITY:
            return self._anti_banded(signed_infinite_block(k, spec.sign), {Eigenvalue.infinity(): [k]}, spec.sign)

        if spec.kind == BlockKind.CONJUGATE_PAIR:
            mu = spec.eig.value
            top = reverse_times(jordan_pencil(mu, k))
            bottom = reverse_times(jordan_pencil(conjugate(mu), k))
            spectrum = {Eigenvalue(mu): [k], Eigenvalue(conjugate(mu)): [k]}
            return self._paired(top, bottom, spectrum)

        if spec.kind == BlockKind.SINGULAR_PAIR:
            L = singular_block(k)
            return self._paired(Pencil(L.A.T, L.B.T), L, {})

        raise InadmissibleError(f"{spec.kind.value} is not a Hermitian block kind")
