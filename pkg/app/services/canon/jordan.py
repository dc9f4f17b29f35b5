"""
Plain Jordan blocks for unstructured pencils.
"""
from app.exceptions import InadmissibleError
from app.models.pencil import StructureTag
from app.models.spectral import BlockKind, BlockSpec
from app.services.canon.base import BaseBlockBuilder, NativeBlock, infinite_jordan_pencil, jordan_pencil


class JordanBlockBuilder(BaseBlockBuilder):
    """
    Builder for J_k(a - lambda) and its infinite counterpart rev J_k(-lambda).
    Every row is emitted as its own rank-one term.
    """

    native = StructureTag.NONE
    kinds = (BlockKind.JORDAN,)

    def build(self, spec: BlockSpec) -> NativeBlock:
        if spec.kind != BlockKind.JORDAN:
            raise InadmissibleError(f"{spec.kind.value} is not a Jordan block kind")
        k = spec.size
        pencil = infinite_jordan_pencil(k) if spec.eig.is_infinite else jordan_pencil(spec.eig.value, k)
        return NativeBlock(pencil, self.native, {spec.eig: [k]}, tuple(range(k)))
