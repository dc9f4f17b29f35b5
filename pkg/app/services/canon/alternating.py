"""
T-even and T-odd canonical blocks.
Anti-banded single blocks and paired blocks at 0, infinity and the nonzero pairs (mu, -mu).
"""
import logging

from app.exceptions import InadmissibleError
from app.models.pencil import Pencil, StructureTag
from app.models.spectral import BlockKind, BlockSpec, Eigenvalue
from app.services import matrices
from app.services.canon.base import BaseBlockBuilder, NativeBlock, anti_band_pencil, singular_block
from app.services.exactnum import ONE, ZERO

logger = logging.getLogger(__name__)


def _reversed(A, B) -> Pencil:
    """R*A + lambda*R*B."""
    R = matrices.reverse_identity(A.shape[0])
    return Pencil(matrices.matmul(R, A), matrices.matmul(R, B))


def t_even_infinite_odd(n: int) -> Pencil:
    """Odd-size T-even block at infinity: constant anti-diagonal, +/- lambda just below it."""
    k = (n - 1) // 2
    entries = [(i, n + 1 - i, ONE, ZERO) for i in range(1, n + 1)]
    entries += [(i, n + 2 - i, ZERO, ONE if i <= k + 1 else -ONE) for i in range(2, n + 1)]
    return anti_band_pencil(n, entries)


def t_even_zero_even(n: int) -> Pencil:
    """Even-size T-even block at 0: +/- lambda on the anti-diagonal, ones just below it."""
    k = n // 2
    entries = [(i, n + 1 - i, ZERO, ONE if i <= k else -ONE) for i in range(1, n + 1)]
    entries += [(i, n + 2 - i, ONE, ZERO) for i in range(2, n + 1)]
    return anti_band_pencil(n, entries)


def t_odd_block(n: int) -> Pencil:
    """U_k: lambda on the anti-diagonal, +1 then -1 just below it."""
    k = (n - 1) // 2
    entries = [(i, n + 1 - i, ZERO, ONE) for i in range(1, n + 1)]
    entries += [(i, n + 2 - i, ONE if i <= k + 1 else -ONE, ZERO) for i in range(2, n + 1)]
    return anti_band_pencil(n, entries)


class TEvenBlockBuilder(BaseBlockBuilder):
    """
    Builder for T-even canonical blocks.
    Responsible only for the six T-even block kinds.
    """

    native = StructureTag.T_EVEN
    kinds = (
        BlockKind.T_EVEN_INF_ODD,
        BlockKind.T_EVEN_INF_EVEN_PAIR,
        BlockKind.T_EVEN_ZERO_ODD_PAIR,
        BlockKind.T_EVEN_ZERO_EVEN,
        BlockKind.T_EVEN_NONZERO_PAIR,
        BlockKind.T_EVEN_SINGULAR_PAIR,
    )

    def build(self, spec: BlockSpec) -> NativeBlock:
        m = spec.size
        I, N = matrices.identity(m), matrices.shift_matrix(m)
        infinity, zero = Eigenvalue.infinity(), Eigenvalue(ZERO)

        if spec.kind == BlockKind.T_EVEN_INF_ODD:
            return self._anti_banded(t_even_infinite_odd(m), {infinity: [m]})

        if spec.kind == BlockKind.T_EVEN_ZERO_EVEN:
            return self._anti_banded(t_even_zero_even(m), {zero: [m]})

        if spec.kind == BlockKind.T_EVEN_INF_EVEN_PAIR:
            return self._paired(_reversed(I, N), _reversed(I, -N), {infinity: [m, m]})

        if spec.kind == BlockKind.T_EVEN_ZERO_ODD_PAIR:
            return self._paired(_reversed(N, I), _reversed(N, -I), {zero: [m, m]})

        if spec.kind == BlockKind.T_EVEN_NONZERO_PAIR:
            mu = spec.eig.value
            A = I * mu + N
            spectrum = {Eigenvalue(mu): [m], Eigenvalue(-mu): [m]}
            return self._paired(_reversed(A, I), _reversed(A, -I), spectrum)

        if spec.kind == BlockKind.T_EVEN_SINGULAR_PAIR:
            L = singular_block(m)
            return self._paired(Pencil(L.A.T, -L.B.T), L, {})

        raise InadmissibleError(f"{spec.kind.value} is not a T-even block kind")


class TOddBlockBuilder(BaseBlockBuilder):
    """
    Builder for T-odd canonical blocks.
    Responsible only for U_k and the paired even-size blocks at 0.
    """

    native = StructureTag.T_ODD
    kinds = (BlockKind.T_ODD_BLOCK, BlockKind.T_ODD_ZERO_EVEN_PAIR)

    def build(self, spec: BlockSpec) -> NativeBlock:
        m = spec.size
        zero = Eigenvalue(ZERO)

        if spec.kind == BlockKind.T_ODD_BLOCK:
            return self._anti_banded(t_odd_block(m), {zero: [m]})

        if spec.kind == BlockKind.T_ODD_ZERO_EVEN_PAIR:
            I, N = matrices.identity(m), matrices.shift_matrix(m)
            return self._paired(_reversed(-N, I), _reversed(N, I), {zero: [m, m]})

        raise InadmissibleError(f"{spec.kind.value} is not a T-odd block kind")
