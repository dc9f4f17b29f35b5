"""
Rank-one decomposition service.
Decomposes canonical specs block by block, conjugates by transforms and reconstructs pencils.
"""
import logging
from typing import List

import numpy as np

from app.exceptions import DimensionMismatchError, NonCanonicalSpecError, SingularTransformError
from app.models.decomposition import PairedTerm, RankOneDecomposition, ScalarTerm
from app.models.pencil import TRANSPOSE_FAMILY, Pencil, StructureTag
from app.models.spectral import SpectralSpec
from app.services import matrices
from app.services.canon import CanonService, canon_service
from app.services.decomp.encoding import decode, encode
from app.services.decomp.merge import merge_coefficient_terms
from app.services.decomp.split import CoefficientTerm, embed_vector, split_block
from app.services.decomp.transport import transport_terms
from app.services.pencil_ops import paired_term, scalar_term

logger = logging.getLogger(__name__)


class DecompositionService:
    """
    Service for structured rank-one decompositions.
    Responsible only for producing, transforming and reconstructing decompositions.
    """

    def __init__(self, canon: CanonService = None):
        """Initialize with the canonical form service used to lay out blocks."""
        self.canon = canon or canon_service

    def coefficient_terms(self, spec: SpectralSpec):
        """
        Terms of every block in frame coordinates, scalar terms still in coefficient form.

        Raises:
            NonCanonicalSpecError: the spec carries a transform
        """
        if not spec.is_canonical:
            raise NonCanonicalSpecError("Decompose the canonical part and conjugate afterwards")
        tag = spec.structure
        n = spec.dimension
        scalars: List[CoefficientTerm] = []
        paired: List[PairedTerm] = []
        for placed in self.canon.place_blocks(spec):
            native = placed.native
            block_scalars, block_paired = split_block(native, tag)
            if tag != StructureTag.NONE:
                block_scalars, block_paired, _ = transport_terms(
                    block_scalars, block_paired, placed.route, native.native
                )
            offset = placed.offset
            scalars += [CoefficientTerm(t.c0, t.c1, embed_vector(t.u, n, offset)) for t in block_scalars]
            paired += [
                PairedTerm(v=embed_vector(t.v, n, offset), w=embed_vector(t.w, n, offset))
                for t in block_paired
            ]
        return scalars, paired

    def assemble(self, tag: StructureTag, n: int, scalars: List[CoefficientTerm],
                 paired: List[PairedTerm]) -> RankOneDecomposition:
        scalar_terms = []
        for term in scalars:
            a, b = decode(tag, term.c0, term.c1)
            scalar_terms.append(ScalarTerm(a=a, b=b, u=term.u))
        return RankOneDecomposition(structure=tag, n=n, scalar_terms=scalar_terms, paired_terms=paired)

    def decompose_canonical(self, spec: SpectralSpec) -> RankOneDecomposition:
        """
        Decomposition of a canonical spec reconstructing build_pencil(spec) exactly.

        Transpose structures pair up their scalar terms so that ell = r mod 2.
        """
        tag = spec.structure
        scalars, paired = self.coefficient_terms(spec)
        if tag in TRANSPOSE_FAMILY:
            while len(scalars) >= 2:
                first, second = scalars[0], scalars[1]
                paired.append(merge_coefficient_terms(first, second, tag))
                scalars = scalars[2:]
        dec = self.assemble(tag, spec.dimension, scalars, paired)
        logger.debug(f"Decomposed {tag.value} spec: ell={dec.ell}, s={dec.s}")
        return dec

    def decompose(self, spec: SpectralSpec) -> RankOneDecomposition:
        """Decompose the canonical part, then conjugate by the spec's transform."""
        dec = self.decompose_canonical(spec.canonical())
        transform = self.canon.resolve_transform(spec)
        if transform is None:
            return dec
        return self.conjugate_decomposition(dec, transform)

    def conjugate_decomposition(self, dec: RankOneDecomposition, P) -> RankOneDecomposition:
        """
        Left-multiply every vector by P.

        Raises:
            DimensionMismatchError: P is not n x n
            SingularTransformError: P is not invertible
        """
        P = matrices.as_matrix(P)
        if P.shape != (dec.n, dec.n):
            raise DimensionMismatchError(f"Transform is {P.shape} for a decomposition of size {dec.n}")
        if not matrices.det(P):
            raise SingularTransformError("Conjugating matrix is not invertible")
        return RankOneDecomposition(
            structure=dec.structure,
            n=dec.n,
            scalar_terms=[ScalarTerm(a=t.a, b=t.b, u=t.u.transform(P)) for t in dec.scalar_terms],
            paired_terms=[PairedTerm(v=t.v.transform(P), w=t.w.transform(P)) for t in dec.paired_terms],
        )

    def reconstruct(self, dec: RankOneDecomposition) -> Pencil:
        """Exact sum of all terms under the structure's combine rule."""
        tag = dec.structure
        total = Pencil.zeros(dec.n, structure=tag)
        for term in dec.scalar_terms:
            c0, c1 = encode(tag, term.a, term.b)
            total = total + scalar_term(c0, c1, term.u, tag)
        for term in dec.paired_terms:
            total = total + paired_term(term.v, term.w, tag)
        return total.with_structure(tag)


decomposition_service = DecompositionService()


def decompose_canonical(spec: SpectralSpec) -> RankOneDecomposition:
    return decomposition_service.decompose_canonical(spec)


def decompose(spec: SpectralSpec) -> RankOneDecomposition:
    return decomposition_service.decompose(spec)


def conjugate_decomposition(dec: RankOneDecomposition, P: np.ndarray) -> RankOneDecomposition:
    return decomposition_service.conjugate_decomposition(dec, P)


def reconstruct(dec: RankOneDecomposition) -> Pencil:
    return decomposition_service.reconstruct(dec)
