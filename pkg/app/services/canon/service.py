"""
Canonical form service.
Assembles structured pencils from block descriptors and applies congruence transforms.
"""
import logging
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from numpy.random import default_rng

from app.config import settings
from app.exceptions import DimensionMismatchError, InadmissibleError, SingularTransformError
from app.models.pencil import Pencil, StructureTag
from app.models.spectral import BlockKind, BlockSpec, Eigenvalue, SpectralSpec
from app.services import matrices
from app.services.canon.alternating import TEvenBlockBuilder, TOddBlockBuilder
from app.services.canon.base import BaseBlockBuilder, NativeBlock, Spectrum, merge_spectra
from app.services.canon.hermitian import HermitianBlockBuilder
from app.services.canon.jordan import JordanBlockBuilder
from app.services.canon.symmetric import SkewSymmetricBlockBuilder, SymmetricBlockBuilder
from app.services.exactnum import random_scalar
from app.services.pencil_ops import TransportMap, structure_transport, tag_star, transport_eigenvalue

logger = logging.getLogger(__name__)

_S = StructureTag
_M = TransportMap

# (target structure, native structure) -> maps carrying native blocks to the target
ROUTES: Dict[Tuple[StructureTag, StructureTag], Tuple[TransportMap, ...]] = {
    (_S.HERMITIAN, _S.HERMITIAN): (),
    (_S.SKEW_HERMITIAN, _S.HERMITIAN): (_M.TIMES_NEG_I,),
    (_S.STAR_EVEN, _S.HERMITIAN): (_M.LAMBDA_TIMES_NEG_IB,),
    (_S.STAR_ODD, _S.HERMITIAN): (_M.LAMBDA_TIMES_NEG_IB, _M.REVERSAL),
    (_S.STAR_PALINDROMIC, _S.HERMITIAN): (_M.LAMBDA_TIMES_NEG_IB, _M.CAYLEY_MINUS),
    (_S.STAR_ANTI_PALINDROMIC, _S.HERMITIAN): (_M.LAMBDA_TIMES_NEG_IB, _M.CAYLEY_PLUS),
    (_S.SYMMETRIC, _S.SYMMETRIC): (),
    (_S.SYMMETRIC, _S.HERMITIAN): (),
    (_S.SKEW_SYMMETRIC, _S.SKEW_SYMMETRIC): (),
    (_S.T_EVEN, _S.T_EVEN): (),
    (_S.T_ODD, _S.T_ODD): (),
    (_S.T_ODD, _S.T_EVEN): (_M.REVERSAL,),
    (_S.T_PALINDROMIC, _S.T_EVEN): (_M.CAYLEY_MINUS,),
    (_S.T_PALINDROMIC, _S.T_ODD): (_M.CAYLEY_PLUS,),
    (_S.T_ANTI_PALINDROMIC, _S.T_EVEN): (_M.CAYLEY_PLUS,),
    (_S.T_ANTI_PALINDROMIC, _S.T_ODD): (_M.CAYLEY_MINUS,),
}

# Real Hermitian blocks that are also complex symmetric
SYMMETRIC_FROM_HERMITIAN = (BlockKind.HERMITIAN_REAL, BlockKind.HERMITIAN_INFINITY, BlockKind.SINGULAR_PAIR)


class PlacedBlock(NamedTuple):
    """A block of an assembled pencil: native form, route, transported form and diagonal offset."""
    spec: BlockSpec
    native: NativeBlock
    route: Tuple[TransportMap, ...]
    pencil: Pencil
    spectrum: Spectrum
    offset: int


class CanonService:
    """
    Service for building canonical structured pencils.
    Responsible only for block construction, assembly and congruence.
    """

    def __init__(self):
        """Initialize one builder per native block family."""
        self.hermitian = HermitianBlockBuilder()
        self.symmetric = SymmetricBlockBuilder()
        self.skew_symmetric = SkewSymmetricBlockBuilder()
        self.t_even = TEvenBlockBuilder()
        self.t_odd = TOddBlockBuilder()
        self.jordan = JordanBlockBuilder()
        self._builders: List[BaseBlockBuilder] = [
            self.hermitian, self.symmetric, self.skew_symmetric, self.t_even, self.t_odd, self.jordan,
        ]

    def builder_for(self, kind: BlockKind) -> BaseBlockBuilder:
        for builder in self._builders:
            if builder.supports(kind):
                return builder
        raise InadmissibleError(f"No builder for block kind {kind}")

    def native_block(self, block: BlockSpec) -> NativeBlock:
        return self.builder_for(block.kind).build(block)

    def route(self, tag: StructureTag, block: BlockSpec) -> Tuple[TransportMap, ...]:
        """
        Maps taking the block's native form to the target structure.

        Raises:
            InadmissibleError: the block kind is illegal for the structure
        """
        tag = StructureTag(tag)
        if tag == StructureTag.NONE:
            return ()
        native = self.builder_for(block.kind).native
        key = (tag, native)
        if key not in ROUTES:
            raise InadmissibleError(f"Block kind {block.kind.value} is not legal for {tag.value} pencils")
        if key == (_S.SYMMETRIC, _S.HERMITIAN) and block.kind not in SYMMETRIC_FROM_HERMITIAN:
            raise InadmissibleError(f"Block kind {block.kind.value} is not legal for symmetric pencils")
        return ROUTES[key]

    def place_block(self, tag: StructureTag, block: BlockSpec, offset: int = 0) -> PlacedBlock:
        native = self.native_block(block)
        route = self.route(tag, block)
        pencil = native.pencil
        spectrum = native.spectrum
        for how in route:
            pencil, _ = structure_transport(pencil, how)
            spectrum = {transport_eigenvalue(how, eig): sizes for eig, sizes in spectrum.items()}
        return PlacedBlock(block, native, route, pencil.with_structure(tag), spectrum, offset)

    def place_blocks(self, spec: SpectralSpec) -> List[PlacedBlock]:
        placed = []
        offset = 0
        for block in spec.blocks:
            placed.append(self.place_block(spec.structure, block, offset))
            offset += block.dimension
        return placed

    def build_block(self, tag: StructureTag, block: BlockSpec) -> Pencil:
        """
        Build one canonical block in the given structure.

        Args:
            tag: Target structure
            block: Block descriptor

        Returns:
            The block pencil, tagged with the structure
        """
        return self.place_block(tag, block).pencil

    def build_pencil(self, spec: SpectralSpec) -> Pencil:
        """
        Direct sum of the blocks in spec order, then P*K*P^star when a transform is given.
        """
        placed = self.place_blocks(spec)
        pencil = Pencil.direct_sum([p.pencil for p in placed], spec.structure)
        transform = self.resolve_transform(spec)
        if transform is not None:
            pencil = pencil.congruence(transform, tag_star(spec.structure))
        logger.debug(f"Built {spec.structure.value} pencil of size {pencil.n} from {len(placed)} blocks")
        return pencil

    def spectral_data(self, spec: SpectralSpec) -> Dict[Eigenvalue, List[int]]:
        """Multiplicity lists per eigenvalue, sorted non-increasing."""
        return merge_spectra([p.spectrum for p in self.place_blocks(spec)])

    def resolve_transform(self, spec: SpectralSpec) -> Optional[np.ndarray]:
        n = spec.dimension
        if spec.seed_transform is not None:
            return self.random_transform(n, spec.seed_transform)
        if spec.transform is None:
            return None
        P = matrices.as_matrix(spec.transform)
        if P.shape != (n, n):
            raise DimensionMismatchError(f"Transform is {P.shape} but the blocks span {n}")
        if not matrices.det(P):
            raise SingularTransformError("Congruence transform is not invertible")
        return P

    def random_transform(self, n: int, seed: int, bound: int = None) -> np.ndarray:
        """
        Draw an invertible n x n matrix with entries from random_scalar.

        Raises:
            SingularTransformError: no invertible draw within MAX_TRANSFORM_ATTEMPTS
        """
        bound = bound or settings.TRANSFORM_BOUND
        rng = default_rng(seed)
        for attempt in range(settings.MAX_TRANSFORM_ATTEMPTS):
            P = matrices.zeros(n)
            for i in range(n):
                for j in range(n):
                    P[i, j] = random_scalar(rng, bound)
            if matrices.det(P):
                return P
            logger.warning(f"Random transform draw {attempt} was singular (seed={seed})")
        raise SingularTransformError(f"No invertible transform after {settings.MAX_TRANSFORM_ATTEMPTS} draws")


canon_service = CanonService()


def build_block(tag: StructureTag, block: BlockSpec) -> Pencil:
    return canon_service.build_block(tag, block)


def build_pencil(spec: SpectralSpec) -> Pencil:
    return canon_service.build_pencil(spec)


def spectral_data(spec: SpectralSpec) -> Dict[Eigenvalue, List[int]]:
    return canon_service.spectral_data(spec)
