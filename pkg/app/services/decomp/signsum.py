"""
Sign characteristic sums and minimal scalar-term counts.
"""
import logging
from typing import Dict, List, Tuple

from app.exceptions import DecompositionError, InadmissibleError
from app.models.decomposition import RankOneDecomposition
from app.models.pencil import HERMITIAN_FAMILY, StructureTag
from app.models.spectral import SIGNED_KINDS, Eigenvalue, SpectralSpec
from app.services.canon import canon_service
from app.services.decomp.merge import merge_coefficient_terms
from app.services.decomp.service import decomposition_service
from app.services.decomp.split import CoefficientTerm

logger = logging.getLogger(__name__)


def _require_signed(spec: SpectralSpec) -> None:
    if spec.structure not in HERMITIAN_FAMILY:
        raise InadmissibleError(f"{spec.structure.value} pencils carry no sign characteristic")


def signsum(spec: SpectralSpec, eig: Eigenvalue) -> int:
    """
    Sum of the signs of the odd-sized blocks at eig; 0 when there are none.

    Args:
        spec: Hermitian spec, or a spec transported from Hermitian blocks
        eig: Eigenvalue of the built pencil, possibly infinity
    """
    _require_signed(spec)
    total = 0
    for placed in canon_service.place_blocks(spec):
        block = placed.spec
        if block.kind in SIGNED_KINDS and block.size % 2 and eig in placed.spectrum:
            total += block.sign
    return total


def signsum_table(spec: SpectralSpec) -> Dict[Eigenvalue, int]:
    """signsum at every eigenvalue that carries sign data."""
    _require_signed(spec)
    table: Dict[Eigenvalue, int] = {}
    for placed in canon_service.place_blocks(spec):
        block = placed.spec
        if block.kind not in SIGNED_KINDS:
            continue
        for eig in placed.spectrum:
            table.setdefault(eig, 0)
            if block.size % 2:
                table[eig] += block.sign
    return table


def _pair_off(scalars: List[CoefficientTerm], tag: StructureTag):
    """Greedy pairing of mergeable scalar terms; returns (unpaired, merged)."""
    unpaired: List[CoefficientTerm] = []
    merged = []
    for term in scalars:
        partner = None
        for index, candidate in enumerate(unpaired):
            opposite = (candidate.c0, candidate.c1) == (-term.c0, -term.c1)
            same = (candidate.c0, candidate.c1) == (term.c0, term.c1)
            if opposite or (same and tag == StructureTag.SYMMETRIC):
                partner = index
                break
        if partner is None:
            unpaired.append(term)
        else:
            merged.append(merge_coefficient_terms(unpaired.pop(partner), term, tag))
    return unpaired, merged


def minimal_ell(spec: SpectralSpec) -> Tuple[int, RankOneDecomposition]:
    """
    Smallest number of scalar terms together with a decomposition attaining it.

    Hermitian: sum of |signsum| over the real and infinite eigenvalues.
    Symmetric: number of eigenvalues with an odd number of odd-sized blocks.

    Raises:
        InadmissibleError: the structure is neither Hermitian nor symmetric
    """
    tag = spec.structure
    if tag not in (StructureTag.HERMITIAN, StructureTag.SYMMETRIC):
        raise InadmissibleError(f"Minimal scalar-term counts are available for Hermitian and symmetric pencils, not {tag.value}")

    canonical = spec.canonical()
    scalars, paired = decomposition_service.coefficient_terms(canonical)
    unpaired, merged = _pair_off(scalars, tag)
    dec = decomposition_service.assemble(tag, spec.dimension, unpaired, paired + merged)

    if tag == StructureTag.HERMITIAN:
        bound = sum(abs(value) for value in signsum_table(canonical).values())
        if bound != dec.ell:
            raise DecompositionError(f"Paired decomposition keeps {dec.ell} scalar terms, expected {bound}")

    transform = canon_service.resolve_transform(spec)
    if transform is not None:
        dec = decomposition_service.conjugate_decomposition(dec, transform)
    logger.info(f"Minimal ell for {tag.value} spec: {dec.ell}")
    return dec.ell, dec
