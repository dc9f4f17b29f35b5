"""
Row-split recipes turning a native canonical block into rank-one terms.
"""
import logging
from typing import List, NamedTuple, Tuple

from app.models.decomposition import PairedTerm
from app.models.pencil import PolyVector, Star, StructureTag, rule_for
from app.services.canon import NativeBlock
from app.services.exactnum import HALF, GaussianRational, gaussian

logger = logging.getLogger(__name__)


class CoefficientTerm(NamedTuple):
    """(c0 + lambda*c1) u u^star kept in coefficient form while it is transported."""
    c0: GaussianRational
    c1: GaussianRational
    u: PolyVector


SplitTerms = Tuple[List[CoefficientTerm], List[PairedTerm]]


def _row_vector(block: NativeBlock, row: int, halve: Tuple[int, ...], star: Star) -> PolyVector:
    """Row of the block as w with w^star = row, entries in `halve` halved."""
    c0 = block.pencil.A[row, :].copy()
    c1 = block.pencil.B[row, :].copy()
    for col in halve:
        c0[col] = c0[col] * HALF
        c1[col] = c1[col] * HALF
    vector = PolyVector(c0, c1)
    return vector.conjugate() if star == Star.CONJUGATE_TRANSPOSE else vector


def split_structured(block: NativeBlock) -> SplitTerms:
    """
    Structured split of a native block.

    Every lower row j gives v = sign*e_j and w = sign*row_j^star, halving entries
    whose column is also a lower row; an odd centre becomes a scalar term.
    """
    rule = rule_for(block.native)
    size = block.pencil.n
    sign = gaussian(block.sign)
    lower = block.lower_rows
    paired = []
    for j in lower:
        v = PolyVector.unit(size, j).scale(sign)
        w = _row_vector(block, j, lower, rule.star).scale(sign)
        paired.append(PairedTerm(v=v, w=w))

    scalars = []
    if block.centre is not None:
        c = block.centre
        scalars.append(CoefficientTerm(block.pencil.A[c, c], block.pencil.B[c, c], PolyVector.unit(size, c)))
    return scalars, paired


def split_unstructured(block: NativeBlock) -> SplitTerms:
    """One term e_j row_j per row."""
    rows = block.pencil.n
    paired = []
    for j in range(rows):
        row = PolyVector(block.pencil.A[j, :], block.pencil.B[j, :])
        if row.degree < 0:
            continue
        paired.append(PairedTerm(v=PolyVector.unit(rows, j), w=row))
    return [], paired


def split_block(block: NativeBlock, target: StructureTag) -> SplitTerms:
    if target == StructureTag.NONE or rule_for(block.native) is None:
        return split_unstructured(block)
    return split_structured(block)


def embed_vector(vector: PolyVector, frame: int, offset: int) -> PolyVector:
    result = PolyVector.zeros(frame)
    result.c0[offset:offset + vector.n] = vector.c0
    result.c1[offset:offset + vector.n] = vector.c1
    return result
