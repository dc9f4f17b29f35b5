"""
Merging two scalar rank-one terms into one paired term.
"""
import logging

from app.exceptions import DecompositionError, InadmissibleError
from app.models.decomposition import PairedTerm, ScalarTerm
from app.models.pencil import PolyVector, Star, StructureTag, rule_for
from app.services.decomp.encoding import encode
from app.services.decomp.split import CoefficientTerm
from app.services.exactnum import HALF, I_UNIT, conjugate

logger = logging.getLogger(__name__)


def merge_coefficient_terms(t1: CoefficientTerm, t2: CoefficientTerm, tag: StructureTag) -> PairedTerm:
    """
    Replace c1(lambda) u1 u1^star + c2(lambda) u2 u2^star by one paired term.

    Transpose structures need c2 = +/- c1; conjugate-transpose structures need c2 = -c1.
    v = u1 + i*u2' and w = 1/2 * c1 * (u1 - i*u2'), conjugating c1 for conjugate transposes.
    """
    rule = rule_for(tag)
    if rule is None or tag == StructureTag.SKEW_SYMMETRIC:
        raise InadmissibleError(f"{StructureTag(tag).value} pencils have no scalar terms to merge")
    n = t1.u.n
    if t1.u.degree < 0 and t2.u.degree < 0:
        return PairedTerm(v=PolyVector.zeros(n), w=PolyVector.zeros(n))

    same = (t2.c0, t2.c1) == (t1.c0, t1.c1)
    opposite = (t2.c0, t2.c1) == (-t1.c0, -t1.c1)
    if rule.star == Star.TRANSPOSE:
        if same:
            u2 = t2.u
        elif opposite:
            u2 = t2.u.scale(I_UNIT)
        else:
            raise DecompositionError("Scalar factors differ by more than a sign")
        c0, c1 = t1.c0, t1.c1
    else:
        if not opposite:
            raise DecompositionError("Conjugate-transpose merges need opposite scalar factors")
        u2 = t2.u
        c0, c1 = conjugate(t1.c0), conjugate(t1.c1)

    v = t1.u + u2.scale(I_UNIT)
    w = (t1.u - u2.scale(I_UNIT)).times_linear(c0 * HALF, c1 * HALF)
    return PairedTerm(v=v, w=w)


def merge_opposite_signs(t1: ScalarTerm, t2: ScalarTerm, tag: StructureTag = StructureTag.HERMITIAN) -> PairedTerm:
    """
    Pair two scalar terms.

    Args:
        t1: First term, e.g. (a - lambda) u1 u1^*
        t2: Second term, e.g. -(a - lambda) u2 u2^*
        tag: Structure the terms belong to

    Returns:
        (v, w) whose paired term equals t1 + t2

    Raises:
        DecompositionError: the factors do not match as required
    """
    first = CoefficientTerm(*encode(tag, t1.a, t1.b), t1.u)
    second = CoefficientTerm(*encode(tag, t2.a, t2.b), t2.u)
    return merge_coefficient_terms(first, second, tag)
