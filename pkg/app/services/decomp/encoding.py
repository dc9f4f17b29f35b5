"""
Scalar-term encodings.
Each structure writes the linear factor c0 + lambda*c1 of a term (c0 + lambda*c1) u u^star
through a pair (a, b); Hermitian-family pairs are real.
"""
from typing import Tuple

from app.exceptions import DecompositionError, InadmissibleError
from app.models.pencil import HERMITIAN_FAMILY, StructureTag
from app.services.exactnum import HALF, I_UNIT, ZERO, GaussianRational, is_real

_S = StructureTag
Coefficients = Tuple[GaussianRational, GaussianRational]


def encode(tag: StructureTag, a: GaussianRational, b: GaussianRational) -> Coefficients:
    """(a, b) -> (c0, c1)."""
    tag = StructureTag(tag)
    i = I_UNIT
    if tag in (_S.HERMITIAN, _S.SYMMETRIC):
        return a, b
    if tag == _S.SKEW_HERMITIAN:
        return i * a, i * b
    if tag == _S.STAR_EVEN:
        return a, i * b
    if tag == _S.STAR_ODD:
        return i * a, b
    if tag == _S.STAR_PALINDROMIC:
        return a - i * b, a + i * b
    if tag == _S.STAR_ANTI_PALINDROMIC:
        return a + i * b, -a + i * b
    if tag == _S.T_EVEN:
        return a, ZERO
    if tag == _S.T_ODD:
        return ZERO, a
    if tag == _S.T_PALINDROMIC:
        return a, a
    if tag == _S.T_ANTI_PALINDROMIC:
        return a, -a
    raise InadmissibleError(f"{tag.value} pencils have no scalar rank-one terms")


def decode(tag: StructureTag, c0: GaussianRational, c1: GaussianRational) -> Coefficients:
    """
    (c0, c1) -> (a, b), the inverse of encode.

    Raises:
        DecompositionError: the factor is not structured for the tag
    """
    tag = StructureTag(tag)
    i = I_UNIT
    if tag in (_S.HERMITIAN, _S.SYMMETRIC):
        a, b = c0, c1
    elif tag == _S.SKEW_HERMITIAN:
        a, b = -i * c0, -i * c1
    elif tag == _S.STAR_EVEN:
        a, b = c0, -i * c1
    elif tag == _S.STAR_ODD:
        a, b = -i * c0, c1
    elif tag == _S.STAR_PALINDROMIC:
        a, b = (c0 + c1) * HALF, i * (c0 - c1) * HALF
    elif tag == _S.STAR_ANTI_PALINDROMIC:
        a, b = (c0 - c1) * HALF, -i * (c0 + c1) * HALF
    elif tag in (_S.T_EVEN, _S.T_PALINDROMIC, _S.T_ANTI_PALINDROMIC):
        a, b = c0, ZERO
    elif tag == _S.T_ODD:
        a, b = c1, ZERO
    else:
        raise InadmissibleError(f"{tag.value} pencils have no scalar rank-one terms")

    if encode(tag, a, b) != (c0, c1):
        raise DecompositionError(f"Factor ({c0}, {c1}) is not a {tag.value} scalar factor")
    if tag in HERMITIAN_FAMILY and not (is_real(a) and is_real(b)):
        raise DecompositionError(f"Factor ({c0}, {c1}) does not decode to real (a, b) for {tag.value}")
    return a, b
