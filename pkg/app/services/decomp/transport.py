"""
Term-wise transport of rank-one terms along structure-changing maps.
"""
from typing import List, Tuple

from app.models.decomposition import PairedTerm
from app.models.pencil import PolyVector, Star, StructureTag
from app.services.decomp.split import CoefficientTerm
from app.services.exactnum import I_UNIT, conjugate
from app.services.pencil_ops import TransportMap, tag_star, transport_target

_M = TransportMap


def transport_coefficients(how: TransportMap, c0, c1):
    """The map applied to the 1 x 1 pencil c0 + lambda*c1."""
    if how == _M.TIMES_I:
        return c0 * I_UNIT, c1 * I_UNIT
    if how == _M.TIMES_NEG_I:
        return -c0 * I_UNIT, -c1 * I_UNIT
    if how == _M.LAMBDA_TIMES_IB:
        return c0, c1 * I_UNIT
    if how == _M.LAMBDA_TIMES_NEG_IB:
        return c0, -c1 * I_UNIT
    if how == _M.REVERSAL:
        return c1, c0
    if how == _M.CAYLEY_PLUS:
        return c0 + c1, c1 - c0
    return c0 - c1, c0 + c1


def transport_w(how: TransportMap, w: PolyVector, star: Star) -> PolyVector:
    """
    w' with v w'^star equal to the image of v w^star.

    Scalars c pulled through the star become conj(c) for conjugate transposes.
    """
    def pulled(c):
        return conjugate(c) if star == Star.CONJUGATE_TRANSPOSE else c

    if how in (_M.TIMES_I, _M.TIMES_NEG_I):
        c = I_UNIT if how == _M.TIMES_I else -I_UNIT
        return w.scale(pulled(c))
    if how in (_M.LAMBDA_TIMES_IB, _M.LAMBDA_TIMES_NEG_IB):
        c = I_UNIT if how == _M.LAMBDA_TIMES_IB else -I_UNIT
        return PolyVector(w.c0, w.c1 * pulled(c))
    if how == _M.REVERSAL:
        return w.reversal()
    if how == _M.CAYLEY_PLUS:
        return PolyVector(w.c0 + w.c1, w.c1 - w.c0)
    return PolyVector(w.c0 - w.c1, w.c0 + w.c1)


def transport_terms(
    scalars: List[CoefficientTerm],
    paired: List[PairedTerm],
    route: Tuple[TransportMap, ...],
    source: StructureTag,
) -> Tuple[List[CoefficientTerm], List[PairedTerm], StructureTag]:
    """
    Move terms along each map of the route in turn.

    Returns:
        (scalar terms, paired terms, final structure)
    """
    tag = source
    for how in route:
        star = tag_star(tag)
        scalars = [CoefficientTerm(*transport_coefficients(how, t.c0, t.c1), t.u) for t in scalars]
        paired = [PairedTerm(v=t.v, w=transport_w(how, t.w, star)) for t in paired]
        tag = transport_target(tag, how)
    return scalars, paired, tag
