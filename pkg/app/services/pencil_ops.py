"""
Pencil operations: structure predicates, adjoints, reversal, evaluation,
normal rank, Cayley transformations and structure transport maps.
"""
import logging
from enum import Enum
from typing import Dict, Tuple

import numpy as np

from app.exceptions import DimensionMismatchError, InadmissibleError
from app.models.pencil import (
    Pencil,
    PolyVector,
    Star,
    StructureTag,
    Twist,
    rule_for,
)
from app.models.spectral import Eigenvalue
from app.services import matrices
from app.services.exactnum import GaussianRational, I_UNIT, ONE, ZERO, div, inv
from app.services.polynomials import POLY_RING

logger = logging.getLogger(__name__)

H = StructureTag.HERMITIAN
SYM = StructureTag.SYMMETRIC
SKH = StructureTag.SKEW_HERMITIAN
SKS = StructureTag.SKEW_SYMMETRIC
TE = StructureTag.T_EVEN
TO = StructureTag.T_ODD
TP = StructureTag.T_PALINDROMIC
TA = StructureTag.T_ANTI_PALINDROMIC
SE = StructureTag.STAR_EVEN
SO = StructureTag.STAR_ODD
SP = StructureTag.STAR_PALINDROMIC
SA = StructureTag.STAR_ANTI_PALINDROMIC
NONE = StructureTag.NONE


class TransportMap(str, Enum):
    """Structure-changing maps between pencil classes."""
    TIMES_I = "times_i"
    TIMES_NEG_I = "times_neg_i"
    LAMBDA_TIMES_IB = "lambda_times_iB"
    LAMBDA_TIMES_NEG_IB = "lambda_times_neg_iB"
    REVERSAL = "reversal"
    CAYLEY_PLUS = "cayley_plus"
    CAYLEY_MINUS = "cayley_minus"


_SELF = {SYM: SYM, SKS: SKS, NONE: NONE}

_SCALE_TABLE = {H: SKH, SKH: H, SE: SO, SO: SE, SP: SA, SA: SP, TE: TE, TO: TO, TP: TP, TA: TA, **_SELF}
_B_SCALE_TABLE = {SE: H, H: SE, SO: SKH, SKH: SO, TE: TE, TO: TO, **_SELF}
_REVERSAL_TABLE = {TE: TO, TO: TE, SE: SO, SO: SE, H: H, SKH: SKH, TP: TP, TA: TA, SP: SP, SA: SA, **_SELF}
_CAYLEY_PLUS_TABLE = {TP: TE, TE: TA, TA: TO, TO: TP, SP: SE, SE: SA, SA: SO, SO: SP, H: H, SKH: SKH, **_SELF}
_CAYLEY_MINUS_TABLE = {TE: TP, TP: TO, TO: TA, TA: TE, SE: SP, SP: SO, SO: SA, SA: SE, H: H, SKH: SKH, **_SELF}

TRANSPORT_TABLES: Dict[TransportMap, Dict[StructureTag, StructureTag]] = {
    TransportMap.TIMES_I: _SCALE_TABLE,
    TransportMap.TIMES_NEG_I: _SCALE_TABLE,
    TransportMap.LAMBDA_TIMES_IB: _B_SCALE_TABLE,
    TransportMap.LAMBDA_TIMES_NEG_IB: _B_SCALE_TABLE,
    TransportMap.REVERSAL: _REVERSAL_TABLE,
    TransportMap.CAYLEY_PLUS: _CAYLEY_PLUS_TABLE,
    TransportMap.CAYLEY_MINUS: _CAYLEY_MINUS_TABLE,
}


def adjoint(P: Pencil, star: Star) -> Pencil:
    """Coefficientwise transpose or conjugate transpose; lambda untouched."""
    if star == Star.TRANSPOSE:
        return Pencil(P.A.T, P.B.T, P.structure)
    return Pencil(matrices.conj(P.A).T, matrices.conj(P.B).T, P.structure)


def reversal(P: Pencil) -> Pencil:
    """B + lambda*A."""
    return Pencil(P.B, P.A, _REVERSAL_TABLE.get(P.structure, NONE))


def twist(P: Pencil, how: Twist) -> Pencil:
    if how == Twist.NEGATE:
        return Pencil(P.A, -P.B, P.structure)
    if how == Twist.REVERSE:
        return Pencil(P.B, P.A, P.structure)
    return P


def evaluate(P: Pencil, point: GaussianRational) -> np.ndarray:
    """A + point*B exactly."""
    return P.A + P.B * point


def structure_image(P: Pencil, tag: StructureTag) -> Pencil:
    """sign * twist(P)^star for the tag's rule."""
    rule = rule_for(tag)
    if rule is None:
        return P
    image = twist(adjoint(P, rule.star), rule.twist)
    return image if rule.sign == 1 else -image


def check_structure(P: Pencil, tag: StructureTag) -> bool:
    """True iff the defining coefficient identities of the tag hold exactly."""
    tag = StructureTag(tag)
    if tag == NONE:
        return True
    if not P.is_square:
        return False
    return structure_image(P, tag) == P


def normal_rank(P: Pencil) -> int:
    """
    Rank over the rational-function field.

    Fraction-free (Bareiss) elimination over Q(i)[lambda]; the pivot is the
    first nonzero entry of the current column at or below the current row.
    """
    rows, cols = P.shape
    if rows == 0 or cols == 0:
        return 0
    M = P.to_polys()
    previous = POLY_RING.one
    rank = 0
    for col in range(cols):
        pivot_row = next((i for i in range(rank, rows) if M[i][col]), None)
        if pivot_row is None:
            continue
        M[rank], M[pivot_row] = M[pivot_row], M[rank]
        pivot = M[rank][col]
        for i in range(rank + 1, rows):
            factor = M[i][col]
            for j in range(col + 1, cols):
                M[i][j] = (pivot * M[i][j] - factor * M[rank][j]).exquo(previous)
            M[i][col] = POLY_RING.zero
        previous = pivot
        rank += 1
        if rank == rows:
            break
    return rank


def cayley(P: Pencil, sign: int) -> Pencil:
    """
    Cayley transformation on coefficients.

    C_{+1}: (A, B) -> (A + B, -A + B); C_{-1}: (A, B) -> (A - B, A + B).
    """
    if sign == 1:
        return Pencil(P.A + P.B, P.B - P.A, _CAYLEY_PLUS_TABLE.get(P.structure, NONE))
    if sign == -1:
        return Pencil(P.A - P.B, P.A + P.B, _CAYLEY_MINUS_TABLE.get(P.structure, NONE))
    raise InadmissibleError(f"Cayley sign must be +1 or -1, got {sign}")


def transport_target(tag: StructureTag, how: TransportMap) -> StructureTag:
    table = TRANSPORT_TABLES[TransportMap(how)]
    if tag not in table:
        raise InadmissibleError(f"Map {how.value} has no documented target for {tag.value}")
    return table[tag]


def structure_transport(P: Pencil, how: TransportMap, tag: StructureTag = None) -> Tuple[Pencil, StructureTag]:
    """
    Apply a structure-changing map and report the target tag.

    Args:
        P: Input pencil
        how: The map to apply
        tag: Source tag, defaults to P.structure

    Returns:
        (transformed pencil, target tag)
    """
    how = TransportMap(how)
    source = StructureTag(tag) if tag is not None else P.structure
    target = transport_target(source, how)

    if how == TransportMap.TIMES_I:
        A, B = P.A * I_UNIT, P.B * I_UNIT
    elif how == TransportMap.TIMES_NEG_I:
        A, B = P.A * (-I_UNIT), P.B * (-I_UNIT)
    elif how == TransportMap.LAMBDA_TIMES_IB:
        A, B = P.A, P.B * I_UNIT
    elif how == TransportMap.LAMBDA_TIMES_NEG_IB:
        A, B = P.A, P.B * (-I_UNIT)
    elif how == TransportMap.REVERSAL:
        A, B = P.B, P.A
    elif how == TransportMap.CAYLEY_PLUS:
        A, B = P.A + P.B, P.B - P.A
    else:
        A, B = P.A - P.B, P.A + P.B
    return Pencil(A, B, target), target


def transport_eigenvalue(how: TransportMap, eig: Eigenvalue) -> Eigenvalue:
    """Where an eigenvalue of P lands after the map."""
    how = TransportMap(how)
    z = eig.value
    if how in (TransportMap.TIMES_I, TransportMap.TIMES_NEG_I):
        return eig
    if how == TransportMap.LAMBDA_TIMES_IB:
        return eig if z is None else Eigenvalue(z * (-I_UNIT))
    if how == TransportMap.LAMBDA_TIMES_NEG_IB:
        return eig if z is None else Eigenvalue(z * I_UNIT)
    if how == TransportMap.REVERSAL:
        if z is None:
            return Eigenvalue(ZERO)
        return Eigenvalue.infinity() if not z else Eigenvalue(inv(z))
    if how == TransportMap.CAYLEY_PLUS:
        if z is None:
            return Eigenvalue(ONE)
        if z == -ONE:
            return Eigenvalue.infinity()
        return Eigenvalue(div(z - ONE, z + ONE))
    if z is None:
        return Eigenvalue(-ONE)
    if z == ONE:
        return Eigenvalue.infinity()
    return Eigenvalue(div(ONE + z, ONE - z))


def outer_product(x: PolyVector, y: PolyVector, star: Star) -> Pencil:
    """
    The pencil x(lambda) y(lambda)^star for deg x + deg y <= 1.
    """
    if x.n == 0 or y.n == 0:
        raise DimensionMismatchError("Outer product of empty vectors")
    if max(x.degree, 0) + max(y.degree, 0) > 1:
        raise DimensionMismatchError("Outer product would exceed degree one")
    if star == Star.CONJUGATE_TRANSPOSE:
        y = y.conjugate()
    A = np.outer(x.c0, y.c0)
    B = np.outer(x.c0, y.c1) + np.outer(x.c1, y.c0)
    return Pencil(A, B)


def paired_term(v: PolyVector, w: PolyVector, tag: StructureTag) -> Pencil:
    """v w^star + sign * twist(w) v^star, or v w^T for unstructured pencils."""
    rule = rule_for(tag)
    if rule is None:
        return outer_product(v, w, Star.TRANSPOSE)
    first = outer_product(v, w, rule.star)
    second = outer_product(w.twisted(rule.twist), v, rule.star)
    total = first + second if rule.sign == 1 else first - second
    return total.with_structure(tag)


def scalar_term(c0: GaussianRational, c1: GaussianRational, u: PolyVector, tag: StructureTag) -> Pencil:
    """(c0 + lambda*c1) u u^star."""
    rule = rule_for(tag)
    star = rule.star if rule is not None else Star.TRANSPOSE
    return outer_product(u.times_linear(c0, c1), u, star).with_structure(tag)


def tag_star(tag: StructureTag) -> Star:
    rule = rule_for(tag)
    return rule.star if rule is not None else Star.TRANSPOSE
