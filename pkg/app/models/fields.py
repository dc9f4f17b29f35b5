"""
Annotated pydantic field types for exact scalars and eigenvalues.
Values are parsed from scalar text on input and written back as text.
"""
from typing import Annotated, Tuple

from pydantic import BeforeValidator, PlainSerializer
from sympy.polys.domains import QQ

from app.models.pencil import PolyVector
from app.models.spectral import Eigenvalue
from app.services.exactnum import (
    GaussianRational,
    Rational,
    format_rational,
    format_scalar,
    parse_rational,
    to_gaussian,
)


def to_rational(value) -> Rational:
    if isinstance(value, Rational):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, GaussianRational):
        if value.y != 0:
            raise ValueError(f"Expected a real scalar, got {format_scalar(value)}")
        return value.x
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"Not a rational: {value!r}")
    return QQ(value)


def to_multiplicities(value) -> Tuple[int, ...]:
    sizes = tuple(int(v) for v in value)
    if any(v < 1 for v in sizes):
        raise ValueError(f"Multiplicities must be positive: {sizes}")
    return tuple(sorted(sizes, reverse=True))


Scalar = Annotated[GaussianRational, BeforeValidator(to_gaussian), PlainSerializer(format_scalar, return_type=str)]

RationalValue = Annotated[Rational, BeforeValidator(to_rational), PlainSerializer(format_rational, return_type=str)]

EigenvalueValue = Annotated[Eigenvalue, BeforeValidator(Eigenvalue.parse), PlainSerializer(str, return_type=str)]

Multiplicities = Annotated[Tuple[int, ...], BeforeValidator(to_multiplicities)]


def to_poly_vector(value) -> PolyVector:
    """Accept a PolyVector or a list whose entries are scalars or [c0, c1] pairs."""
    if isinstance(value, PolyVector):
        return value
    c0, c1 = [], []
    for entry in value:
        if isinstance(entry, (list, tuple)):
            if len(entry) != 2:
                raise ValueError(f"Vector entries are [c0, c1] pairs, got {entry!r}")
            c0.append(to_gaussian(entry[0]))
            c1.append(to_gaussian(entry[1]))
        else:
            c0.append(to_gaussian(entry))
            c1.append(to_gaussian(0))
    return PolyVector(c0, c1)


def dump_poly_vector(vector: PolyVector):
    return [[format_scalar(a), format_scalar(b)] for a, b in zip(vector.c0, vector.c1)]


PolyVectorValue = Annotated[PolyVector, BeforeValidator(to_poly_vector), PlainSerializer(dump_poly_vector)]
