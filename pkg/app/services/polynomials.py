"""
Univariate polynomials in lambda over Q(i).
Thin helpers on top of sympy's sparse polynomial ring.
"""
import logging
from typing import List, Sequence

from sympy.polys.domains import QQ_I
from sympy.polys.rings import ring

from app.services.exactnum import GaussianRational, ZERO, conjugate, format_scalar, to_gaussian

logger = logging.getLogger(__name__)

POLY_RING, LAM = ring("lam", QQ_I)
Poly = POLY_RING.dtype


def constant(c: GaussianRational) -> Poly:
    return POLY_RING.ground_new(c)


def linear(c0: GaussianRational, c1: GaussianRational) -> Poly:
    """The polynomial c0 + lambda*c1."""
    return POLY_RING.from_dict({(0,): c0, (1,): c1})


def from_coefficients(coefficients: Sequence[GaussianRational]) -> Poly:
    """Build a polynomial from a constant-first coefficient list."""
    return POLY_RING.from_dict({(k,): c for k, c in enumerate(coefficients)})


def coefficient(p: Poly, k: int) -> GaussianRational:
    return p.get((k,), ZERO)


def degree(p: Poly) -> int:
    """Degree with the zero polynomial mapped to -1."""
    if not p:
        return -1
    return max(monom[0] for monom in p.itermonoms())


def coefficients(p: Poly) -> List[GaussianRational]:
    """Constant-first coefficient list of length degree + 1."""
    return [coefficient(p, k) for k in range(degree(p) + 1)]


def valuation(p: Poly) -> int:
    """Lowest exponent present; p must be nonzero."""
    return min(monom[0] for monom in p.itermonoms())


def shift_down(p: Poly, v: int) -> Poly:
    """Divide by lambda**v where v <= valuation(p)."""
    return POLY_RING.from_dict({(monom[0] - v,): c for monom, c in p.iterterms()})


def truncate(p: Poly, precision: int) -> Poly:
    """Reduce modulo lambda**precision."""
    return POLY_RING.from_dict({monom: c for monom, c in p.iterterms() if monom[0] < precision})


def evaluate(p: Poly, z: GaussianRational) -> GaussianRational:
    result = ZERO
    for c in reversed(coefficients(p)):
        result = result * z + c
    return result


def taylor_shift(p: Poly, a: GaussianRational) -> Poly:
    """Return p(lambda + a)."""
    result = POLY_RING.zero
    for c in reversed(coefficients(p)):
        result = result * (LAM + a) + c
    return result


def root_multiplicity(p: Poly, a: GaussianRational) -> int:
    """Multiplicity of a as a root of the nonzero polynomial p."""
    return valuation(taylor_shift(p, a))


def conjugate_poly(p: Poly) -> Poly:
    return POLY_RING.from_dict({monom: conjugate(c) for monom, c in p.iterterms()})


def negate_variable(p: Poly) -> Poly:
    """Return p(-lambda)."""
    return POLY_RING.from_dict({monom: (-c if monom[0] % 2 else c) for monom, c in p.iterterms()})


def sylvester_matrix(p: Poly, q: Poly) -> List[List[GaussianRational]]:
    """
    Sylvester matrix S(p, q) of size deg p + deg q.

    Its rank deficiency equals the degree of gcd(p, q).
    """
    m, k = degree(p), degree(q)
    size = m + k
    p_high = list(reversed(coefficients(p)))
    q_high = list(reversed(coefficients(q)))
    rows = []
    for shift in range(k):
        row = [ZERO] * size
        row[shift:shift + m + 1] = p_high
        rows.append(row)
    for shift in range(m):
        row = [ZERO] * size
        row[shift:shift + k + 1] = q_high
        rows.append(row)
    return rows


def format_poly(p: Poly) -> List[str]:
    """Constant-first coefficient list of scalar strings."""
    return [format_scalar(c) for c in coefficients(p)]


def parse_poly(items: Sequence) -> Poly:
    return from_coefficients([to_gaussian(item) for item in items])
