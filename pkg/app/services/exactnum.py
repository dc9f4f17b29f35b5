"""
Exact arithmetic over the Gaussian rationals Q(i).
Scalars are sympy domain elements: QQ for Rational, QQ_I for GaussianRational.
"""
import logging
from typing import Optional, Union

from numpy.random import Generator
from sympy import integer_nthroot
from sympy.polys.domains import QQ, QQ_I

from app.exceptions import DivisionByZeroError, ParseError

logger = logging.getLogger(__name__)

Rational = type(QQ(1))
GaussianRational = QQ_I.dtype

ZERO = QQ_I.zero
ONE = QQ_I.one
I_UNIT = QQ_I(0, 1)
HALF = QQ_I(QQ(1, 2), 0)

ScalarLike = Union[GaussianRational, Rational, int, str]


def rational(numerator: int, denominator: int = 1) -> Rational:
    """Build a Rational in lowest terms."""
    if denominator == 0:
        raise DivisionByZeroError(f"{numerator}/0")
    return QQ(int(numerator), int(denominator))


def gaussian(re: Union[Rational, int] = 0, im: Union[Rational, int] = 0) -> GaussianRational:
    """Build a GaussianRational from its real and imaginary parts."""
    return QQ_I(_as_rational(re), _as_rational(im))


def to_gaussian(value: ScalarLike) -> GaussianRational:
    """
    Coerce ints, Rationals and scalar text into a GaussianRational.

    Args:
        value: Scalar in any supported form

    Returns:
        The exact GaussianRational
    """
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    return QQ_I(_as_rational(value), 0)


def _as_rational(value) -> Rational:
    if isinstance(value, bool):
        raise ParseError(f"Not a scalar: {value!r}")
    if isinstance(value, int) or hasattr(value, '__index__'):
        return QQ(int(value))
    if isinstance(value, str):
        return parse_rational(value)
    return QQ.convert(value)


# Field operations

def add(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    return a + b


def sub(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    return a - b


def mul(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    return a * b


def neg(a: GaussianRational) -> GaussianRational:
    return -a


def div(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    """Exact quotient; raises DivisionByZeroError for a zero divisor."""
    if not b:
        raise DivisionByZeroError(f"{format_scalar(a)} / 0")
    return a / b


def inv(a: GaussianRational) -> GaussianRational:
    return div(ONE, a)


def conjugate(z: GaussianRational) -> GaussianRational:
    """Negate the imaginary part."""
    return QQ_I(z.x, -z.y)


def is_real(z: GaussianRational) -> bool:
    return z.y == 0


def real_part(z: GaussianRational) -> Rational:
    return z.x


def imag_part(z: GaussianRational) -> Rational:
    return z.y


def rational_sqrt(q: Rational) -> Optional[Rational]:
    """Exact square root of a non-negative Rational, or None if irrational."""
    if q < 0:
        return None
    num_root, num_exact = integer_nthroot(int(q.numerator), 2)
    den_root, den_exact = integer_nthroot(int(q.denominator), 2)
    if not (num_exact and den_exact):
        return None
    return QQ(num_root, den_root)


def signed_square_root(q: Rational) -> Optional[GaussianRational]:
    """
    Return d in Q(i) with d*d = q when q is plus or minus a rational square.

    Args:
        q: Real rational value

    Returns:
        d, purely real or purely imaginary, or None
    """
    root = rational_sqrt(abs(q))
    if root is None:
        return None
    return QQ_I(root, 0) if q >= 0 else QQ_I(0, root)


# Sampling

def random_rational(rng: Generator, bound: int) -> Rational:
    """Numerator uniform in [-bound, bound], denominator uniform in [1, bound]."""
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    numerator = int(rng.integers(-bound, bound, endpoint=True))
    denominator = int(rng.integers(1, bound, endpoint=True))
    return QQ(numerator, denominator)


def random_scalar(rng: Generator, bound: int, real_only: bool = False) -> GaussianRational:
    """
    Draw a bounded-numerator Gaussian rational.

    Args:
        rng: Seeded numpy generator
        bound: Numerator and denominator bound
        real_only: Force a zero imaginary part

    Returns:
        The sampled scalar
    """
    re = random_rational(rng, bound)
    im = QQ(0) if real_only else random_rational(rng, bound)
    return QQ_I(re, im)


# Text format "a/b+c/d*i"

def format_rational(q: Rational) -> str:
    numerator, denominator = int(q.numerator), int(q.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


def parse_rational(text: str) -> Rational:
    """Parse "p" or "p/q" into a Rational."""
    text = text.strip()
    try:
        if '/' in text:
            numerator, denominator = text.split('/')
            if int(denominator) == 0:
                raise ParseError(f"Zero denominator in {text!r}")
            return QQ(int(numerator), int(denominator))
        return QQ(int(text))
    except ValueError as e:
        raise ParseError(f"Malformed rational {text!r}: {e}") from e


def format_scalar(z: GaussianRational) -> str:
    """Render z as "a/b+c/d*i"."""
    re, im = z.x, z.y
    if im == 0:
        return format_rational(re)
    if re == 0:
        if im == 1:
            return "i"
        if im == -1:
            return "-i"
        return f"{format_rational(im)}*i"
    sign = "+" if im > 0 else "-"
    magnitude = abs(im)
    if magnitude == 1:
        return f"{format_rational(re)}{sign}i"
    return f"{format_rational(re)}{sign}{format_rational(magnitude)}*i"


def parse_scalar(text: str) -> GaussianRational:
    """
    Parse scalar text.

    Accepts "3", "-1/2", "i", "-i", "3/5*i", "1/2+3/4*i", "1-i".

    Args:
        text: Scalar text

    Returns:
        The parsed GaussianRational
    """
    if not isinstance(text, str):
        raise ParseError(f"Scalar text expected, got {text!r}")
    body = text.replace(' ', '')
    if not body:
        raise ParseError("Empty scalar text")
    if not body.endswith('i'):
        return QQ_I(parse_rational(body), 0)

    body = body[:-1]
    if body.endswith('*'):
        body = body[:-1]
    split_at = max(body.rfind('+'), body.rfind('-'))
    if split_at > 0:
        re_text, im_text = body[:split_at], body[split_at:]
    else:
        re_text, im_text = "", body

    re = parse_rational(re_text) if re_text else QQ(0)
    if im_text in ("", "+"):
        im = QQ(1)
    elif im_text == "-":
        im = QQ(-1)
    else:
        im = parse_rational(im_text)
    return QQ_I(re, im)
