"""
Exact eigenstructure queries.
Determinant polynomial, regularity, local Smith reduction, Sylvester root counts and new-eigenvalue profiling.
"""
import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

from app.exceptions import DimensionMismatchError, InadmissibleError, SingularPencilError, ZeroPolynomialError
from app.models.experiment import NewEigenvalueProfile
from app.models.pencil import Pencil
from app.models.spectral import Eigenvalue
from app.services import matrices
from app.services.exactnum import ZERO, gaussian, inv
from app.services.pencil_ops import evaluate, normal_rank, reversal
from app.services.polynomials import (
    LAM,
    POLY_RING,
    Poly,
    constant,
    degree,
    linear,
    root_multiplicity,
    shift_down,
    sylvester_matrix,
    truncate,
    valuation,
)

logger = logging.getLogger(__name__)

MultiplicityList = Tuple[int, ...]


class CharData(NamedTuple):
    """det(A + lambda*B) and n - deg; the deficiency is None for a singular pencil."""
    det_poly: Poly
    degree_deficiency: Optional[int]


def det_poly(P: Pencil) -> CharData:
    """
    Exact determinant polynomial by interpolation at lambda = 0, 1, ..., n.

    Args:
        P: Square pencil

    Returns:
        CharData with the determinant and its degree deficiency
    """
    if not P.is_square:
        raise DimensionMismatchError(f"Determinant of non-square pencil {P.shape}")
    n = P.n
    points = [gaussian(k) for k in range(n + 1)]
    values = [matrices.det(evaluate(P, z)) for z in points]

    result = POLY_RING.zero
    for k, (zk, yk) in enumerate(zip(points, values)):
        if not yk:
            continue
        basis = constant(yk)
        for j, zj in enumerate(points):
            if j != k:
                basis = basis * (LAM - zj) * inv(zk - zj)
        result += basis

    deficiency = n - degree(result) if result else None
    return CharData(result, deficiency)


def is_regular(P: Pencil) -> bool:
    return P.is_square and bool(det_poly(P).det_poly)


def _require_regular(P: Pencil) -> CharData:
    if not P.is_square:
        raise SingularPencilError(f"Pencil of shape {P.shape} is not square")
    char = det_poly(P)
    if not char.det_poly:
        raise SingularPencilError("Pencil is singular: det(A + lambda*B) vanishes identically")
    return char


def _local_smith_valuations(entries: List[List[Poly]], precision: int) -> List[int]:
    """
    Valuations of the local Smith form at lambda = 0 over truncated power series.

    The pivot is an entry of minimal valuation, ties broken by lowest (row, col).
    """
    M = [[truncate(p, precision) for p in row] for row in entries]
    found = []
    while M and M[0]:
        best = None
        for i, row in enumerate(M):
            for j, p in enumerate(row):
                if p:
                    v = valuation(p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, pi, pj = best
        pivot_row = M[pi]
        unit = shift_down(pivot_row[pj], v)
        reduced = []
        for i, row in enumerate(M):
            if i == pi:
                continue
            x = row[pj]
            if x:
                factor = shift_down(x, v)
                row = [truncate(unit * a - factor * b, precision) for a, b in zip(row, pivot_row)]
            reduced.append([p for j, p in enumerate(row) if j != pj])
        M = reduced
        found.append(v)
    return found


def partial_multiplicities(P: Pencil, eig: Eigenvalue) -> MultiplicityList:
    """
    Partial multiplicities of a regular pencil at a finite or infinite eigenvalue.

    Args:
        P: Regular pencil
        eig: Eigenvalue reference; infinity is read off the reversal at 0

    Returns:
        Sizes sorted non-increasing; empty when eig is not an eigenvalue
    """
    if eig.is_infinite:
        return partial_multiplicities(reversal(P), Eigenvalue(ZERO))
    char = _require_regular(P)
    a = root_multiplicity(char.det_poly, eig.value)
    if a == 0:
        return ()
    shifted = P.A + P.B * eig.value
    rows, cols = P.shape
    entries = [[linear(shifted[i, j], P.B[i, j]) for j in range(cols)] for i in range(rows)]
    sizes = sorted((v for v in _local_smith_valuations(entries, a + 1) if v > 0), reverse=True)
    if sum(sizes) != a:
        logger.warning(f"Local Smith sizes {sizes} at {eig} do not add up to the root multiplicity {a}")
    return tuple(sizes)


def alg_geo_multiplicity(P: Pencil, eig: Eigenvalue) -> Tuple[int, int]:
    sizes = partial_multiplicities(P, eig)
    return sum(sizes), len(sizes)


def geometric_multiplicity_by_rank(P: Pencil, eig: Eigenvalue) -> int:
    """n - rank(P(eig)), or n - rank(B) at infinity."""
    _require_regular(P)
    if eig.is_infinite:
        return P.n - matrices.rank(P.B)
    return P.n - matrices.rank(evaluate(P, eig.value))


def gcd_degree(p: Poly, q: Poly) -> int:
    """Degree of gcd(p, q) read as the rank deficiency of the Sylvester matrix."""
    S = sylvester_matrix(p, q)
    if not S:
        return 0
    return len(S) - matrices.rank(matrices.as_matrix(S))


def distinct_root_count(p: Poly) -> int:
    """Number of distinct roots of p in the algebraic closure."""
    if not p:
        raise ZeroPolynomialError("Root count of the zero polynomial")
    d = degree(p)
    if d == 0:
        return 0
    return d - gcd_degree(p, p.diff(LAM))


def dominates(M: Sequence[int], N: Sequence[int]) -> bool:
    """True iff M is at least as long as N and M_j >= N_j for every j <= len(N)."""
    if len(M) < len(N):
        return False
    return all(m >= n for m, n in zip(M, N))


def _strip_shared_roots(q: Poly, reference: Poly) -> Poly:
    while True:
        g = q.gcd(reference)
        if degree(g) <= 0:
            return q
        q = q.exquo(g)


def new_eigenvalue_profile(L: Pencil, perturbed: Pencil, mu: int) -> NewEigenvalueProfile:
    """
    Check that every eigenvalue of the perturbed pencil not shared with L has multiplicity mu.

    Args:
        L: Unperturbed regular pencil
        perturbed: L + E, regular
        mu: Expected multiplicity of every new eigenvalue (1 or 2)

    Returns:
        NewEigenvalueProfile with the verdict and counts
    """
    if mu not in (1, 2):
        raise InadmissibleError(f"New-eigenvalue multiplicity must be 1 or 2, got {mu}")
    base = _require_regular(L)
    char = _require_regular(perturbed)

    q = _strip_shared_roots(char.det_poly, base.det_poly)
    d = degree(q)
    new_infinite = char.degree_deficiency if base.degree_deficiency == 0 else 0

    if d == 0:
        distinct, passed = 0, True
    elif mu == 1:
        distinct = distinct_root_count(q)
        passed = distinct == d
    else:
        g = q.gcd(q.diff(LAM))
        quotient, remainder = q.div(g * g)
        distinct = degree(g)
        passed = not remainder and degree(quotient) == 0 and distinct_root_count(g) == degree(g)

    passed = passed and new_infinite in (0, mu)
    if not passed:
        logger.warning(f"New eigenvalues fail the multiplicity-{mu} profile (remaining degree {d})")
    return NewEigenvalueProfile(
        mu=mu,
        remaining_degree=d,
        distinct_new_roots=distinct,
        new_infinite_multiplicity=new_infinite,
        passed=passed,
    )