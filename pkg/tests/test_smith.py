"""
Determinant, partial multiplicities and new-eigenvalue profiles.
Partial multiplicities are cross-checked against kernel dimensions of block Toeplitz matrices.
"""
import pytest
from hypothesis import given, settings, strategies as st

from app.exceptions import InadmissibleError, SingularPencilError, ZeroPolynomialError
from app.models.pencil import Pencil
from app.models.spectral import BlockKind, Eigenvalue
from app.services import matrices
from app.services.canon import build_pencil, spectral_data
from app.services.exactnum import ZERO
from app.services.polynomials import LAM, POLY_RING
from app.services.smith import (
    alg_geo_multiplicity,
    det_poly,
    distinct_root_count,
    dominates,
    gcd_degree,
    geometric_multiplicity_by_rank,
    is_regular,
    new_eigenvalue_profile,
    partial_multiplicities,
)
from tests.helpers import BLOCK_CASES, E1, E2, E3, block, hermitian_real, spec


def weyr_sizes(P: Pencil, eig: Eigenvalue):
    """Block sizes from d_j = j*n - rank(T_j) with P0 on the diagonal and P1 below it."""
    n = P.n
    if eig.is_infinite:
        P0, P1 = P.B, P.A
    else:
        P0, P1 = P.A + P.B * eig.value, P.B
    counts, previous, j = [], 0, 1
    while True:
        T = matrices.zeros(j * n)
        for k in range(j):
            T[k * n:(k + 1) * n, k * n:(k + 1) * n] = P0
            if k:
                T[k * n:(k + 1) * n, (k - 1) * n:k * n] = P1
        d = j * n - matrices.rank(T)
        if d == previous:
            break
        counts.append(d - previous)
        previous, j = d, j + 1
    counts.append(0)
    sizes = []
    for size in range(len(counts) - 1, 0, -1):
        sizes += [size] * (counts[size - 1] - counts[size])
    return tuple(sizes)


def jordan_sum(*entries):
    return spec("none", *(block(BlockKind.JORDAN, size, eig) for eig, size in entries))


def test_det_poly_of_example(example_pencil):
    char = det_poly(example_pencil)
    assert char.det_poly == -(LAM - 1) ** 2
    assert char.degree_deficiency == 0


def test_degree_deficiency_counts_infinite_eigenvalues():
    L = build_pencil(spec("hermitian", block(BlockKind.HERMITIAN_INFINITY, 2, sign=1), hermitian_real("1", 1)))
    assert det_poly(L).degree_deficiency == 2
    assert partial_multiplicities(L, Eigenvalue.infinity()) == (2,)


def test_singular_pencils_are_rejected():
    L = Pencil([[1, 0], [1, 0]], [[0, 1], [0, 1]])
    assert not is_regular(L)
    assert det_poly(L).degree_deficiency is None
    with pytest.raises(SingularPencilError):
        partial_multiplicities(L, Eigenvalue.parse("1"))
    with pytest.raises(SingularPencilError):
        partial_multiplicities(Pencil([[1, 0]], [[0, 1]]), Eigenvalue.parse("1"))


@pytest.mark.parametrize("pencil_spec,eig,expected", [
    (E1, "1", (3, 1)),
    (E2, "1", (1, 1)),
    (E3, "1", (2,)),
    (E1, "2", ()),
    (jordan_sum(("1/2", 3), ("1/2", 1), ("inf", 2)), "1/2", (3, 1)),
    (jordan_sum(("1/2", 3), ("1/2", 1), ("inf", 2)), "inf", (2,)),
    (jordan_sum(("i", 2), ("-i", 1)), "i", (2,)),
])
def test_partial_multiplicities(pencil_spec, eig, expected):
    L = build_pencil(pencil_spec)
    assert partial_multiplicities(L, Eigenvalue.parse(eig)) == expected
    assert weyr_sizes(L, Eigenvalue.parse(eig)) == expected


def test_multiplicities_agree_with_rank_count():
    L = build_pencil(E1.model_copy(update={"seed_transform": 5}))
    one = Eigenvalue.parse("1")
    assert alg_geo_multiplicity(L, one) == (4, 2)
    assert geometric_multiplicity_by_rank(L, one) == 2


hermitian_blocks = st.lists(
    st.tuples(st.sampled_from(["0", "1", "-1/2"]), st.integers(1, 3), st.sampled_from([1, -1])),
    min_size=1,
    max_size=3,
).filter(lambda items: sum(size for _, size, _ in items) <= 6)


@settings(max_examples=100)
@given(hermitian_blocks, st.integers(0, 10_000))
def test_multiplicities_survive_congruence(items, seed):
    built = spec("hermitian", *(hermitian_real(eig, size, sign) for eig, size, sign in items), seed_transform=seed)
    L = build_pencil(built)
    for eig, sizes in spectral_data(built).items():
        assert partial_multiplicities(L, eig) == tuple(sizes)
        assert weyr_sizes(L, eig) == tuple(sizes)


@pytest.mark.parametrize("structure,blk", BLOCK_CASES)
@settings(max_examples=100)
@given(seed=st.integers(0, 10_000))
def test_block_multiplicities_survive_congruence(structure, blk, seed):
    built = spec(structure, blk, seed_transform=seed)
    L = build_pencil(built)
    assert L == build_pencil(built)
    for eig, sizes in spectral_data(built).items():
        assert partial_multiplicities(L, eig) == tuple(sizes)
        assert weyr_sizes(L, eig) == tuple(sizes)


@pytest.mark.parametrize("M,N,expected", [
    ((3, 1), (2,), True),
    ((2,), (2, 1), False),
    ((1, 1), (2,), False),
    ((), (), True),
    ((4, 2, 1), (4, 2, 1), True),
])
def test_dominates(M, N, expected):
    assert dominates(M, N) is expected


def test_root_counts():
    assert distinct_root_count((LAM - 1) ** 2 * (LAM + 1)) == 2
    assert distinct_root_count(LAM ** 2 + 1) == 2
    assert distinct_root_count(POLY_RING.one * 3) == 0
    with pytest.raises(ZeroPolynomialError):
        distinct_root_count(POLY_RING.zero)
    assert gcd_degree((LAM - 1) ** 2 * (LAM - 2), (LAM - 1) * (LAM - 3)) == 1


def diagonal(*entries):
    """diag(a_k - lambda) with None giving the constant 1."""
    A = [[ZERO] * len(entries) for _ in entries]
    B = [[ZERO] * len(entries) for _ in entries]
    for k, a in enumerate(entries):
        A[k][k] = 1 if a is None else a
        B[k][k] = 0 if a is None else -1
    return Pencil(A, B)


def test_simple_new_eigenvalues():
    L = diagonal(1, 2)
    profile = new_eigenvalue_profile(L, diagonal(1, 3), 1)
    assert profile.passed
    assert profile.remaining_degree == 1
    assert not new_eigenvalue_profile(L, diagonal(1, 3), 2).passed
    assert not new_eigenvalue_profile(L, diagonal(3, 3), 1).passed


def test_double_new_eigenvalues():
    L = diagonal(1, 2, 2)
    profile = new_eigenvalue_profile(L, diagonal(1, 3, 3), 2)
    assert profile.passed
    assert profile.distinct_new_roots == 1
    assert not new_eigenvalue_profile(L, diagonal(1, 3, 4), 2).passed


def test_new_infinite_eigenvalues():
    L = diagonal(1, 2)
    profile = new_eigenvalue_profile(L, diagonal(1, None), 1)
    assert profile.new_infinite_multiplicity == 1
    assert profile.passed
    with pytest.raises(InadmissibleError):
        new_eigenvalue_profile(L, L, 3)
