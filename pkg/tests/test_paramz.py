"""
Structured low-rank parameter maps and named perturbations.
"""
import pytest
from hypothesis import given, strategies as st
from numpy.random import default_rng
from pydantic import ValidationError

from app.exceptions import DimensionMismatchError, InadmissibleError, PlacementError
from app.models.experiment import ParamVector, PerturbationRecipe, RecipeKind
from app.models.pencil import Pencil, StructureTag
from app.models.spectral import Eigenvalue
from app.services.exactnum import gaussian, rational
from app.services.paramz import (
    FORCED_S,
    RECIPE_STRUCTURES,
    adversarial_params,
    named_perturbation,
    param_dimensions,
    phi_general,
    phi_structured,
    resolve_s,
    sample_params,
    scalar_factor_roots,
    witness_parameters,
)
from app.services.pencil_ops import check_structure, normal_rank

S = StructureTag
R = RecipeKind


@pytest.mark.parametrize("tag,n,r,s,expected", [
    (S.HERMITIAN, 3, 3, 1, (2, 12)),
    (S.STAR_ODD, 2, 2, 0, (4, 4)),
    (S.SYMMETRIC, 2, 2, 0, (0, 8)),
    (S.T_EVEN, 3, 3, None, (0, 12)),
    (S.T_PALINDROMIC, 2, 1, None, (0, 2)),
    (S.SKEW_SYMMETRIC, 2, 2, None, (0, 6)),
    (S.NONE, 3, 2, 1, (0, 18)),
])
def test_param_dimensions(tag, n, r, s, expected):
    assert param_dimensions(tag, n, r, s) == expected


@pytest.mark.parametrize("tag,r,s", [
    (S.SKEW_SYMMETRIC, 3, None),
    (S.T_EVEN, 3, 0),
    (S.HERMITIAN, 3, 2),
    (S.NONE, 2, 3),
    (S.HERMITIAN, 0, 0),
])
def test_inadmissible_signatures(tag, r, s):
    with pytest.raises(InadmissibleError):
        resolve_s(tag, r, s)


def test_forced_signatures():
    assert resolve_s(S.T_ODD, 5, None) == 2
    assert resolve_s(S.SKEW_SYMMETRIC, 4, 2) == 2
    assert resolve_s(S.HERMITIAN, 3, None) == 1
    assert resolve_s(S.NONE, 2, None) == 0


def admissible_signatures(n=3, max_rank=4):
    """Every admissible (tag, n, r, s) up to the rank bound, s = None where it is forced."""
    found = []
    for tag in StructureTag:
        for r in range(1, max_rank + 1):
            if tag == S.SKEW_SYMMETRIC and r % 2:
                continue
            if tag in FORCED_S:
                found.append((tag, n, r, None))
                continue
            upper = r if tag == S.NONE else r // 2
            found.extend((tag, n, r, s) for s in range(upper + 1))
    return found


@pytest.mark.parametrize("tag,n,r,s", admissible_signatures())
def test_phi_is_structured_and_low_rank(tag, n, r, s):
    for seed in range(200):
        x = sample_params(tag, n, r, s, default_rng([r, seed]), 5)
        E = phi_structured(tag, n, r, s, x)
        assert E.n == n
        assert E.structure == tag
        assert check_structure(E, tag), f"seed {seed}"
        assert normal_rank(E) <= r, f"seed {seed}"


@given(st.sampled_from(admissible_signatures(n=2)), st.integers(0, 2 ** 32 - 1))
def test_phi_low_rank_for_any_seed(signature, seed):
    tag, n, r, s = signature
    E = phi_structured(tag, n, r, s, sample_params(tag, n, r, s, default_rng(seed), 5))
    assert check_structure(E, tag)
    assert normal_rank(E) <= r


@pytest.mark.parametrize("tag,reals,expected", [
    (S.HERMITIAN, ["2", "-1"], Eigenvalue.finite(2)),
    (S.STAR_ODD, ["11/8", "11/4"], Eigenvalue.finite(gaussian(0, rational(-1, 2)))),
    (S.STAR_EVEN, ["3", "0"], Eigenvalue.infinity()),
    (S.SKEW_HERMITIAN, ["0", "0"], None),
])
def test_scalar_factor_roots(tag, reals, expected):
    x = ParamVector(reals=reals, complexes=["1", "1"])
    assert scalar_factor_roots(tag, 2, 1, 0, x) == [expected]


def test_paired_structures_have_no_scalar_roots():
    x = sample_params(S.T_EVEN, 2, 1, None, default_rng(3), 5)
    assert scalar_factor_roots(S.T_EVEN, 2, 1, None, x) == []


def test_sampling_is_reproducible():
    first = sample_params(S.HERMITIAN, 3, 2, 0, default_rng(9), 10)
    second = sample_params(S.HERMITIAN, 3, 2, 0, default_rng(9), 10)
    assert first == second
    assert len(first.reals) == 4
    assert len(first.complexes) == 6


def test_phi_general_layout():
    # r = 1, s = 0: v = alpha + lambda*beta, w = gamma
    x = ParamVector(complexes=["1", "0", "0", "1", "2", "3"])
    E = phi_general(2, 1, 0, x)
    expected = Pencil([["2", "3"], ["0", "0"]], [["0", "0"], ["2", "3"]])
    assert E == expected

    # r = 1, s = 1: v = alpha, w = gamma + lambda*delta
    x = ParamVector(complexes=["1", "0", "2", "3", "5", "7"])
    E = phi_general(2, 1, 1, x)
    assert E == Pencil([["2", "3"], ["0", "0"]], [["5", "7"], ["0", "0"]])


def test_phi_rejects_wrong_lengths():
    with pytest.raises(DimensionMismatchError):
        phi_structured(S.HERMITIAN, 2, 1, 0, ParamVector(reals=["1"], complexes=["1", "1"]))
    with pytest.raises(DimensionMismatchError):
        phi_general(2, 1, 0, ParamVector(complexes=["1"] * 5))


def test_hermitian_parameters_are_real():
    with pytest.raises(ValidationError):
        ParamVector(reals=["i"], complexes=[])


def test_adversarial_params():
    zero, ones, first = adversarial_params(S.T_EVEN, 3, 2)
    assert phi_structured(S.T_EVEN, 3, 2, None, zero).is_zero()
    assert len(ones.complexes) == param_dimensions(S.T_EVEN, 3, 2)[1]
    E = phi_structured(S.T_EVEN, 3, 2, None, first)
    assert check_structure(E, S.T_EVEN)
    assert normal_rank(E) <= 2


RECIPES = [
    (PerturbationRecipe(kind=R.E_K, value="3", size=2), 4, 1),
    (PerturbationRecipe(kind=R.F, value="-2"), 3, 0),
    (PerturbationRecipe(kind=R.G, value="1+i", size=2, second=1), 4, 1),
    (PerturbationRecipe(kind=R.F_TILDE, value="1/2", size=2), 5, 1),
    (PerturbationRecipe(kind=R.G_TILDE, value="2-i", size=1, second=2), 6, 0),
    (PerturbationRecipe(kind=R.GAMMA_PAIR, value="-4", size=3), 8, 2),
    (PerturbationRecipe(kind=R.GAMMA_PAIR, value="1", size=1), 2, 0),
    (PerturbationRecipe(kind=R.GAMMA_PAIR_LAMBDA, value="9/4", size=2), 4, 0),
    (PerturbationRecipe(kind=R.M_K, value="5", size=1), 4, 1),
    (PerturbationRecipe(kind=R.N_PAIR, value="3", size=1, second=1), 6, 0),
    (PerturbationRecipe(kind=R.ODD_INF_CORNER, value="-1", size=3), 3, 0),
    (PerturbationRecipe(kind=R.LAMBDA_CORNER, value="4"), 2, 1),
]


@pytest.mark.parametrize("recipe,frame,offset", RECIPES)
def test_witness_parameters_reproduce_named_perturbations(recipe, frame, offset):
    E = named_perturbation(recipe, frame, offset)
    tag = RECIPE_STRUCTURES[recipe.kind]
    assert E.structure == tag
    assert check_structure(E, tag)

    found_tag, r, s, x = witness_parameters(recipe, frame, offset)
    assert found_tag == tag
    assert phi_structured(tag, frame, r, s, x) == E
    assert normal_rank(E) <= r


def test_named_perturbation_entries():
    G = named_perturbation(PerturbationRecipe(kind=R.G, value="1+i", size=2, second=1), 3)
    assert G.A[0, 2] == gaussian(1, 1)
    assert G.A[2, 0] == gaussian(1, -1)

    M = named_perturbation(PerturbationRecipe(kind=R.M_K, value="5", size=1), 3)
    assert (M.A[0, 2], M.B[0, 2]) == (gaussian(5), gaussian(1))
    assert (M.A[2, 0], M.B[2, 0]) == (gaussian(-5), gaussian(1))

    gamma = named_perturbation(PerturbationRecipe(kind=R.GAMMA_PAIR, value="2", size=2), 4)
    assert gamma.A[0, 0] == gamma.A[0, 3] == gamma.A[3, 3] == gaussian(2)
    assert gamma.B[0, 0] == gaussian(0)


def test_witness_needs_square_parameters():
    with pytest.raises(InadmissibleError):
        witness_parameters(PerturbationRecipe(kind=R.GAMMA_PAIR, value="2", size=1), 4)
    with pytest.raises(InadmissibleError):
        witness_parameters(PerturbationRecipe(kind=R.F, value="i"), 2)


def test_placement_and_recipe_validation():
    with pytest.raises(PlacementError):
        named_perturbation(PerturbationRecipe(kind=R.M_K, value="1", size=2), 4)
    with pytest.raises(PlacementError):
        named_perturbation(PerturbationRecipe(kind=R.F, value="1"), 2, 2)
    with pytest.raises(ValidationError):
        PerturbationRecipe(kind=R.G, value="1", size=1)
    with pytest.raises(ValidationError):
        PerturbationRecipe(kind=R.F, value="1", second=2)
