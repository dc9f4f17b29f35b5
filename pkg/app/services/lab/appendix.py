"""
Closed-form determinant checks for the rank-one gamma perturbations of alternating pairs.
"""
import logging
from typing import Iterable, Optional

from app.config import settings
from app.exceptions import InadmissibleError
from app.models.experiment import AppendixCheck, AppendixReport, PerturbationRecipe, RecipeKind
from app.models.fields import to_rational
from app.models.pencil import Pencil
from app.services import matrices
from app.services.canon.base import pair_layout
from app.services.exactnum import format_rational, gaussian
from app.services.paramz import named_perturbation
from app.services.polynomials import LAM, Poly, constant, format_poly
from app.services.smith import det_poly

logger = logging.getLogger(__name__)


def _shifted(n: int, sign_lambda: int, sign_shift: int) -> Pencil:
    """R(sign_lambda * lambda * I + sign_shift * N)."""
    R = matrices.reverse_identity(n)
    RN = matrices.matmul(R, matrices.shift_matrix(n))
    return Pencil(RN * gaussian(sign_shift), R * gaussian(sign_lambda))


def even_alternating_pair(n_r: int) -> Pencil:
    """R * diag(J_{n_r}(-lambda), J_{n_r}(lambda)) = [[0, R(lambda I + N)], [R(N - lambda I), 0]]."""
    return pair_layout(_shifted(n_r, 1, 1), _shifted(n_r, -1, 1))


def odd_alternating_pair(n_r: int) -> Pencil:
    """[[0, R(lambda I + N)], [R(lambda I - N), 0]]."""
    return pair_layout(_shifted(n_r, 1, 1), _shifted(n_r, 1, -1))


def _check(identity: str, k: int, gamma, block: Pencil, recipe: PerturbationRecipe, expected: Poly) -> AppendixCheck:
    perturbed = block + named_perturbation(recipe, block.n)
    observed = det_poly(perturbed).det_poly
    passed = observed == expected
    if not passed:
        logger.warning(f"{identity} fails at k={k}, gamma={format_rational(gamma)}")
    return AppendixCheck(
        identity=identity,
        k=k,
        gamma=format_rational(gamma),
        expected=format_poly(expected),
        observed=format_poly(observed),
        passed=passed,
    )


def verify_appendix(k_max: Optional[int] = None, gammas: Optional[Iterable] = None) -> AppendixReport:
    """
    Check both gamma determinant identities exactly for k = 1..k_max.

    Odd blocks (n_r = 2k+1, gamma uu^T): det = lambda^{2k+2} (lambda^{2k} - 2 gamma).
    Even blocks (n_r = 2k, gamma lambda uu^T): det = lambda^{2k+2} (lambda^{2k-2} + 2 gamma).
    The n_r = 1 block, where u reduces to e_1, gives lambda^2.

    Args:
        k_max: Largest k, defaults to APPENDIX_KMAX
        gammas: Nonzero rationals, defaults to APPENDIX_GAMMAS

    Returns:
        AppendixReport with one check per (identity, k, gamma)
    """
    k_max = k_max if k_max is not None else settings.APPENDIX_KMAX
    gammas = [to_rational(g) for g in (gammas if gammas is not None else settings.APPENDIX_GAMMAS)]
    if k_max < 1:
        raise InadmissibleError(f"k_max must be >= 1, got {k_max}")
    if any(not g for g in gammas):
        raise InadmissibleError("Gamma values must be nonzero")

    checks = []
    for gamma in gammas:
        twice = constant(gaussian(2 * gamma))
        checks.append(_check(
            "gamma-pair-n1", 0, gamma, even_alternating_pair(1),
            PerturbationRecipe(kind=RecipeKind.GAMMA_PAIR, value=gaussian(gamma), size=1),
            LAM ** 2,
        ))
        for k in range(1, k_max + 1):
            n_r = 2 * k + 1
            checks.append(_check(
                "gamma-pair-odd", k, gamma, even_alternating_pair(n_r),
                PerturbationRecipe(kind=RecipeKind.GAMMA_PAIR, value=gaussian(gamma), size=n_r),
                LAM ** (2 * k + 2) * (LAM ** (2 * k) - twice),
            ))
            n_r = 2 * k
            checks.append(_check(
                "gamma-pair-lambda-even", k, gamma, odd_alternating_pair(n_r),
                PerturbationRecipe(kind=RecipeKind.GAMMA_PAIR_LAMBDA, value=gaussian(gamma), size=n_r),
                LAM ** (2 * k + 2) * (LAM ** (2 * k - 2) + twice),
            ))

    report = AppendixReport(checks=checks)
    logger.info(f"Appendix identities: {sum(c.passed for c in checks)}/{len(checks)} passed")
    return report
