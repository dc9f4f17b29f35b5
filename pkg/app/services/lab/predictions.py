"""
Generic-change predictions.
Decides which multiplicity rule applies to an eigenvalue of a structured pencil under a rank-r change.
"""
import logging
from typing import Optional, Sequence, Tuple

from app.exceptions import InadmissibleError
from app.models.experiment import EigenClass, Prediction
from app.models.pencil import StructureTag
from app.models.spectral import Eigenvalue
from app.services.exactnum import ONE

logger = logging.getLogger(__name__)

_S = StructureTag

# Rows where an odd n_{r+1} under (P) grows by one
RAISE_ROWS = {
    (_S.T_EVEN, EigenClass.ZERO),
    (_S.T_ODD, EigenClass.INFINITY),
    (_S.T_PALINDROMIC, EigenClass.PLUS_ONE),
    (_S.T_ANTI_PALINDROMIC, EigenClass.MINUS_ONE),
}

# Rows keyed on the parity of r; an even n_{r+1} under (P) grows by one
PARITY_ROWS = {
    (_S.T_EVEN, EigenClass.INFINITY),
    (_S.T_ODD, EigenClass.ZERO),
    (_S.T_PALINDROMIC, EigenClass.MINUS_ONE),
    (_S.T_ANTI_PALINDROMIC, EigenClass.PLUS_ONE),
}

ALTERNATING = (_S.T_EVEN, _S.T_ODD)
PALINDROMIC = (_S.T_PALINDROMIC, _S.T_ANTI_PALINDROMIC)


def property_P(sizes: Sequence[int], r: int) -> bool:
    """
    n_r = n_{r+1} = ... = n_{r+d} > n_{r+d+1} with d odd (1-based, missing entries are 0).
    """
    if r < 1:
        raise InadmissibleError(f"Rank must be >= 1, got {r}")
    sizes = list(sizes)
    if r > len(sizes):
        return False
    value = sizes[r - 1]
    d = 0
    while r + d < len(sizes) and sizes[r + d] == value:
        d += 1
    return d % 2 == 1


def classify_eigenvalue(tag: StructureTag, eig: Eigenvalue) -> EigenClass:
    """Exact table class: 0 and infinity for alternating structures, +1 and -1 for palindromic ones."""
    tag = StructureTag(tag)
    if tag in ALTERNATING:
        if eig.is_infinite:
            return EigenClass.INFINITY
        if eig.is_zero:
            return EigenClass.ZERO
    elif tag in PALINDROMIC and not eig.is_infinite:
        if eig.value == ONE:
            return EigenClass.PLUS_ONE
        if eig.value == -ONE:
            return EigenClass.MINUS_ONE
    return EigenClass.OTHER


def _check_class(tag: StructureTag, eig_class: EigenClass) -> None:
    if tag in ALTERNATING and eig_class in (EigenClass.PLUS_ONE, EigenClass.MINUS_ONE):
        raise InadmissibleError(f"{tag.value} predictions have no {eig_class.value} class")
    if tag in PALINDROMIC and eig_class in (EigenClass.ZERO, EigenClass.INFINITY):
        raise InadmissibleError(f"{tag.value} predictions have no {eig_class.value} class")


def _rule(tag: StructureTag, eig_class: EigenClass, sizes: Tuple[int, ...], r: int) -> Tuple[Tuple[int, ...], str]:
    rest = sizes[r:]
    critical = rest[0] if rest else 0
    holds = property_P(sizes, r)

    if (tag, eig_class) in RAISE_ROWS:
        if rest and critical % 2 == 1 and holds:
            return (critical + 1,) + rest[1:], "raise-odd-critical"
        return rest, "truncate"

    if (tag, eig_class) in PARITY_ROWS:
        raised = bool(rest) and critical % 2 == 0 and holds
        if r % 2 == 0:
            if raised:
                return (critical + 1,) + rest[1:], "even-rank-raise-even-critical"
            return rest, "even-rank-truncate"
        # fewer than r blocks: the eigenvalue disappears
        if len(sizes) < r:
            return (), "odd-rank-exhausted"
        if raised:
            return (critical + 1,) + rest[1:] + (1,), "odd-rank-raise-even-critical-append-one"
        return rest + (1,), "odd-rank-truncate-append-one"

    return rest, "truncate"


def predict(tag: StructureTag, eig_class: EigenClass, sizes: Sequence[int], r: int) -> Prediction:
    """
    Generic multiplicities at one eigenvalue after a rank-r structured change.

    Skew-symmetric lists use the paired convention: each entry is the total
    size 2k of a pair of k-blocks and rank r removes r/2 pairs.

    Args:
        tag: Structure of the pencil and of the perturbation
        eig_class: Class of the eigenvalue (see classify_eigenvalue)
        sizes: Partial multiplicities before the change, non-increasing
        r: Rank of the perturbation

    Returns:
        Prediction with the expected list sorted non-increasing

    Raises:
        InadmissibleError: the class does not exist for the structure or the rank is illegal
    """
    tag = StructureTag(tag)
    eig_class = EigenClass(eig_class)
    if r < 1:
        raise InadmissibleError(f"Rank must be >= 1, got {r}")
    sizes = tuple(sizes)
    if any(a < b for a, b in zip(sizes, sizes[1:])):
        raise InadmissibleError(f"Multiplicities must be non-increasing, got {sizes}")
    _check_class(tag, eig_class)

    mu = 1
    if tag == _S.SKEW_SYMMETRIC:
        if r % 2:
            raise InadmissibleError("Skew-symmetric perturbations have even rank")
        expected, row, mu = sizes[r // 2:], "skew-pair-truncate", 2
    elif tag == _S.NONE:
        expected, row = sizes[r:], "unstructured-truncate"
    else:
        expected, row = _rule(tag, eig_class, sizes, r)

    logger.debug(f"{tag.value} {eig_class.value} {sizes} r={r} -> {expected} ({row})")
    return Prediction(
        structure=tag,
        eig_class=eig_class,
        original=sizes,
        rank=r,
        expected=tuple(sorted(expected, reverse=True)),
        new_eigenvalue_mult=mu,
        prediction_row=row,
    )


def pair_up(sizes: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """Paired convention for skew-symmetric lists: (k, k, j, j) -> (2k, 2j); None when the sizes do not pair up."""
    sizes = sorted(sizes, reverse=True)
    if len(sizes) % 2 or any(sizes[i] != sizes[i + 1] for i in range(0, len(sizes), 2)):
        logger.warning(f"Skew-symmetric multiplicities {tuple(sizes)} are not paired")
        return None
    return tuple(2 * k for k in sizes[0::2])
