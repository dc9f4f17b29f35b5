"""
Low-rank structured perturbation generators.
Parameter maps Phi_s for every structure, seeded parameter draws and named witness perturbations.
"""
import logging
from typing import List, Optional, Tuple

import numpy as np
from numpy.random import Generator

from app.exceptions import DimensionMismatchError, InadmissibleError, PlacementError
from app.models.decomposition import PairedTerm, RankOneDecomposition, ScalarTerm
from app.models.experiment import ParamVector, PerturbationRecipe, RecipeKind
from app.models.pencil import HERMITIAN_FAMILY, TRANSPOSE_FAMILY, Pencil, PolyVector, Star, StructureTag
from app.models.spectral import Eigenvalue
from app.services.decomp import reconstruct
from app.services.decomp.encoding import encode
from app.services.exactnum import (
    ONE,
    ZERO,
    GaussianRational,
    conjugate,
    div,
    is_real,
    neg,
    random_rational,
    random_scalar,
    signed_square_root,
    to_gaussian,
)
from app.services.pencil_ops import outer_product

logger = logging.getLogger(__name__)

_S = StructureTag

# Structures whose decomposition has the single signature s = floor(r/2)
FORCED_S = TRANSPOSE_FAMILY + (_S.SKEW_SYMMETRIC,)


def resolve_s(tag: StructureTag, r: int, s: Optional[int]) -> int:
    """
    Validate (tag, r, s), filling in s where the structure fixes it.

    Raises:
        InadmissibleError: the signature is not admissible
    """
    tag = StructureTag(tag)
    if r < 1:
        raise InadmissibleError(f"Rank must be >= 1, got {r}")
    if tag == _S.SKEW_SYMMETRIC and r % 2:
        raise InadmissibleError("Skew-symmetric pencils have even rank")
    if tag in FORCED_S:
        if s is not None and s != r // 2:
            raise InadmissibleError(f"{tag.value} perturbations of rank {r} have s = {r // 2}, got {s}")
        return r // 2
    if s is None:
        return r // 2 if tag != _S.NONE else 0
    upper = r if tag == _S.NONE else r // 2
    if not 0 <= s <= upper:
        raise InadmissibleError(f"s must lie in [0, {upper}] for rank-{r} {tag.value} perturbations, got {s}")
    return s


def param_dimensions(tag: StructureTag, n: int, r: int, s: Optional[int] = None) -> Tuple[int, int]:
    """
    (p, m): lengths of the real and complex parameter segments.

    Hermitian family: p = 2(r - 2s), m = (r + s)n. Symmetric: p = 0, m = 2(r - 2s) + (r + s)n.
    Transpose structures and skew-symmetric: p = 0, m = floor(3r/2)n. Unstructured: p = 0, m = 3rn.
    """
    tag = StructureTag(tag)
    s = resolve_s(tag, r, s)
    ell = r - 2 * s
    if tag == _S.NONE:
        return 0, 3 * r * n
    if tag in HERMITIAN_FAMILY:
        return 2 * ell, (r + s) * n
    if tag == _S.SYMMETRIC:
        return 0, 2 * ell + (r + s) * n
    return 0, (3 * r // 2) * n


def _check_lengths(tag: StructureTag, n: int, r: int, s: int, x: ParamVector) -> None:
    p, m = param_dimensions(tag, n, r, s)
    if len(x.reals) != p or len(x.complexes) != m:
        raise DimensionMismatchError(
            f"{StructureTag(tag).value} (n={n}, r={r}, s={s}) needs {p} reals and {m} complexes, "
            f"got {len(x.reals)} and {len(x.complexes)}"
        )


def _vectors(values: List[GaussianRational], n: int) -> List[PolyVector]:
    return [PolyVector(values[k * n:(k + 1) * n]) for k in range(len(values) // n)]


def phi_general(n: int, r: int, s: int, x: ParamVector) -> Pencil:
    """
    v_1 w_1^T + ... + v_r w_r^T.

    x = [alpha (rn) | beta ((r - s)n) | gamma (rn) | delta (sn)]; v_i = alpha_i and
    w_i = gamma_i + lambda*delta_i for i <= s; v_j = alpha_j + lambda*beta_j and w_j = gamma_j for j > s.
    """
    s = resolve_s(_S.NONE, r, s)
    _check_lengths(_S.NONE, n, r, s, x)
    values = list(x.complexes)
    alpha = _vectors(values[:r * n], n)
    beta = _vectors(values[r * n:(2 * r - s) * n], n)
    gamma = _vectors(values[(2 * r - s) * n:(3 * r - s) * n], n)
    delta = _vectors(values[(3 * r - s) * n:], n)

    total = Pencil.zeros(n)
    for i in range(r):
        if i < s:
            v = alpha[i]
            w = PolyVector(gamma[i].c0, delta[i].c0)
        else:
            v = PolyVector(alpha[i].c0, beta[i - s].c0)
            w = gamma[i]
        total = total + outer_product(v, w, Star.TRANSPOSE)
    return total


def structured_decomposition(tag: StructureTag, n: int, r: int, s: Optional[int], x: ParamVector) -> RankOneDecomposition:
    """The decomposition that phi_structured sums up."""
    tag = StructureTag(tag)
    s = resolve_s(tag, r, s)
    _check_lengths(tag, n, r, s, x)
    ell = r - 2 * s

    values = list(x.complexes)
    if tag in HERMITIAN_FAMILY:
        factors = [(to_gaussian(x.reals[2 * i]), to_gaussian(x.reals[2 * i + 1])) for i in range(ell)]
    elif tag == _S.SYMMETRIC:
        factors = [(values[2 * i], values[2 * i + 1]) for i in range(ell)]
        values = values[2 * ell:]
    else:
        factors = [(ONE, ZERO)] * ell

    alpha = _vectors(values[:ell * n], n)
    beta = _vectors(values[ell * n:(ell + s) * n], n)
    gamma = _vectors(values[(ell + s) * n:(ell + 2 * s) * n], n)
    delta = _vectors(values[(ell + 2 * s) * n:], n)

    scalar_terms = [ScalarTerm(a=a, b=b, u=u) for (a, b), u in zip(factors, alpha)]
    paired_terms = [
        PairedTerm(v=beta[j], w=PolyVector(gamma[j].c0, delta[j].c0)) for j in range(s)
    ]
    return RankOneDecomposition(structure=tag, n=n, scalar_terms=scalar_terms, paired_terms=paired_terms)


def scalar_factor_roots(tag: StructureTag, n: int, r: int, s: Optional[int], x: ParamVector) -> List[Optional[Eigenvalue]]:
    """
    Zeros of the linear factors c0 + lambda*c1 of the scalar terms.
    A factor that vanishes identically gives None.
    """
    tag = StructureTag(tag)
    if tag not in HERMITIAN_FAMILY and tag != _S.SYMMETRIC:
        return []
    roots: List[Optional[Eigenvalue]] = []
    for term in structured_decomposition(tag, n, r, s, x).scalar_terms:
        c0, c1 = encode(tag, term.a, term.b)
        if c1 == ZERO:
            roots.append(None if c0 == ZERO else Eigenvalue.infinity())
        else:
            roots.append(Eigenvalue.finite(div(neg(c0), c1)))
    return roots


def phi_structured(tag: StructureTag, n: int, r: int, s: Optional[int], x: ParamVector) -> Pencil:
    """
    Structured rank-at-most-r pencil from parameters.

    Args:
        tag: Target structure; the unstructured tag defers to phi_general
        n: Pencil size
        r: Rank bound
        s: Number of paired terms, forced to floor(r/2) for transpose and skew-symmetric structures
        x: Parameters laid out alpha | beta | gamma | delta after the (a, b) pairs

    Returns:
        The perturbation pencil, tagged with the structure
    """
    tag = StructureTag(tag)
    if tag == _S.NONE:
        return phi_general(n, r, resolve_s(tag, r, s), x)
    return reconstruct(structured_decomposition(tag, n, r, s, x))


def sample_params(tag: StructureTag, n: int, r: int, s: Optional[int], rng: Generator, bound: int) -> ParamVector:
    """Draw the real segment with random_rational and every complex entry with random_scalar."""
    p, m = param_dimensions(tag, n, r, s)
    reals = [random_rational(rng, bound) for _ in range(p)]
    complexes = [random_scalar(rng, bound) for _ in range(m)]
    return ParamVector(reals=reals, complexes=complexes)


def adversarial_params(tag: StructureTag, n: int, r: int, s: Optional[int] = None) -> List[ParamVector]:
    """
    Deterministic non-generic draws: the zero vector, the all-ones vector
    (every vector repeated) and a vector with every vector equal to e_1.
    """
    p, m = param_dimensions(tag, n, r, s)
    zero = ParamVector(reals=[0] * p, complexes=[ZERO] * m)
    ones = ParamVector(reals=[1] * p, complexes=[ONE] * m)
    first = ParamVector(reals=[1] * p, complexes=[ONE if k % n == 0 else ZERO for k in range(m)])
    return [zero, ones, first]


# Named perturbations

def recipe_size(recipe: PerturbationRecipe) -> int:
    kind, k = recipe.kind, recipe.size
    if kind == RecipeKind.G:
        return k + recipe.second
    if kind == RecipeKind.F_TILDE:
        return 2 * k
    if kind == RecipeKind.G_TILDE:
        return 2 * (k + recipe.second)
    if kind in (RecipeKind.GAMMA_PAIR, RecipeKind.GAMMA_PAIR_LAMBDA):
        return 2 * k
    if kind == RecipeKind.M_K:
        return 2 * k + 1
    if kind == RecipeKind.N_PAIR:
        return 2 * (k + recipe.second + 1)
    return k


RECIPE_STRUCTURES = {
    RecipeKind.E_K: _S.NONE,
    RecipeKind.F: _S.HERMITIAN,
    RecipeKind.G: _S.HERMITIAN,
    RecipeKind.F_TILDE: _S.HERMITIAN,
    RecipeKind.G_TILDE: _S.HERMITIAN,
    RecipeKind.GAMMA_PAIR: _S.T_EVEN,
    RecipeKind.GAMMA_PAIR_LAMBDA: _S.T_ODD,
    RecipeKind.M_K: _S.T_ODD,
    RecipeKind.N_PAIR: _S.T_ODD,
    RecipeKind.ODD_INF_CORNER: _S.T_EVEN,
    RecipeKind.LAMBDA_CORNER: _S.T_ODD,
}


def _gamma_pair_vector(size: int, n_r: int) -> PolyVector:
    """e_1 + e_{n_r+2}, the second unit vector dropped when it falls outside the block."""
    u = PolyVector.unit(size, 0)
    if n_r + 1 < size:
        u = u + PolyVector.unit(size, n_r + 1)
    return u


def _local_terms(recipe: PerturbationRecipe):
    """
    (r, s, scalar terms, paired terms) of the recipe in local coordinates.

    Scalar terms are (a, b, u); transpose structures take a = 1 and scale u instead.
    """
    kind, k, value = recipe.kind, recipe.size, recipe.value
    m = recipe_size(recipe)

    if kind in (RecipeKind.F, RecipeKind.F_TILDE) and not is_real(value):
        raise InadmissibleError(f"{kind.value} needs a real parameter, got {value}")

    if kind == RecipeKind.F:
        return 1, 0, [(value, ZERO, PolyVector.unit(m, 0))], []
    if kind == RecipeKind.G:
        return 2, 1, [], [(PolyVector.unit(m, k), PolyVector.unit(m, 0).scale(value))]
    if kind == RecipeKind.F_TILDE:
        return 1, 0, [(value, ZERO, PolyVector.unit(m, 0) + PolyVector.unit(m, k))], []
    if kind == RecipeKind.G_TILDE:
        nu, nu_tilde = k, recipe.second
        v = PolyVector.unit(m, 2 * nu) + PolyVector.unit(m, 2 * nu + nu_tilde)
        w = (PolyVector.unit(m, 0) + PolyVector.unit(m, nu)).scale(value)
        return 2, 1, [], [(v, w)]
    if kind == RecipeKind.M_K:
        corner = PolyVector.unit(m, 2 * k).c0
        return 2, 1, [], [(PolyVector.unit(m, 0), PolyVector(corner * value, corner))]
    if kind == RecipeKind.N_PAIR:
        return 2, 1, [], [(PolyVector.unit(m, 0), PolyVector.unit(m, 2 * k + 1).scale(value))]

    if kind in (RecipeKind.GAMMA_PAIR, RecipeKind.GAMMA_PAIR_LAMBDA, RecipeKind.ODD_INF_CORNER, RecipeKind.LAMBDA_CORNER):
        root = signed_square_root(value.x) if is_real(value) else None
        if root is None:
            raise InadmissibleError(f"{kind.value} witnesses need a real +/- square parameter, got {value}")
        if kind in (RecipeKind.GAMMA_PAIR, RecipeKind.GAMMA_PAIR_LAMBDA):
            u = _gamma_pair_vector(m, k)
        else:
            u = PolyVector.unit(m, 0)
        return 1, 0, [(ONE, ZERO, u.scale(root))], []

    raise InadmissibleError(f"{kind.value} has no structured witness")


def _place(vector: PolyVector, frame: int, offset: int) -> PolyVector:
    result = PolyVector.zeros(frame)
    result.c0[offset:offset + vector.n] = vector.c0
    result.c1[offset:offset + vector.n] = vector.c1
    return result


def _check_placement(recipe: PerturbationRecipe, frame: int, offset: int) -> int:
    m = recipe_size(recipe)
    if offset < 0 or offset + m > frame:
        raise PlacementError(f"{recipe.kind.value} of size {m} does not fit at offset {offset} in a frame of {frame}")
    return m


def named_perturbation(recipe: PerturbationRecipe, frame: int, offset: int = 0) -> Pencil:
    """
    The recipe's displayed matrix embedded in a frame x frame zero pencil.

    Raises:
        PlacementError: the recipe does not fit at the offset
    """
    m = _check_placement(recipe, frame, offset)
    kind, k, value = recipe.kind, recipe.size, recipe.value
    tag = RECIPE_STRUCTURES[kind]
    local = Pencil.zeros(m)

    def put(i: int, j: int, c0: GaussianRational, c1: GaussianRational = ZERO) -> None:
        local.A[i, j] += c0
        local.B[i, j] += c1

    if kind == RecipeKind.E_K:
        put(k - 1, 0, value)
    elif kind == RecipeKind.F:
        put(0, 0, value)
    elif kind == RecipeKind.G:
        put(0, k, value)
        put(k, 0, conjugate(value))
    elif kind == RecipeKind.F_TILDE:
        for i in (0, k):
            for j in (0, k):
                put(i, j, value)
    elif kind == RecipeKind.G_TILDE:
        nu, nu_tilde = k, recipe.second
        for i in (0, nu):
            for j in (2 * nu, 2 * nu + nu_tilde):
                put(i, j, value)
                put(j, i, conjugate(value))
    elif kind in (RecipeKind.GAMMA_PAIR, RecipeKind.GAMMA_PAIR_LAMBDA):
        u = _gamma_pair_vector(m, k).c0
        term = np.outer(u, u) * value
        if kind == RecipeKind.GAMMA_PAIR:
            local.A += term
        else:
            local.B += term
    elif kind == RecipeKind.M_K:
        put(0, 2 * k, value, ONE)
        put(2 * k, 0, -value, ONE)
    elif kind == RecipeKind.N_PAIR:
        put(0, 2 * k + 1, value)
        put(2 * k + 1, 0, -value)
    elif kind == RecipeKind.ODD_INF_CORNER:
        put(0, 0, value)
    elif kind == RecipeKind.LAMBDA_CORNER:
        put(0, 0, ZERO, value)

    logger.debug(f"Placed {kind.value} of size {m} at offset {offset} in frame {frame}")
    return local.embed(frame, offset).with_structure(tag)


def witness_parameters(recipe: PerturbationRecipe, frame: int, offset: int = 0) -> Tuple[StructureTag, int, int, ParamVector]:
    """
    Explicit parameters reproducing a named perturbation through the parameter map.

    Returns:
        (tag, r, s, x) with phi_structured(tag, frame, r, s, x) == named_perturbation(recipe, frame, offset)

    Raises:
        InadmissibleError: the recipe's parameter is not representable (e.g. not a +/- rational square)
    """
    _check_placement(recipe, frame, offset)
    tag = RECIPE_STRUCTURES[recipe.kind]

    if recipe.kind == RecipeKind.E_K:
        k, n = recipe.size, frame
        alpha = _place(PolyVector.unit(recipe.size, k - 1), n, offset).c0
        gamma = _place(PolyVector.unit(recipe.size, 0), n, offset).c0 * recipe.value
        complexes = list(alpha) + [ZERO] * n + list(gamma)
        return tag, 1, 0, ParamVector(reals=[], complexes=complexes)

    r, s, scalars, paired = _local_terms(recipe)
    reals, complexes = [], []
    for a, b, u in scalars:
        if tag in HERMITIAN_FAMILY:
            reals += [a.x, b.x]
        complexes += list(_place(u, frame, offset).c0)
    beta, gamma, delta = [], [], []
    for v, w in paired:
        beta += list(_place(v, frame, offset).c0)
        placed_w = _place(w, frame, offset)
        gamma += list(placed_w.c0)
        delta += list(placed_w.c1)
    complexes += beta + gamma + delta
    return tag, r, s, ParamVector(reals=reals, complexes=complexes)
