"""
Perturbation and experiment models.
Parameter vectors, named perturbation recipes, predictions, scenarios and reports.
"""
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.config import settings
from app.models.fields import EigenvalueValue, Multiplicities, RationalValue, Scalar
from app.models.pencil import StructureTag
from app.models.spectral import SpectralSpec


class ParamVector(BaseModel):
    """Real segment (length p) followed by the complex segment (length m)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    reals: List[RationalValue] = []
    complexes: List[Scalar] = []


class RecipeKind(str, Enum):
    """Named perturbations used to witness exceptional behaviour."""
    E_K = "e_k"
    F = "f"
    G = "g"
    F_TILDE = "f_tilde"
    G_TILDE = "g_tilde"
    GAMMA_PAIR = "gamma_pair"
    GAMMA_PAIR_LAMBDA = "gamma_pair_lambda"
    M_K = "m_k"
    N_PAIR = "n_pair"
    ODD_INF_CORNER = "odd_inf_corner"
    LAMBDA_CORNER = "lambda_corner"


class PerturbationRecipe(BaseModel):
    """
    One named perturbation.

    value is psi, alpha, beta or gamma; size is k, nu or n_r; second is nu~ or k2.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: RecipeKind
    value: Scalar
    size: int = Field(default=1, ge=1)
    second: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode='after')
    def check_second(self) -> 'PerturbationRecipe':
        needs_second = self.kind in (RecipeKind.G, RecipeKind.G_TILDE, RecipeKind.N_PAIR)
        if needs_second and self.second is None:
            raise ValueError(f"{self.kind.value} needs a second size")
        if not needs_second and self.second is not None:
            raise ValueError(f"{self.kind.value} takes a single size")
        return self


class EigenClass(str, Enum):
    ZERO = "zero"
    INFINITY = "infinity"
    PLUS_ONE = "plus_one"
    MINUS_ONE = "minus_one"
    OTHER = "other"


class Prediction(BaseModel):
    """Expected multiplicities after a generic rank-r change, with the rule that produced them."""

    structure: StructureTag
    eig_class: EigenClass
    original: Multiplicities
    rank: int
    expected: Multiplicities
    new_eigenvalue_mult: int
    prediction_row: str


class Scenario(BaseModel):
    """Experiment input: the unperturbed pencil, the rank and the sampling controls."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    spec: SpectralSpec
    rank: int = Field(ge=1)
    s: Optional[int] = Field(default=None, ge=0)
    trials: int = Field(default_factory=lambda: settings.DEFAULT_TRIALS, ge=1)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED)
    bound: int = Field(default_factory=lambda: settings.DEFAULT_BOUND, ge=1)
    adversarial: bool = False


class NewEigenvalueProfile(BaseModel):
    """Verdict on the eigenvalues of L + E that L does not have."""

    mu: int
    remaining_degree: int
    distinct_new_roots: int
    new_infinite_multiplicity: int = 0
    passed: bool


class EigenObservation(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    eigenvalue: EigenvalueValue
    original: Multiplicities
    observed: Multiplicities
    predicted: Multiplicities
    match: bool
    dominance: bool
    prediction_row: str


class EigenPrediction(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    eigenvalue: EigenvalueValue
    eig_class: EigenClass
    prediction: Prediction


class TrialRecord(BaseModel):
    """One perturbation draw and everything observed about L + E."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    trial: int
    regular: bool
    perturbation_rank: int
    observations: List[EigenObservation] = []
    profile: Optional[NewEigenvalueProfile] = None
    cayley_consistent: Optional[bool] = None
    params: ParamVector

    @property
    def matched(self) -> bool:
        return self.regular and all(o.match for o in self.observations)

    @property
    def dominated(self) -> bool:
        return all(o.dominance for o in self.observations)


class ExperimentReport(BaseModel):
    """Per-trial records plus aggregate counts; no wall-clock data."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    scenario: Scenario
    s: int
    predictions: List[EigenPrediction] = []
    trials: List[TrialRecord] = []
    match_count: int = 0
    singular_trials: int = 0
    dominance_failures: int = 0
    profile_failures: int = 0
    cayley_mismatches: int = 0
    mismatch_exemplars: List[TrialRecord] = []

    @property
    def ok(self) -> bool:
        if self.scenario.adversarial:
            return self.dominance_failures == 0
        return (
            self.match_count == len(self.trials)
            and self.singular_trials == 0
            and self.dominance_failures == 0
            and self.profile_failures == 0
            and self.cayley_mismatches == 0
        )


class AppendixCheck(BaseModel):
    """One determinant identity instance: built block, closed form and verdict."""

    identity: str
    k: int
    gamma: str
    expected: List[str]
    observed: List[str]
    passed: bool


class AppendixReport(BaseModel):
    checks: List[AppendixCheck] = []

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)
