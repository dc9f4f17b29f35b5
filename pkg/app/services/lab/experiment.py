"""
Experiment orchestrator service.
Runs seeded perturbation campaigns and compares observed multiplicities with the predictions.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Collection, Dict, List, Optional, Tuple

from numpy.random import default_rng

from app.config import settings
from app.exceptions import SingularPencilError
from app.models.experiment import (
    EigenObservation,
    EigenPrediction,
    ExperimentReport,
    ParamVector,
    Scenario,
    TrialRecord,
)
from app.models.pencil import Pencil, StructureTag
from app.models.spectral import Eigenvalue
from app.services import paramz, smith
from app.services.canon import CanonService
from app.services.lab.predictions import classify_eigenvalue, pair_up, predict
from app.services.pencil_ops import TransportMap, cayley, normal_rank, transport_eigenvalue

logger = logging.getLogger(__name__)

CAYLEY_CHECKED = (StructureTag.T_PALINDROMIC, StructureTag.T_ANTI_PALINDROMIC)


class ExperimentOrchestrator:
    """
    Coordinates one experiment campaign.
    Builds L, predicts each eigenvalue, then draws and inspects one perturbation per trial.
    """

    def __init__(self, canon: Optional[CanonService] = None, workers: Optional[int] = None):
        self.canon = canon or CanonService()
        self.workers = workers or settings.EXPERIMENT_WORKERS

    def predictions(self, scenario: Scenario) -> List[EigenPrediction]:
        """Predicted lists for every eigenvalue of L, in a fixed order."""
        tag = scenario.spec.structure
        spectrum = self.canon.spectral_data(scenario.spec)
        result = []
        for eig in sorted(spectrum, key=str):
            sizes = tuple(spectrum[eig])
            if tag == StructureTag.SKEW_SYMMETRIC:
                sizes = pair_up(sizes)
            eig_class = classify_eigenvalue(tag, eig)
            result.append(EigenPrediction(
                eigenvalue=eig,
                eig_class=eig_class,
                prediction=predict(tag, eig_class, sizes, scenario.rank),
            ))
        return result

    def draw(self, scenario: Scenario, s: int, trial: int, eigenvalues: Collection[Eigenvalue] = ()) -> ParamVector:
        """
        Parameters for one trial; the stream depends only on (seed, trial).

        Random draws whose scalar factor c0 + lambda*c1 vanishes at one of the given
        eigenvalues, or vanishes identically, are redrawn from the same stream.
        """
        tag, n, r = scenario.spec.structure, scenario.spec.dimension, scenario.rank
        if scenario.adversarial:
            options = paramz.adversarial_params(tag, n, r, s)
            return options[trial % len(options)]
        rng = default_rng([scenario.seed, trial])
        excluded = set(eigenvalues)
        for _ in range(settings.MAX_DRAW_ATTEMPTS):
            x = paramz.sample_params(tag, n, r, s, rng, scenario.bound)
            roots = paramz.scalar_factor_roots(tag, n, r, s, x)
            if not any(root is None or root in excluded for root in roots):
                return x
            logger.debug(f"Trial {trial}: redrawing, scalar factor vanishes at one of {[str(e) for e in roots]}")
        logger.warning(f"Trial {trial}: no draw avoids the eigenvalues after {settings.MAX_DRAW_ATTEMPTS} attempts")
        return x

    def run_trial(
        self,
        scenario: Scenario,
        s: int,
        L: Pencil,
        spectrum: Dict[Eigenvalue, List[int]],
        predictions: List[EigenPrediction],
        trial: int,
    ) -> TrialRecord:
        tag, n, r = scenario.spec.structure, scenario.spec.dimension, scenario.rank
        x = self.draw(scenario, s, trial, spectrum.keys())
        E = paramz.phi_structured(tag, n, r, s, x)
        rank = normal_rank(E)
        if rank < r and not scenario.adversarial:
            logger.warning(f"Trial {trial}: perturbation has rank {rank} < {r}")

        perturbed = L + E
        if not smith.is_regular(perturbed):
            logger.warning(f"Trial {trial}: L + E is singular")
            return TrialRecord(trial=trial, regular=False, perturbation_rank=rank, params=x)

        observations = []
        observed_true = {}
        for item in predictions:
            eig, prediction = item.eigenvalue, item.prediction
            true_sizes = smith.partial_multiplicities(perturbed, eig)
            observed_true[eig] = true_sizes
            dominance = smith.dominates(true_sizes, tuple(spectrum[eig])[r:])
            observed = true_sizes
            if tag == StructureTag.SKEW_SYMMETRIC:
                observed = pair_up(true_sizes)
            match = observed is not None and tuple(sorted(observed, reverse=True)) == prediction.expected
            if not dominance:
                logger.error(f"Trial {trial}: {true_sizes} at {eig} does not dominate {tuple(spectrum[eig])[r:]}")
            observations.append(EigenObservation(
                eigenvalue=eig,
                original=prediction.original,
                observed=observed if observed is not None else true_sizes,
                predicted=prediction.expected,
                match=match,
                dominance=dominance,
                prediction_row=prediction.prediction_row,
            ))

        mu = 2 if tag == StructureTag.SKEW_SYMMETRIC else 1
        profile = smith.new_eigenvalue_profile(L, perturbed, mu)

        cayley_consistent = None
        if tag in CAYLEY_CHECKED:
            cayley_consistent = self._cayley_consistent(perturbed, observed_true)

        logger.debug(f"Trial {trial}: rank {rank}, {sum(o.match for o in observations)}/{len(observations)} matched")
        return TrialRecord(
            trial=trial,
            regular=True,
            perturbation_rank=rank,
            observations=observations,
            profile=profile,
            cayley_consistent=cayley_consistent,
            params=x,
        )

    @staticmethod
    def _cayley_consistent(perturbed: Pencil, observed: Dict[Eigenvalue, Tuple[int, ...]]) -> bool:
        """Same multiplicities at the mapped eigenvalues of C_{+1}(L + E)."""
        transported = cayley(perturbed, 1)
        for eig, sizes in observed.items():
            mapped = transport_eigenvalue(TransportMap.CAYLEY_PLUS, eig)
            if smith.partial_multiplicities(transported, mapped) != sizes:
                logger.warning(f"Cayley image disagrees at {eig} -> {mapped}")
                return False
        return True

    def run(self, scenario: Scenario) -> ExperimentReport:
        """
        Run every trial of the scenario and aggregate.

        Args:
            scenario: Spec of L, rank, optional s, trial count, seed and bound

        Returns:
            ExperimentReport; anomalies are counted, never raised

        Raises:
            SingularPencilError: L itself is singular
            InadmissibleError: (structure, rank, s) is not admissible
        """
        tag, r = scenario.spec.structure, scenario.rank
        s = paramz.resolve_s(tag, r, scenario.s)
        L = self.canon.build_pencil(scenario.spec)
        if not smith.is_regular(L):
            raise SingularPencilError("Experiments need a regular unperturbed pencil")

        spectrum = self.canon.spectral_data(scenario.spec)
        predictions = self.predictions(scenario)
        logger.info(
            f"Experiment: {tag.value}, n={L.n}, r={r}, s={s}, {scenario.trials} trials, "
            f"seed {scenario.seed}, {len(predictions)} eigenvalues"
        )

        def one(trial: int) -> TrialRecord:
            return self.run_trial(scenario, s, L, spectrum, predictions, trial)

        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                trials = list(executor.map(one, range(scenario.trials)))
        else:
            trials = [one(t) for t in range(scenario.trials)]

        report = self.aggregate(scenario, s, predictions, trials)
        logger.info(
            f"Experiment finished: {report.match_count}/{len(trials)} matched, "
            f"{report.singular_trials} singular, {report.dominance_failures} dominance failures"
        )
        return report

    @staticmethod
    def aggregate(scenario: Scenario, s: int, predictions: List[EigenPrediction], trials: List[TrialRecord]) -> ExperimentReport:
        def anomalous(record: TrialRecord) -> bool:
            return (
                not record.matched
                or not record.dominated
                or (record.profile is not None and not record.profile.passed)
                or record.cayley_consistent is False
            )

        exemplars = [t for t in trials if anomalous(t)][:settings.MAX_MISMATCH_EXEMPLARS]
        return ExperimentReport(
            scenario=scenario,
            s=s,
            predictions=predictions,
            trials=trials,
            match_count=sum(t.matched for t in trials),
            singular_trials=sum(not t.regular for t in trials),
            dominance_failures=sum(not t.dominated for t in trials),
            profile_failures=sum(t.profile is not None and not t.profile.passed for t in trials),
            cayley_mismatches=sum(t.cayley_consistent is False for t in trials),
            mismatch_exemplars=exemplars,
        )


def run_experiment(scenario: Scenario) -> ExperimentReport:
    return ExperimentOrchestrator().run(scenario)
