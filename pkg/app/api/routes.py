"""
FastAPI routes for Structured Pencil Lab.
"""
import logging
from typing import Any, Callable, Dict, List, Optional

from fastapi import APIRouter, HTTPException
from numpy.random import default_rng
from pydantic import BaseModel, Field, ValidationError

from app.config import settings
from app.exceptions import PencilLabError
from app.models.experiment import EigenClass, Scenario
from app.models.pencil import StructureTag
from app.models.spectral import Eigenvalue, SpectralSpec
from app.services import paramz, smith
from app.services.canon import build_pencil
from app.services.decomp import decompose, minimal_ell, signsum
from app.services.lab import ExperimentOrchestrator, predict, verify_appendix
from app.utils.serialization import decomposition_to_json, pencil_from_json, pencil_to_json

logger = logging.getLogger(__name__)

# Create router
router = APIRouter()

# Initialize orchestrator
orchestrator = ExperimentOrchestrator()


# Request Models
class SpecRequest(BaseModel):
    spec: SpectralSpec


class DecomposeRequest(SpecRequest):
    minimal: bool = False


class EigenvalueRequest(SpecRequest):
    eig: str


class MultiplicitiesRequest(BaseModel):
    spec: Optional[SpectralSpec] = None
    pencil: Optional[Dict[str, Any]] = None
    eig: str


class SampleRequest(BaseModel):
    structure: StructureTag = StructureTag.NONE
    n: int = Field(ge=1)
    rank: int = Field(default=1, ge=1)
    s: Optional[int] = None
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED)
    bound: int = Field(default_factory=lambda: settings.DEFAULT_BOUND, ge=1)


class PredictRequest(BaseModel):
    structure: StructureTag
    eig_class: EigenClass = EigenClass.OTHER
    sizes: List[int]
    rank: int = Field(ge=1)


class AppendixRequest(BaseModel):
    k_max: int = Field(default_factory=lambda: settings.APPENDIX_KMAX, ge=1)
    gammas: Optional[List[str]] = None


def _run(what: str, action: Callable[[], Any]) -> Any:
    """Input errors become 422, anything else 500."""
    try:
        return action()
    except (PencilLabError, ValidationError, ValueError) as e:
        logger.warning(f"Rejected {what}: {e}")
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        logger.error(f"Error in {what}: {e}")
        raise HTTPException(status_code=500, detail=str(e))


# Routes
@router.post("/pencils/build")
def build(request: SpecRequest):
    """Build the structured pencil described by a spectral spec."""
    return _run("build", lambda: pencil_to_json(build_pencil(request.spec)))


@router.post("/pencils/decompose")
def decompose_pencil(request: DecomposeRequest):
    """
    Structured rank-one decomposition of the spec's pencil.

    Args:
        spec: Spectral spec
        minimal: Use the fewest scalar terms (hermitian and symmetric only)

    Returns:
        Decomposition JSON
    """
    def action():
        dec = minimal_ell(request.spec)[1] if request.minimal else decompose(request.spec)
        return decomposition_to_json(dec)
    return _run("decompose", action)


@router.post("/pencils/signsum")
def pencil_signsum(request: EigenvalueRequest):
    return _run("signsum", lambda: {'signsum': signsum(request.spec, Eigenvalue.parse(request.eig))})


@router.post("/pencils/multiplicities")
def multiplicities(request: MultiplicitiesRequest):
    """Partial multiplicities at an eigenvalue, of a built spec or an explicit pencil."""
    def action():
        if request.spec is not None:
            P = build_pencil(request.spec)
        elif request.pencil is not None:
            P = pencil_from_json(request.pencil)
        else:
            raise ValueError("Give a spec or a pencil")
        eig = Eigenvalue.parse(request.eig)
        return {'eigenvalue': str(eig), 'multiplicities': list(smith.partial_multiplicities(P, eig))}
    return _run("multiplicities", action)


@router.post("/perturbations/sample")
def sample_perturbation(request: SampleRequest):
    """
    Draw parameters and return the structured perturbation they define.

    Returns:
        Rank, s, pencil JSON and the parameter vector for replay
    """
    def action():
        s = paramz.resolve_s(request.structure, request.rank, request.s)
        x = paramz.sample_params(request.structure, request.n, request.rank, s, default_rng(request.seed), request.bound)
        E = paramz.phi_structured(request.structure, request.n, request.rank, s, x)
        return {'rank': request.rank, 's': s, 'pencil': pencil_to_json(E), 'params': x.model_dump(mode='json')}
    return _run("perturbation sample", action)


@router.post("/predictions")
def prediction(request: PredictRequest):
    return _run("prediction", lambda: predict(
        request.structure, request.eig_class, request.sizes, request.rank
    ).model_dump(mode='json'))


@router.post("/experiments")
def experiment(scenario: Scenario):
    """
    Run an experiment campaign synchronously.

    Returns:
        Experiment report with an ok flag
    """
    def action():
        report = orchestrator.run(scenario)
        payload = report.model_dump(mode='json')
        payload['ok'] = report.ok
        return payload
    return _run("experiment", action)


@router.post("/appendix/verify")
def appendix(request: AppendixRequest):
    def action():
        report = verify_appendix(request.k_max, request.gammas)
        payload = report.model_dump(mode='json')
        payload['passed'] = report.passed
        return payload
    return _run("appendix verification", action)
