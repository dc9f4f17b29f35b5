"""
Command-line surface for Structured Pencil Lab.

Usage: python -m app.cli <command> [options]
Exit codes: 0 success, 1 failed check, 2 input error.
"""
import argparse
import json
import logging
import sys
from typing import Any, List, Optional

from numpy.random import default_rng
from pydantic import ValidationError

from app.config import settings
from app.exceptions import PencilLabError
from app.models.experiment import EigenClass, PerturbationRecipe, RecipeKind, Scenario
from app.models.pencil import StructureTag
from app.models.spectral import Eigenvalue, SpectralSpec
from app.services import paramz, smith
from app.services.canon import build_pencil
from app.services.decomp import decompose, minimal_ell, reconstruct, signsum
from app.services.lab import ExperimentOrchestrator, predict, verify_appendix
from app.utils.logging_config import configure_logging
from app.utils.serialization import (
    decomposition_to_json,
    dumps,
    format_multiplicities,
    parse_multiplicities,
    pencil_from_json,
    pencil_to_json,
    write_report_csv,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _load(path: str) -> Any:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as handle:
        return json.load(handle)


def _load_spec(path: str) -> SpectralSpec:
    return SpectralSpec.model_validate(_load(path))


def cmd_build(args) -> int:
    print(dumps(pencil_to_json(build_pencil(_load_spec(args.spec)))))
    return EXIT_OK


def cmd_decompose(args) -> int:
    spec = _load_spec(args.spec)
    if args.minimal:
        ell, dec = minimal_ell(spec)
        logger.info(f"Minimal number of scalar terms: {ell}")
    else:
        dec = decompose(spec)
    if reconstruct(dec) != build_pencil(spec):
        logger.error("Decomposition does not reconstruct the pencil")
        return EXIT_FAILED
    print(dumps(decomposition_to_json(dec)))
    return EXIT_OK


def cmd_signsum(args) -> int:
    print(signsum(_load_spec(args.spec), Eigenvalue.parse(args.eig)))
    return EXIT_OK


def cmd_perturb(args) -> int:
    tag = StructureTag(args.structure)
    if args.recipe:
        recipe = PerturbationRecipe(kind=args.recipe, value=args.value, size=args.size, second=args.second)
        tag, r, s, x = paramz.witness_parameters(recipe, args.n, args.offset)
    else:
        r = args.rank
        s = paramz.resolve_s(tag, r, args.s)
        x = paramz.sample_params(tag, args.n, r, s, default_rng(args.seed), args.bound)
    E = paramz.phi_structured(tag, args.n, r, s, x)
    print(dumps({'rank': r, 's': s, 'pencil': pencil_to_json(E), 'params': x.model_dump(mode='json')}))
    return EXIT_OK


def cmd_multiplicities(args) -> int:
    if args.spec:
        P = build_pencil(_load_spec(args.spec))
    else:
        P = pencil_from_json(_load(args.pencil))
    print(format_multiplicities(smith.partial_multiplicities(P, Eigenvalue.parse(args.eig))))
    return EXIT_OK


def cmd_predict(args) -> int:
    prediction = predict(args.structure, args.eig_class, parse_multiplicities(args.list), args.rank)
    if args.json:
        print(dumps(prediction.model_dump(mode='json')))
    else:
        print(",".join(str(k) for k in prediction.expected) or "()")
    return EXIT_OK


def cmd_experiment(args) -> int:
    data = _load(args.scenario)
    for field in ('trials', 'seed'):
        if getattr(args, field) is not None:
            data[field] = getattr(args, field)
    report = ExperimentOrchestrator(workers=args.workers).run(Scenario.model_validate(data))
    if args.csv:
        write_report_csv(report, args.csv)
    payload = report.model_dump(mode='json')
    payload['ok'] = report.ok
    print(dumps(payload))
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_verify_appendix(args) -> int:
    report = verify_appendix(args.kmax, args.gamma)
    payload = report.model_dump(mode='json')
    payload['passed'] = report.passed
    print(dumps(payload))
    return EXIT_OK if report.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pencil-lab",
        description="Exact structured matrix pencils and low-rank perturbation experiments",
    )
    parser.add_argument("--log-level", default=None, help="Log level (default: settings.LOG_LEVEL)")
    parser.add_argument("--plain-logs", action="store_true", help="Plain text log lines instead of JSON")
    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser("build", help="SpectralSpec JSON -> pencil JSON")
    build.add_argument("--spec", required=True, help="Spec JSON file, - for stdin")
    build.set_defaults(handler=cmd_build)

    dec = commands.add_parser("decompose", help="SpectralSpec JSON -> rank-one decomposition JSON")
    dec.add_argument("--spec", required=True)
    dec.add_argument("--minimal", action="store_true", help="Fewest scalar terms (hermitian and symmetric)")
    dec.set_defaults(handler=cmd_decompose)

    sig = commands.add_parser("signsum", help="Sign sum of the odd blocks at an eigenvalue")
    sig.add_argument("--spec", required=True)
    sig.add_argument("--eig", required=True, help="Real eigenvalue or inf")
    sig.set_defaults(handler=cmd_signsum)

    perturb = commands.add_parser("perturb", help="Sample a structured low-rank perturbation")
    perturb.add_argument("--structure", default=StructureTag.NONE.value, choices=[t.value for t in StructureTag])
    perturb.add_argument("--n", type=int, required=True)
    perturb.add_argument("--rank", type=int, default=1)
    perturb.add_argument("--s", type=int, default=None)
    perturb.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    perturb.add_argument("--bound", type=int, default=settings.DEFAULT_BOUND)
    perturb.add_argument("--recipe", choices=[k.value for k in RecipeKind], default=None,
                         help="Emit a named perturbation through its witness parameters instead")
    perturb.add_argument("--value", default="1")
    perturb.add_argument("--size", type=int, default=1)
    perturb.add_argument("--second", type=int, default=None)
    perturb.add_argument("--offset", type=int, default=0)
    perturb.set_defaults(handler=cmd_perturb)

    mult = commands.add_parser("multiplicities", help="Partial multiplicities at an eigenvalue")
    source = mult.add_mutually_exclusive_group(required=True)
    source.add_argument("--pencil", help="Pencil JSON file")
    source.add_argument("--spec", help="SpectralSpec JSON file")
    mult.add_argument("--eig", required=True)
    mult.set_defaults(handler=cmd_multiplicities)

    pred = commands.add_parser("predict", help="Generic multiplicities after a rank-r change")
    pred.add_argument("--structure", required=True, choices=[t.value for t in StructureTag])
    pred.add_argument("--class", dest="eig_class", default=EigenClass.OTHER.value, choices=[c.value for c in EigenClass])
    pred.add_argument("--list", required=True, help="Multiplicities, e.g. 3,3")
    pred.add_argument("--rank", type=int, required=True)
    pred.add_argument("--json", action="store_true", help="Print the full prediction")
    pred.set_defaults(handler=cmd_predict)

    exp = commands.add_parser("experiment", help="Run a seeded experiment campaign")
    exp.add_argument("--scenario", required=True, help="Scenario JSON file")
    exp.add_argument("--trials", type=int, default=None)
    exp.add_argument("--seed", type=int, default=None)
    exp.add_argument("--workers", type=int, default=None)
    exp.add_argument("--csv", default=None, help="Also write per-trial rows to this CSV file")
    exp.set_defaults(handler=cmd_experiment)

    appendix = commands.add_parser("verify-appendix", help="Check the gamma determinant identities")
    appendix.add_argument("--kmax", type=int, default=settings.APPENDIX_KMAX)
    appendix.add_argument("--gamma", action="append", default=None, help="Rational gamma, repeatable")
    appendix.set_defaults(handler=cmd_verify_appendix)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level, False if args.plain_logs else None)
    try:
        return args.handler(args)
    except (PencilLabError, ValidationError, json.JSONDecodeError, OSError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
