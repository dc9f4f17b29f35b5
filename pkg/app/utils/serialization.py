"""
JSON and CSV codecs for pencils, multiplicity lists and experiment reports.
"""
import json
import logging
from typing import Any, Dict, Sequence, Tuple

import pandas as pd

from app.exceptions import ParseError
from app.models.decomposition import RankOneDecomposition
from app.models.experiment import ExperimentReport
from app.models.pencil import Pencil, StructureTag
from app.services import matrices
from app.services.exactnum import format_scalar

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ['trial', 'eigenvalue', 'observed', 'predicted', 'match', 'new_eig_profile', 'regular']


def pencil_to_json(P: Pencil) -> Dict[str, Any]:
    """{"structure": tag, "A": rows of scalar text, "B": rows of scalar text}."""
    return {
        'n': P.n,
        'structure': P.structure.value,
        'A': [[format_scalar(entry) for entry in row] for row in P.A],
        'B': [[format_scalar(entry) for entry in row] for row in P.B],
    }


def pencil_from_json(data: Dict[str, Any]) -> Pencil:
    try:
        A = matrices.as_matrix(data['A'])
        B = matrices.as_matrix(data['B'], A.shape[1])
    except KeyError as e:
        raise ParseError(f"Pencil JSON needs both coefficients, missing {e}") from e
    return Pencil(A, B, StructureTag(data.get('structure', StructureTag.NONE.value)))


def decomposition_to_json(dec: RankOneDecomposition) -> Dict[str, Any]:
    """Model dump plus the ell and s counts."""
    payload = dec.model_dump(mode='json')
    payload['ell'] = dec.ell
    payload['s'] = dec.s
    return payload


def format_multiplicities(sizes: Sequence[int]) -> str:
    """(3,1) style; () for the empty list."""
    return "(" + ",".join(str(k) for k in sizes) + ")"


def parse_multiplicities(text: str) -> Tuple[int, ...]:
    """Accept "3,1", "(3,1)", "4" or "()"."""
    body = text.strip().strip("()").strip()
    if not body:
        return ()
    try:
        sizes = tuple(int(item) for item in body.split(","))
    except ValueError as e:
        raise ParseError(f"Malformed multiplicity list: {text!r}") from e
    if any(k < 1 for k in sizes):
        raise ParseError(f"Multiplicities must be positive: {text!r}")
    return tuple(sorted(sizes, reverse=True))


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=False)


def report_frame(report: ExperimentReport) -> pd.DataFrame:
    """One row per (trial, eigenvalue); singular trials get a single row with no eigenvalue."""
    rows = []
    for record in report.trials:
        if record.profile is None:
            profile = ""
        else:
            profile = "pass" if record.profile.passed else "fail"
        if not record.observations:
            rows.append({
                'trial': record.trial,
                'eigenvalue': "",
                'observed': "",
                'predicted': "",
                'match': False,
                'new_eig_profile': profile,
                'regular': record.regular,
            })
        for obs in record.observations:
            rows.append({
                'trial': record.trial,
                'eigenvalue': str(obs.eigenvalue),
                'observed': format_multiplicities(obs.observed),
                'predicted': format_multiplicities(obs.predicted),
                'match': obs.match,
                'new_eig_profile': profile,
                'regular': record.regular,
            })
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def write_report_csv(report: ExperimentReport, path: str) -> None:
    frame = report_frame(report)
    frame.to_csv(path, index=False)
    logger.info(f"Wrote {len(frame)} report rows to {path}")
