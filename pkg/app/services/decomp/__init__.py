"""
Rank-one decomposition package.
Exports the DecompositionService and the decomposition operations.
"""
from .merge import merge_opposite_signs
from .service import (
    DecompositionService,
    conjugate_decomposition,
    decompose,
    decompose_canonical,
    decomposition_service,
    reconstruct,
)
from .signsum import minimal_ell, signsum, signsum_table

__all__ = [
    'DecompositionService',
    'conjugate_decomposition',
    'decompose',
    'decompose_canonical',
    'decomposition_service',
    'merge_opposite_signs',
    'minimal_ell',
    'reconstruct',
    'signsum',
    'signsum_table',
]
