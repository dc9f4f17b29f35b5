"""
Canonical forms package.
Exports the CanonService facade and the block primitives.
"""
from .base import NativeBlock, jordan_pencil, singular_block
from .service import (
    ROUTES,
    CanonService,
    PlacedBlock,
    build_block,
    build_pencil,
    canon_service,
    spectral_data,
)

__all__ = [
    'CanonService',
    'NativeBlock',
    'PlacedBlock',
    'ROUTES',
    'build_block',
    'build_pencil',
    'canon_service',
    'jordan_pencil',
    'singular_block',
    'spectral_data',
]
