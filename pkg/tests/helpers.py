"""Spec builders shared by the test modules."""
from typing import Optional

from app.models.spectral import BlockKind, BlockSpec, SpectralSpec


def block(kind: BlockKind, size: int, eig: Optional[str] = None, sign: Optional[int] = None) -> BlockSpec:
    return BlockSpec(kind=kind, size=size, eig=eig, sign=sign)


def spec(structure: str, *blocks: BlockSpec, **extra) -> SpectralSpec:
    return SpectralSpec(structure=structure, blocks=list(blocks), **extra)


def hermitian_real(eig: str, size: int, sign: int = 1) -> BlockSpec:
    return block(BlockKind.HERMITIAN_REAL, size, eig, sign)


# Hermitian pencils with all eigenvalues at 1
E1 = spec("hermitian", hermitian_real("1", 1), hermitian_real("1", 3))
E2 = spec("hermitian", hermitian_real("1", 1), hermitian_real("1", 1, -1))
E3 = spec("hermitian", hermitian_real("1", 2))


K = BlockKind

# (structure, block) pairs covering every regular block kind and transport route
BLOCK_CASES = [
    ("hermitian", hermitian_real("2", 3, -1)),
    ("hermitian", block(K.HERMITIAN_INFINITY, 2, sign=1)),
    ("hermitian", block(K.CONJUGATE_PAIR, 2, "1+i")),
    ("symmetric", block(K.SYM_BLOCK, 3, "i")),
    ("symmetric", block(K.SYM_BLOCK, 2, "inf")),
    ("symmetric", hermitian_real("1/2", 2)),
    ("skew-symmetric", block(K.SKEW_SYM_PAIR, 2, "3")),
    ("t-even", block(K.T_EVEN_INF_ODD, 3)),
    ("t-even", block(K.T_EVEN_INF_EVEN_PAIR, 2)),
    ("t-even", block(K.T_EVEN_ZERO_ODD_PAIR, 3)),
    ("t-even", block(K.T_EVEN_ZERO_EVEN, 2)),
    ("t-even", block(K.T_EVEN_NONZERO_PAIR, 2, "2")),
    ("t-odd", block(K.T_ODD_BLOCK, 3)),
    ("t-odd", block(K.T_ODD_ZERO_EVEN_PAIR, 2)),
    ("t-odd", block(K.T_EVEN_NONZERO_PAIR, 1, "2")),
    ("t-palindromic", block(K.T_EVEN_NONZERO_PAIR, 1, "2")),
    ("t-palindromic", block(K.T_EVEN_ZERO_ODD_PAIR, 3)),
    ("t-anti-palindromic", block(K.T_EVEN_INF_ODD, 1)),
    ("skew-hermitian", block(K.CONJUGATE_PAIR, 1, "i")),
    ("star-even", hermitian_real("1", 2)),
    ("star-odd", hermitian_real("1", 2)),
    ("star-palindromic", hermitian_real("3", 1)),
    ("none", block(K.JORDAN, 3, "1/2")),
    ("none", block(K.JORDAN, 2, "inf")),
]


# The same pencils as request payloads
E1_JSON = {
    "structure": "hermitian",
    "blocks": [
        {"kind": "hermitian-real", "eig": "1", "size": 1, "sign": 1},
        {"kind": "hermitian-real", "eig": "1", "size": 3, "sign": 1},
    ],
}

E3_JSON = {
    "structure": "hermitian",
    "blocks": [{"kind": "hermitian-real", "eig": "1", "size": 2, "sign": 1}],
}

T_EVEN_SCENARIO = {
    "spec": {
        "structure": "t-even",
        "blocks": [
            {"kind": "t-even-zero-odd-pair", "size": 3},
            {"kind": "t-even-nonzero-pair", "eig": "1", "size": 1},
        ],
    },
    "rank": 1,
    "trials": 2,
    "seed": 5,
}
