"""
Spectral data models.
Canonical block descriptors, eigenvalue references and the SpectralSpec generator input.
"""
from enum import Enum
from typing import Annotated, Any, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator
from pydantic.json_schema import WithJsonSchema

from app.exceptions import ParseError
from app.models.pencil import StructureTag
from app.services.exactnum import GaussianRational, ZERO, format_scalar, parse_scalar, to_gaussian

INFINITY_TEXT = ("inf", "infinity", "∞")


class Eigenvalue:
    """Finite eigenvalue in Q(i) or the infinite eigenvalue."""

    __slots__ = ('value',)

    def __init__(self, value: Optional[GaussianRational]):
        self.value = value

    @classmethod
    def infinity(cls) -> 'Eigenvalue':
        return cls(None)

    @classmethod
    def finite(cls, value) -> 'Eigenvalue':
        return cls(to_gaussian(value))

    @classmethod
    def parse(cls, text: Any) -> 'Eigenvalue':
        if isinstance(text, Eigenvalue):
            return text
        if isinstance(text, str) and text.strip().lower() in INFINITY_TEXT:
            return cls.infinity()
        if isinstance(text, (str, int)) or isinstance(text, GaussianRational):
            return cls.finite(text)
        raise ParseError(f"Cannot read eigenvalue from {text!r}")

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @property
    def is_zero(self) -> bool:
        return self.value is not None and self.value == ZERO

    @property
    def on_real_axis(self) -> bool:
        """Real finite eigenvalues and infinity."""
        return self.value is None or self.value.y == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Eigenvalue):
            return NotImplemented
        if self.value is None or other.value is None:
            return self.value is None and other.value is None
        return self.value == other.value

    def __hash__(self) -> int:
        return hash(('eig', self.value))

    def __str__(self) -> str:
        return "inf" if self.value is None else format_scalar(self.value)

    def __repr__(self) -> str:
        return f"Eigenvalue({self})"


class BlockKind(str, Enum):
    """Canonical block kinds; pair kinds count size per half."""
    HERMITIAN_REAL = "hermitian-real"
    HERMITIAN_INFINITY = "hermitian-infinity"
    CONJUGATE_PAIR = "conjugate-pair"
    SINGULAR_PAIR = "singular-pair"
    JORDAN = "jordan"
    SYM_BLOCK = "symmetric-block"
    SKEW_SYM_PAIR = "skew-symmetric-pair"
    SKEW_SINGULAR_PAIR = "skew-singular-pair"
    T_EVEN_INF_ODD = "t-even-inf-odd"
    T_EVEN_INF_EVEN_PAIR = "t-even-inf-even-pair"
    T_EVEN_ZERO_ODD_PAIR = "t-even-zero-odd-pair"
    T_EVEN_ZERO_EVEN = "t-even-zero-even"
    T_EVEN_NONZERO_PAIR = "t-even-nonzero-pair"
    T_EVEN_SINGULAR_PAIR = "t-even-singular-pair"
    T_ODD_BLOCK = "t-odd-block"
    T_ODD_ZERO_EVEN_PAIR = "t-odd-zero-even-pair"


SIGNED_KINDS = (BlockKind.HERMITIAN_REAL, BlockKind.HERMITIAN_INFINITY)

PAIR_KINDS = (
    BlockKind.CONJUGATE_PAIR,
    BlockKind.SKEW_SYM_PAIR,
    BlockKind.T_EVEN_INF_EVEN_PAIR,
    BlockKind.T_EVEN_ZERO_ODD_PAIR,
    BlockKind.T_EVEN_NONZERO_PAIR,
    BlockKind.T_ODD_ZERO_EVEN_PAIR,
)

SINGULAR_KINDS = (BlockKind.SINGULAR_PAIR, BlockKind.SKEW_SINGULAR_PAIR, BlockKind.T_EVEN_SINGULAR_PAIR)

# Kinds whose eigenvalue is fixed by the kind
IMPLIED_INFINITY = (BlockKind.HERMITIAN_INFINITY, BlockKind.T_EVEN_INF_ODD, BlockKind.T_EVEN_INF_EVEN_PAIR)
IMPLIED_ZERO = (
    BlockKind.T_EVEN_ZERO_ODD_PAIR,
    BlockKind.T_EVEN_ZERO_EVEN,
    BlockKind.T_ODD_BLOCK,
    BlockKind.T_ODD_ZERO_EVEN_PAIR,
)


class BlockSpec(BaseModel):
    """One canonical block: kind, eigenvalue, size and (Hermitian real/infinite blocks only) sign."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: BlockKind
    eig: Optional[Annotated[Eigenvalue, WithJsonSchema({"type": "string"})]] = None
    size: int = Field(ge=1)
    sign: Optional[int] = None

    @field_validator('eig', mode='before')
    @classmethod
    def parse_eig(cls, value):
        if value is None or isinstance(value, Eigenvalue):
            return value
        try:
            return Eigenvalue.parse(value)
        except ParseError as e:
            raise ValueError(str(e)) from e

    @field_serializer('eig')
    def dump_eig(self, eig: Optional[Eigenvalue]) -> Optional[str]:
        return None if eig is None else str(eig)

    @model_validator(mode='after')
    def check_block(self) -> 'BlockSpec':
        kind = self.kind
        if kind in SIGNED_KINDS:
            if self.sign not in (1, -1):
                raise ValueError(f"{kind.value} blocks need sign +1 or -1")
        elif self.sign is not None:
            raise ValueError(f"{kind.value} blocks carry no sign")

        if kind in IMPLIED_INFINITY:
            if self.eig is not None and not self.eig.is_infinite:
                raise ValueError(f"{kind.value} blocks sit at infinity")
            self.eig = Eigenvalue.infinity()
        elif kind in IMPLIED_ZERO:
            if self.eig is not None and not self.eig.is_zero:
                raise ValueError(f"{kind.value} blocks sit at 0")
            self.eig = Eigenvalue.finite(0)
        elif kind in SINGULAR_KINDS:
            if self.eig is not None:
                raise ValueError(f"{kind.value} blocks have no eigenvalue")
        elif self.eig is None:
            raise ValueError(f"{kind.value} blocks need an eigenvalue")

        if kind == BlockKind.HERMITIAN_REAL and (self.eig.is_infinite or not self.eig.on_real_axis):
            raise ValueError("hermitian-real blocks need a real finite eigenvalue")
        if kind == BlockKind.CONJUGATE_PAIR and (self.eig.is_infinite or self.eig.value.y <= 0):
            raise ValueError("conjugate-pair blocks need an eigenvalue with positive imaginary part")
        if kind == BlockKind.T_EVEN_NONZERO_PAIR and (self.eig.is_infinite or self.eig.is_zero):
            raise ValueError("t-even-nonzero-pair blocks need a finite nonzero eigenvalue")
        if kind in (BlockKind.T_EVEN_INF_ODD, BlockKind.T_ODD_BLOCK) and self.size % 2 == 0:
            raise ValueError(f"{kind.value} blocks have odd size")
        if kind == BlockKind.T_EVEN_ZERO_EVEN and self.size % 2:
            raise ValueError("t-even-zero-even blocks have even size")
        return self

    @property
    def dimension(self) -> int:
        if self.kind in PAIR_KINDS:
            return 2 * self.size
        if self.kind in SINGULAR_KINDS:
            return 2 * self.size + 1
        return self.size


ScalarMatrix = Tuple[Tuple[Annotated[GaussianRational, WithJsonSchema({"type": "string"})], ...], ...]


class SpectralSpec(BaseModel):
    """Structure tag, ordered canonical blocks and an optional congruence transform."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    structure: StructureTag
    blocks: List[BlockSpec] = Field(min_length=1)
    transform: Optional[ScalarMatrix] = None
    seed_transform: Optional[int] = None

    @field_validator('transform', mode='before')
    @classmethod
    def parse_transform(cls, value):
        if value is None:
            return None
        try:
            return tuple(tuple(to_gaussian(entry) for entry in row) for row in value)
        except (ParseError, TypeError) as e:
            raise ValueError(f"Malformed transform: {e}") from e

    @field_serializer('transform')
    def dump_transform(self, transform: Optional[ScalarMatrix]):
        if transform is None:
            return None
        return [[format_scalar(entry) for entry in row] for row in transform]

    @model_validator(mode='after')
    def check_transform(self) -> 'SpectralSpec':
        if self.transform is not None and self.seed_transform is not None:
            raise ValueError("Give either transform or seed_transform, not both")
        return self

    @property
    def dimension(self) -> int:
        return sum(block.dimension for block in self.blocks)

    @property
    def is_canonical(self) -> bool:
        return self.transform is None and self.seed_transform is None

    def canonical(self) -> 'SpectralSpec':
        """The same blocks without any congruence."""
        return SpectralSpec(structure=self.structure, blocks=list(self.blocks))
