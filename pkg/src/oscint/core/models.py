"""Core data models for oscillatory Hamiltonian systems."""

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .exceptions import ValidationError


class FilterName(str, Enum):
    """Named filter pairs accepted on the command line."""
    DEUFLHARD = "deuflhard"
    GAUTSCHI_A = "gautschi_A"


class ProblemName(str, Enum):
    """Catalog problems accepted on the command line."""
    EXP1 = "exp1"
    FPU = "fpu"
    MULTIFREQ = "multifreq"
    HARMONIC = "harmonic"


class FrequencySystem(BaseModel):
    """Block structure and constant frequencies of q'' + Omega^2 q = -grad U(q).

    Block 0 is the slow block (frequency exactly zero, possibly empty);
    blocks 1..ell are fast with omega_j >= 1/epsilon.
    """
    model_config = ConfigDict(frozen=True)

    block_dims: Tuple[int, ...] = Field(..., min_length=1, description="(d_0, d_1, ..., d_ell)")
    omegas: Tuple[float, ...] = Field(..., min_length=1, description="(omega_0, ..., omega_ell)")
    epsilon: Optional[float] = Field(default=None, gt=0.0, description="1 / min fast frequency")

    @model_validator(mode="before")
    @classmethod
    def fill_epsilon(cls, data: Any) -> Any:
        """Derive epsilon from the smallest fast frequency when not given."""
        if isinstance(data, dict) and data.get("epsilon") is None:
            fast = [float(w) for w in list(data.get("omegas", ()))[1:]]
            positive = [w for w in fast if w > 0]
            data = dict(data)
            data["epsilon"] = 1.0 / min(positive) if positive and len(positive) == len(fast) else 1.0
        return data

    @model_validator(mode="after")
    def check_structure(self) -> "FrequencySystem":
        if len(self.omegas) != len(self.block_dims):
            raise ValueError("omegas and block_dims must have the same length")
        if self.omegas[0] != 0.0:
            raise ValueError("omegas[0] must be exactly 0")
        if self.block_dims[0] < 0:
            raise ValueError("slow block dimension must be nonnegative")
        if any(d < 1 for d in self.block_dims[1:]):
            raise ValueError("fast block dimensions must be positive")
        floor = 1.0 / self.epsilon
        for j, w in enumerate(self.omegas[1:], start=1):
            if not np.isfinite(w) or w < floor * (1.0 - 1e-12):
                raise ValueError(f"omega_{j}={w} violates omega_j >= 1/epsilon={floor}")
        return self

    @property
    def ell(self) -> int:
        """Number of fast blocks."""
        return len(self.omegas) - 1

    @property
    def total_dim(self) -> int:
        return int(sum(self.block_dims))

    @property
    def fast_omegas(self) -> np.ndarray:
        """Frequencies of blocks 1..ell."""
        return np.asarray(self.omegas[1:], dtype=np.float64)

    @property
    def offsets(self) -> Tuple[int, ...]:
        """Start index of every block in the flattened vector, plus the end."""
        return tuple(int(x) for x in np.concatenate(([0], np.cumsum(self.block_dims))))

    def block_slice(self, j: int) -> slice:
        """Slice of block j in the flattened vector."""
        offs = self.offsets
        return slice(offs[j], offs[j + 1])

    def component_blocks(self) -> np.ndarray:
        """Block index of every flattened component."""
        return np.repeat(np.arange(len(self.block_dims)), self.block_dims)

    def component_values(self, per_block: Sequence[float]) -> np.ndarray:
        """Broadcast one value per block to every flattened component."""
        return np.repeat(np.asarray(per_block, dtype=np.float64), self.block_dims)

    def component_omegas(self) -> np.ndarray:
        return self.component_values(self.omegas)

    def with_omegas(self, omegas: Sequence[float]) -> "FrequencySystem":
        """Same block structure with different (e.g. modified) frequencies."""
        return FrequencySystem(block_dims=self.block_dims, omegas=tuple(float(w) for w in omegas))


@dataclass(frozen=True, eq=False)
class BlockVector:
    """Block-structured real vector (q_0, q_1, ..., q_ell), stored flat and read-only."""
    data: np.ndarray
    dims: Tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        arr = np.array(self.data, dtype=np.float64).reshape(-1)
        if any(d < 0 for d in dims) or arr.size != sum(dims):
            raise ValidationError(
                f"Vector of size {arr.size} does not match block dimensions {dims}"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "dims", dims)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[float]]) -> "BlockVector":
        """Concatenate per-block values into one vector.

        Args:
            blocks: One sequence per block; an empty sequence gives a 0-dimensional block

        Returns:
            BlockVector whose dims are the block lengths
        """
        parts = [np.atleast_1d(np.asarray(b, dtype=np.float64)).reshape(-1) for b in blocks]
        dims = tuple(p.size for p in parts)
        data = np.concatenate(parts) if parts else np.zeros(0)
        return cls(data, dims)

    @classmethod
    def zeros(cls, freq: FrequencySystem) -> "BlockVector":
        """Zero vector with the block structure of ``freq``."""
        return cls(np.zeros(freq.total_dim), freq.block_dims)

    @classmethod
    def like(cls, freq: FrequencySystem, data: np.ndarray) -> "BlockVector":
        """Wrap flat ``data`` in the block structure of ``freq``.

        Raises:
            ValidationError: If the size does not match
        """
        return cls(data, freq.block_dims)

    @property
    def blocks(self) -> List[np.ndarray]:
        """Read-only views of the blocks, slow block first."""
        offs = np.concatenate(([0], np.cumsum(self.dims))).astype(int)
        return [self.data[offs[j]:offs[j + 1]] for j in range(len(self.dims))]

    def block(self, j: int) -> np.ndarray:
        """Block j (0 is the slow block)."""
        return self.blocks[j]

    def conforms(self, freq: FrequencySystem) -> bool:
        """True iff the block dimensions match those of ``freq``."""
        return self.dims == tuple(freq.block_dims)

    def _check_same(self, other: "BlockVector") -> None:
        if self.dims != other.dims:
            raise ValidationError(f"Block dimensions differ: {self.dims} vs {other.dims}")

    def __add__(self, other: "BlockVector") -> "BlockVector":
        self._check_same(other)
        return BlockVector(self.data + other.data, self.dims)

    def __sub__(self, other: "BlockVector") -> "BlockVector":
        self._check_same(other)
        return BlockVector(self.data - other.data, self.dims)

    def __mul__(self, scalar: float) -> "BlockVector":
        return BlockVector(self.data * float(scalar), self.dims)

    __rmul__ = __mul__

    def __neg__(self) -> "BlockVector":
        return BlockVector(-self.data, self.dims)

    def __len__(self) -> int:
        return int(self.data.size)

    def dot(self, other: "BlockVector") -> float:
        """Euclidean inner product over all components.

        Raises:
            ValidationError: If the block dimensions differ
        """
        self._check_same(other)
        return float(np.dot(self.data, other.data))

    def norm(self) -> float:
        """Euclidean norm over all components."""
        return float(np.linalg.norm(self.data))

    def __repr__(self) -> str:
        return f"BlockVector(blocks={[b.tolist() for b in self.blocks]})"


@dataclass(frozen=True)
class OscState:
    """Phase-space point (p, q) at time t."""
    t: float
    q: BlockVector
    p: BlockVector

    def __post_init__(self) -> None:
        if self.q.dims != self.p.dims:
            raise ValidationError(f"q and p block dimensions differ: {self.q.dims} vs {self.p.dims}")

    def conforms(self, freq: FrequencySystem) -> bool:
        """True iff q and p both match the block structure of ``freq``."""
        return self.q.conforms(freq) and self.p.conforms(freq)


@dataclass
class RunSummary:
    """Outcome of one simulate run."""
    label: str
    n_steps: int
    h: float
    t_end: float
    initial: Dict[str, float]
    final: Dict[str, float]
    max_deviation: Dict[str, float]
    processing_time: float
    steps_per_second: float
    memory_mb: float
    start_time: datetime
    end_time: datetime
    csv_file: Optional[Path] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def max_dev_osc(self) -> float:
        return self.max_deviation.get("H_osc", float("nan"))


@dataclass
class ScanRow:
    """One grid point of an h*omega scan."""
    index: int
    h_omega: float
    h: float
    max_deviation: float
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass
class OutputPaths:
    """Container for the files one run writes."""
    csv_file: Path
    summary_file: Path

    def create_directories(self) -> None:
        """Create all necessary output directories."""
        self.csv_file.parent.mkdir(parents=True, exist_ok=True)
        self.summary_file.parent.mkdir(parents=True, exist_ok=True)
