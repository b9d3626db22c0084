"""Run and scan configuration models."""

import math
from enum import Enum
from pathlib import Path
from typing import Any, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .models import FilterName, ProblemName

MAX_STEPS = 2 ** 53


class MethodKind(str, Enum):
    """Integrator families."""
    TRIG = "trig"
    ALPHA = "alpha"


class MethodSpec(BaseModel):
    """Integrator choice: ``trig:<filter-name>`` or ``alpha:<value>``."""
    model_config = ConfigDict(frozen=True)

    kind: MethodKind
    filter_name: Optional[FilterName] = None
    alpha: Optional[float] = Field(default=None, ge=0.0)

    @classmethod
    def parse(cls, text: str) -> "MethodSpec":
        kind, sep, arg = str(text).partition(":")
        if not sep or not arg:
            raise ValueError(f"Method must look like 'trig:<filter>' or 'alpha:<value>', got '{text}'")
        kind = kind.strip().lower()
        if kind == MethodKind.TRIG.value:
            return cls(kind=MethodKind.TRIG, filter_name=FilterName(arg.strip()))
        if kind == MethodKind.ALPHA.value:
            return cls(kind=MethodKind.ALPHA, alpha=float(arg))
        raise ValueError(f"Unknown method family '{kind}'")

    @model_validator(mode="after")
    def check_arguments(self) -> "MethodSpec":
        if self.kind is MethodKind.TRIG and self.filter_name is None:
            raise ValueError("trig methods need a filter name")
        if self.kind is MethodKind.ALPHA and self.alpha is None:
            raise ValueError("alpha methods need a value for alpha")
        return self

    def __str__(self) -> str:
        if self.kind is MethodKind.TRIG:
            return f"trig:{self.filter_name.value}"
        return f"alpha:{self.alpha:g}"


class RunConfig(BaseModel):
    """Configuration for a single simulation (and the members of an ensemble)."""
    problem: ProblemName = Field(default=ProblemName.FPU, description="Catalog problem")
    omega: float = Field(default=50.0, gt=0.0, description="Reference frequency omega = 1/epsilon")
    m: int = Field(default=3, ge=1, description="Chain length of the fpu problem")
    method: MethodSpec = Field(default_factory=lambda: MethodSpec.parse("trig:deuflhard"))
    h_omega: Optional[float] = Field(default=None, gt=0.0, description="Step size as h*omega")
    h: Optional[float] = Field(default=None, gt=0.0, description="Step size")
    t_end: float = Field(..., gt=0.0, description="Final time")
    stride: int = Field(default=1, ge=1, description="CSV sampling stride in steps")
    out: Optional[Path] = Field(default=None, description="Output CSV path")
    perturb: Optional[str] = Field(default=None, description="Perturbed component, e.g. q0 or p3")
    deltas: List[float] = Field(default_factory=list, description="Perturbation sizes")
    seed: int = Field(default=0, description="Seed for randomized suites")
    workers: int = Field(default=1, ge=1, description="Worker processes for scans/ensembles")

    @field_validator("method", mode="before")
    @classmethod
    def parse_method(cls, v: Any) -> Any:
        if isinstance(v, str):
            return MethodSpec.parse(v)
        return v

    @field_validator("deltas", mode="before")
    @classmethod
    def parse_deltas(cls, v: Any) -> Any:
        if isinstance(v, str):
            return [float(x) for x in v.replace(";", ",").split(",") if x.strip()]
        return v

    @field_validator("perturb")
    @classmethod
    def check_perturb(cls, v: Optional[str]) -> Optional[str]:
        if v is None:
            return v
        v = v.strip().lower()
        if len(v) < 2 or v[0] not in "qp" or not v[1:].isdigit():
            raise ValueError(f"perturb must look like 'q<index>' or 'p<index>', got '{v}'")
        return v

    @model_validator(mode="after")
    def check_step(self) -> "RunConfig":
        if (self.h is None) == (self.h_omega is None):
            raise ValueError("Exactly one of h and h_omega must be given")
        if self.t_end / self.step_size > MAX_STEPS:
            raise ValueError("t_end / h exceeds 2**53 steps")
        return self

    @property
    def step_size(self) -> float:
        if self.h is not None:
            return self.h
        return self.h_omega / self.omega

    @property
    def n_steps(self) -> int:
        return max(1, int(math.floor(self.t_end / self.step_size * (1.0 + 1e-12))))

    @property
    def perturb_target(self) -> Optional[Tuple[str, int]]:
        if self.perturb is None:
            return None
        return self.perturb[0], int(self.perturb[1:])

    def label(self) -> str:
        step = f"h={self.h:g}" if self.h is not None else f"homega={self.h_omega:.6g}"
        return f"{self.problem.value} omega={self.omega:g} {self.method} {step}"


class ScanConfig(BaseModel):
    """Equidistant h*omega grid around a center value."""
    center: float = Field(..., gt=0.0)
    width: float = Field(..., gt=0.0)
    points: int = Field(..., ge=2)
    template: RunConfig

    @property
    def grid(self) -> List[float]:
        lo = self.center - self.width / 2.0
        return [lo + i * self.width / (self.points - 1) for i in range(self.points)]

    def point_config(self, index: int) -> RunConfig:
        """Template run at grid point ``index`` (omega fixed, h varies)."""
        return self.template.model_copy(
            update={"h_omega": self.grid[index], "h": None, "out": None, "deltas": []}
        )
