# app/models.py
from __future__ import annotations

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field


# ---------- Enums ----------

class CubeType(str, Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"


# ---------- Reports ----------

class Check(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerificationReport(BaseModel):
    checks: List[Check] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name=name, passed=passed, detail=detail))

    def failed(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def render(self) -> str:
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"{status} {c.name}"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
        for note in self.notes:
            lines.append(f"NOTE {note}")
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines) + "\n"


# ---------- Layout search parameters ----------

class SearchParams(BaseModel):
    """Knobs of the annealing layout search.

    Defaults are sized for the 32-vertex / 64-edge depleted cubes.
    """

    model_config = ConfigDict(frozen=True)

    seed: int = Field(0, ge=0, lt=2**64)
    restarts: int = Field(32, gt=0)
    moves_per_restart: int = Field(200_000, gt=0)
    grid_extent: int = Field(64, gt=0)
    initial_temperature: float = Field(2.0, ge=0)
    cooling_factor: float = Field(0.9995, gt=0, lt=1)
    target: Optional[int] = Field(None, ge=0)
    max_bends: int = Field(4, ge=0)
    workers: int = Field(1, gt=0)


class SearchProgress(BaseModel):
    restarts_done: int = 0
    restarts_total: int = 0
    best_total: Optional[int] = None
    target: Optional[int] = None
    progress: float = 0.0


# ---------- CLI ----------

class CommandResult(BaseModel):
    exit_code: int
    stdout_payload: str = ""
    report_path: Optional[str] = None
