# models/report_model.py
"""Serializable results: replay reports, suite results and family tables"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class Outcome(str, Enum):
    FORCED_HERMITE = "ForcedHermite"
    CONTRADICTION_WITNESS = "ContradictionWitness"
    UNRESOLVED = "Unresolved"


class Witness(BaseModel):
    """First failing cell of a constraint system"""

    n: int
    k: int
    residual: str
    # exact value of the residual at the certification point
    certificate: Optional[str] = None


class CheckRecord(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class ReplayReport(BaseModel):
    """Outcome of one characterization replay or of the aggregate run"""

    outcome: Outcome
    witness: Optional[Witness] = None
    beta: List[str] = Field(default_factory=list)
    gamma: List[str] = Field(default_factory=list)
    notes: str = ""

    label: str = ""
    checks: List[CheckRecord] = Field(default_factory=list)
    components: List["ReplayReport"] = Field(default_factory=list)
    # False when the aggregate covered Case I only
    complete: bool = True

    @property
    def all_checks_passed(self) -> bool:
        return all(c.passed for c in self.checks) and all(r.all_checks_passed for r in self.components)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ReplayReport":
        return cls(**data)


class SuiteFailure(BaseModel):
    identity: str
    parameters: Dict[str, int] = Field(default_factory=dict)
    residual: str

    def line(self) -> str:
        """Single machine-parsable line"""
        params = ",".join(f"{k}={v}" for k, v in self.parameters.items())
        return f"FAIL {self.identity} [{params}] residual={self.residual}"


class SuiteResult(BaseModel):
    suite: str
    cases_run: int = 0
    failures: List[SuiteFailure] = Field(default_factory=list)
    # kept out of the JSON so repeated runs serialize identically
    wall_time: float = Field(default=0.0, exclude=True)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SuiteResult":
        return cls(**data)


class FamilyTable(BaseModel):
    family: str
    n: int
    coeffs_x: List[str]

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


class ConversionWeight(BaseModel):
    k: int
    weight: str


class ConversionTable(BaseModel):
    direction: str
    n: int
    weights: List[ConversionWeight]

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


class EvalResult(BaseModel):
    family: str
    n: int
    mode: str
    x: str
    s: Optional[str] = None
    q: Optional[str] = None
    value: str

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)
