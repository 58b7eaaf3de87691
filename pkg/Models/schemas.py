from typing import Annotated, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class PatternDocument(BaseModel):
    n: int = Field(ge=0)
    edges: List[Tuple[int, int]] = []


class MinorModelDocument(BaseModel):
    """JSON form of a minor model: the pattern and sorted host branch sets."""

    model_config = ConfigDict(extra="forbid")

    pattern: PatternDocument
    branch: Dict[int, Annotated[List[int], Field(min_length=1)]]


class VerdictRecord(BaseModel):
    check: str
    ok: bool
    rule: Optional[str] = None
    witness: Optional[str] = None
    message: str = ""


class OracleComparison(BaseModel):
    oracle: str
    expected: str
    observed: str
    agrees: bool


class RunReport(BaseModel):
    instance_id: str
    graph6: str
    pattern: str
    outcome: str
    certificate_path: Optional[str] = None
    verdicts: List[VerdictRecord] = []
    max_bag: Optional[int] = None
    oracle: List[OracleComparison] = []
    error: Optional[str] = None
    elapsed_ms: Optional[float] = None

    @property
    def passed(self):
        return (
            self.error is None
            and all(v.ok for v in self.verdicts)
            and all(c.agrees for c in self.oracle)
        )
