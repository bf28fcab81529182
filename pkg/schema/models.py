# Models for the --json output of acrw commands
#   schema:  acrw-output-schema.yaml

from __future__ import annotations

from enum import Enum
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field


class Command(Enum):
    check = 'check'
    normalize = 'normalize'
    instances = 'instances'
    rewrite = 'rewrite'


class Solution(BaseModel):
    occurrence: int = Field(..., ge=0)
    substitution_index: int = Field(..., ge=0)
    context: str = Field(..., description='the context, with the hole printed as []')
    bindings: Dict[str, str] = Field(default_factory=dict)


class CheckResult(BaseModel):
    equal: bool
    normal_forms: List[str]


class StepRecord(BaseModel):
    original: str
    context: str
    substitution: Dict[str, str]
    instance: str
    result: str
    verified: bool


class RewriteResult(BaseModel):
    term: str
    steps: List[StepRecord]


class CommandOutput(BaseModel):
    command: Command
    signature_hash: str = Field(..., description='SHA-256 of the canonical signature dump')
    solutions: List[Solution] = Field(default_factory=list)
    warning: bool = False
    result: Optional[Union[CheckResult, RewriteResult, str]] = None

    def to_json_dict(self):
        data = self.dict()
        data['command'] = self.command.value
        return data
