"""
Verification harness route
"""
from fastapi import APIRouter
from pydantic import BaseModel
from typing import List, Optional
import logging

from app.models import CheckResult
from app.verify import service

router = APIRouter()
logger = logging.getLogger(__name__)


class VerifyRequest(BaseModel):
    checks: List[str] = []
    max_d: Optional[int] = None
    seed: Optional[int] = None


class VerifyResponse(BaseModel):
    max_d: int
    seed: int
    passed: bool
    checks: List[CheckResult]


@router.post("", response_model=VerifyResponse)
def run_verification(request: VerifyRequest):
    report = service.run_checks(request.checks or None, request.max_d, request.seed)
    return VerifyResponse(max_d=report.max_d, seed=report.seed, passed=report.passed, checks=report.checks)
