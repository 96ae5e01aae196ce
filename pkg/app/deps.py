"""
Shared request dependencies and the error-to-HTTP mapping
"""
from fastapi import HTTPException, Query, status
import logging

from app.core.service import shypersimplex
from app.errors import CapExceededError, InvalidInputError, ShypError, VerificationError
from app.models import Permutahedron, SHypersimplex
from app.permutahedra.service import parse_vector, permutahedron

logger = logging.getLogger(__name__)


def http_error(e: ShypError) -> HTTPException:
    if isinstance(e, InvalidInputError):
        return HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    if isinstance(e, CapExceededError):
        logger.warning(f"Cap refused request: {e}")
        return HTTPException(status_code=status.HTTP_413_REQUEST_ENTITY_TOO_LARGE, detail=str(e))
    if isinstance(e, VerificationError):
        return HTTPException(status_code=status.HTTP_409_CONFLICT, detail=str(e))
    logger.error(f"Internal failure: {e}")
    return HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=str(e))


def get_polytope(
    d: int = Query(..., ge=1, description="ambient dimension"),
    S: str = Query(..., description="comma list, `even` or `all`"),
) -> SHypersimplex:
    try:
        return shypersimplex(d, S)
    except ShypError as e:
        raise http_error(e)


def get_permutahedron(p: str = Query(..., description="comma-separated integer vector")) -> Permutahedron:
    try:
        return permutahedron(parse_vector(p))
    except ShypError as e:
        raise http_error(e)
