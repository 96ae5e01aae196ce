"""
Pulling triangulation, volume and counting routes
"""
from fastapi import APIRouter, Depends, Query
from typing import Optional
import logging

from app.config import settings
from app.deps import get_polytope
from app.formatting import fraction_str, triangulation_json
from app.models import OrderKind, SHypersimplex
from app.triangulation import service

router = APIRouter()
logger = logging.getLogger(__name__)


@router.get("/pull")
def pull(
    P: SHypersimplex = Depends(get_polytope),
    order: OrderKind = OrderKind.LEX,
    seed: Optional[int] = None,
):
    seed = settings.DEFAULT_SEED if seed is None else seed
    pull_order = service.random_order(P, seed) if order == OrderKind.RANDOM else service.lex_order(P)
    T = service.triangulate(P, pull_order)
    logger.info(f"Pulled {P.label()} ({order.value}, seed {seed}): {len(T)} simplices")
    return triangulation_json(T, service.triangulation_volume(T))

@router.get("/volume")
def volume(P: SHypersimplex = Depends(get_polytope)):
    return {"volume": fraction_str(service.volume(P))}

@router.get("/tdcount")
def tdcount(d: int = Query(..., ge=1)):
    return service.halfcube_pull_count(d)

@router.get("/eulerian")
def eulerian(d: int = Query(..., ge=1), i: int = Query(..., ge=0)):
    return service.eulerian(d, i)
