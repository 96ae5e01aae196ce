"""
Delta(d,S) structure routes
"""
from fastapi import APIRouter, Depends, Query
from pydantic import BaseModel
from typing import List, Optional
import logging

from app.core import service
from app.deps import get_polytope
from app.formatting import edge_json, facet_json, polytope_json, subset_json
from app.models import SHypersimplex

router = APIRouter()
logger = logging.getLogger(__name__)

# --- Pydantic Schemas ---

class SummaryResponse(BaseModel):
    d: int
    S: List[int]
    proper: bool
    num_vertices: int
    num_edges: Optional[int] = None
    num_facets: Optional[int] = None
    extension_bound: Optional[int] = None


@router.get("/vertices")
def list_vertices(P: SHypersimplex = Depends(get_polytope)):
    return [subset_json(A) for A in service.vertices(P)]

@router.get("/edges")
def list_edges(P: SHypersimplex = Depends(get_polytope)):
    return [edge_json(e) for e in service.edges(P)]

@router.get("/facets")
def list_facets(P: SHypersimplex = Depends(get_polytope)):
    return [facet_json(f) for f in service.facets(P)]

@router.get("/decompose")
def decompose(P: SHypersimplex = Depends(get_polytope)):
    return [polytope_json(piece) for piece in service.cayley_decomposition(P)]

@router.get("/slice")
def slice_at(level: int = Query(...), P: SHypersimplex = Depends(get_polytope)):
    return [subset_json(A) for A in service.hyperplane_slice(P, level)]

@router.get("/extbound")
def extension_bound(P: SHypersimplex = Depends(get_polytope)):
    return {"bound": service.extension_upper_bound(P), "facets": service.facet_count(P)}

@router.get("/summary", response_model=SummaryResponse)
def summary(P: SHypersimplex = Depends(get_polytope)):
    response = SummaryResponse(d=P.d, S=list(P.S), proper=P.proper, num_vertices=service.vertex_count(P))
    if P.proper:
        response.num_edges = service.edge_count(P)
        response.num_facets = service.facet_count(P)
        response.extension_bound = service.extension_upper_bound(P)
    return response
