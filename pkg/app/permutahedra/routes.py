"""
Permutahedra and monotone path routes
"""
from fastapi import APIRouter, Depends
import logging

from app.deps import get_permutahedron, get_polytope
from app.formatting import facet_json, path_json, permutahedron_json
from app.models import Permutahedron, SHypersimplex
from app.permutahedra import service

router = APIRouter()
logger = logging.getLogger(__name__)


@router.get("/mpp")
def monotone_path_polytope(P: SHypersimplex = Depends(get_polytope)):
    Q = service.monotone_path_polytope(P)
    return permutahedron_json(Q, service.perm_vertex_count(Q))

@router.get("/paths")
def monotone_paths(P: SHypersimplex = Depends(get_polytope)):
    return [path_json(W) for W in service.monotone_paths(P)]

@router.get("/vertices")
def perm_vertices(Q: Permutahedron = Depends(get_permutahedron)):
    return [list(v) for v in service.perm_vertices(Q)]

@router.get("/facets")
def perm_facets(Q: Permutahedron = Depends(get_permutahedron)):
    return [facet_json(f) for f in service.perm_facets(Q)]

@router.get("/minkowski")
def minkowski(p: str, q: str):
    P = service.permutahedron(service.parse_vector(p))
    Q = service.permutahedron(service.parse_vector(q))
    total = service.perm_minkowski(P, Q)
    return permutahedron_json(total, service.perm_vertex_count(total))
