"""
JSON-ready views of the domain models, shared by the CLI and the HTTP routes
"""
from fractions import Fraction
from typing import Any, List
import json

from app.models import (
    EdgeSpec, FacetSpec, MonotonePath, Permutahedron, SHypersimplex, Triangulation, VertexSubset
)


def dump_json(payload: Any) -> str:
    """Compact single-line JSON document"""
    return json.dumps(payload, separators=(",", ":"))

def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"

def subset_json(A: VertexSubset) -> List[int]:
    return list(A.bits)

def polytope_json(P: SHypersimplex) -> dict:
    return {"d": P.d, "S": list(P.S), "proper": P.proper}

def edge_json(e: EdgeSpec) -> dict:
    return {"a": subset_json(e.a), "b": subset_json(e.b), "kind": e.kind.value}

def facet_json(f: FacetSpec) -> dict:
    witness = list(f.witness) if isinstance(f.witness, tuple) else f.witness
    return {"normal": list(f.normal), "rhs": f.rhs, "kind": f.kind.value, "witness": witness, "h": f.h}

def path_json(W: MonotonePath) -> List[List[int]]:
    return [subset_json(A) for A in W.chain]

def permutahedron_json(Q: Permutahedron, num_vertices: int) -> dict:
    return {"p": list(Q.p), "num_vertices": num_vertices}

def triangulation_json(T: Triangulation, volume: Fraction) -> dict:
    return {"simplices": T.masks(), "volume": fraction_str(volume)}

def facet_text(f: FacetSpec) -> str:
    terms = " ".join(f"{a:+d}" for a in f.normal)
    return f"[{terms}] <= {f.rhs}  ({f.kind.value})"

def edge_text(e: EdgeSpec) -> str:
    a = ",".join(str(i) for i in e.a.bits) or "{}"
    b = ",".join(str(i) for i in e.b.bits) or "{}"
    return f"{a} -- {b}  {e.kind.value}"

def subset_text(A: VertexSubset) -> str:
    return "{" + ",".join(str(i) for i in A.bits) + "}"
